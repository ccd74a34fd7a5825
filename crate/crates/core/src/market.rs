//! Cost composition, linear supply/demand equilibrium and the Hurwicz
//! criterion used to price operational uncertainty.

use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::model::{CostBreakdown, MarketParams, Money};

/// External transaction cost: `(1 + U_p)(land + labour + capital)`.
pub fn etc_compose(b: &CostBreakdown) -> Money {
    (1.0 + b.price_uncertainty) * (b.land + b.labour + b.capital)
}

/// Internal transaction cost: `l_c + C_l + U_O`.
pub fn itc_compose(b: &CostBreakdown) -> Money {
    b.legal_cost + b.organisation_cost + b.operational_uncertainty
}

/// Price as the sum of transaction costs. Prices formed on the open market
/// carry no internal cost, so `market_side` drops every ITC term.
pub fn price_from_costs(breakdowns: &[CostBreakdown], market_side: bool) -> Result<Money> {
    if breakdowns.is_empty() {
        return Err(Error::Empty("cost breakdowns"));
    }
    Ok(breakdowns
        .iter()
        .map(|b| {
            let itc = if market_side { 0.0 } else { itc_compose(b) };
            etc_compose(b) + itc
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub price: Money,
    /// Set when the behavioural constants put the crossing below zero.
    pub negative: bool,
}

/// Price at which `a + bP = c - dP + e·IE`.
pub fn equilibrium_price(m: &MarketParams) -> Result<Equilibrium> {
    m.validate()?;
    let slope = m.b + m.d;
    if slope == 0.0 {
        return Err(Error::SingularMarket(slope));
    }
    let price = (m.c + m.e * m.inflation_expectation - m.a) / slope;
    Ok(Equilibrium {
        price,
        negative: price < 0.0,
    })
}

/// Supply minus demand at price `p`.
pub fn equilibrium_residual(m: &MarketParams, p: Money) -> f64 {
    // Grouped so the two slope terms share one rounding; evaluating supply
    // and demand separately cancels catastrophically when p is large.
    (m.a - m.c - m.e * m.inflation_expectation) + (m.b + m.d) * p
}

/// Summed transaction costs minus the equilibrium price. Zero when costs
/// and market conditions agree; the engine reports the gap but never
/// forces it closed.
pub fn cost_price_gap(breakdowns: &[CostBreakdown], m: &MarketParams) -> Result<Money> {
    Ok(price_from_costs(breakdowns, false)? - equilibrium_price(m)?.price)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HurwiczOption {
    pub optimistic: Money,
    pub pessimistic: Money,
}

impl HurwiczOption {
    pub fn new(optimistic: Money, pessimistic: Money) -> Self {
        HurwiczOption {
            optimistic,
            pessimistic,
        }
    }

    pub fn index(&self, optimism: f64) -> f64 {
        optimism * self.optimistic + (1.0 - optimism) * self.pessimistic
    }
}

/// Picks the option with the largest Hurwicz index
/// `optimism·best + (1 - optimism)·worst`. Ties go to the lowest index.
pub fn hurwicz_select(options: &[HurwiczOption], optimism: f64) -> Result<(usize, f64)> {
    if options.is_empty() {
        return Err(Error::Empty("hurwicz options"));
    }
    if !(0.0..=1.0).contains(&optimism) {
        return Err(Error::domain("optimism", optimism, "must lie in [0, 1]"));
    }
    let mut best: Option<(usize, f64)> = None;
    for (index, o) in options.iter().enumerate() {
        finite("optimistic", o.optimistic)?;
        finite("pessimistic", o.pessimistic)?;
        if o.optimistic < o.pessimistic {
            return Err(Error::InvertedPayoffs {
                index,
                optimistic: o.optimistic,
                pessimistic: o.pessimistic,
            });
        }
        let h = o.index(optimism);
        if best.is_none_or(|(_, v)| h > v) {
            best = Some((index, h));
        }
    }
    Ok(best.expect("options is non-empty"))
}

/// Uncertainty surcharge: how far the Hurwicz value falls short of the
/// expected payoff, floored at zero.
pub fn operational_uncertainty_from_hurwicz(expected_payoff: Money, hurwicz_value: Money) -> Result<Money> {
    finite("expected_payoff", expected_payoff)?;
    finite("hurwicz_value", hurwicz_value)?;
    Ok((expected_payoff - hurwicz_value).max(0.0))
}
