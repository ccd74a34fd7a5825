//! Profit allocation: wages, per-level weights, dividend shares and the
//! resulting value to each member.
//!
//! Investors receive `r · P_0j / C` of the profit pool. Employees share
//! `1 - r`, first split across hierarchy levels by [`level_weight`] and then
//! within a level in proportion to performance samples. Whatever is not
//! claimed (underfunded investment, empty levels) is reported as
//! `residual_beta`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, Error, Result};
use crate::model::{FirmScenario, Money, Role};
use crate::normal;

/// Relative tolerance on total investment exceeding costs.
pub const FUNDING_SLACK: f64 = 1e-12;

/// Wage that compensates effort: `market_wage / (1 - effort)`.
pub fn employee_wage(market_wage: Money, effort: f64) -> Result<Money> {
    non_negative("market_wage", market_wage)?;
    if !(effort > 0.0 && effort < 1.0) {
        return Err(Error::domain("effort", effort, "must lie in the open interval (0, 1)"));
    }
    Ok(market_wage / (1.0 - effort))
}

/// Profit weight Γ(n) of hierarchy level `n` out of `total_levels`.
///
/// Level 1 takes the central one-sigma mass, each intermediate level the
/// extra mass of widening the interval by one sigma, and the top level the
/// remaining two-sided tail, so the weights of any hierarchy sum to one.
pub fn level_weight(n: u32, total_levels: u32) -> Result<f64> {
    if n < 1 || n > total_levels {
        return Err(Error::domain(
            "level",
            n as f64,
            "must lie in 1..=total_levels",
        ));
    }
    let l = total_levels;
    let weight = if n == 1 && l == 1 {
        1.0
    } else if n == l {
        normal::two_sided_tail((l - 1) as f64)
    } else if n == 1 {
        normal::central_mass(1.0)
    } else {
        normal::two_sided_tail((n - 1) as f64) - normal::two_sided_tail(n as f64)
    };
    Ok(weight)
}

/// `V = W + β (S - C)`.
pub fn value_to_individual(wage: Money, beta: f64, sales: Money, costs: Money) -> Money {
    wage + beta * (sales - costs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberShare {
    pub member_id: String,
    pub role: Role,
    pub level: Option<u32>,
    pub beta: f64,
    pub wage: Money,
    pub value: Money,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllocationResult {
    /// In scenario member order.
    pub members: Vec<MemberShare>,
    pub royalty_rate: f64,
    pub profit_pool: Money,
    pub level_weights: BTreeMap<u32, f64>,
    /// Share of the profit left unallocated (retained earnings).
    pub residual_beta: f64,
}

impl AllocationResult {
    pub fn beta_sum(&self) -> f64 {
        self.members.iter().map(|m| m.beta).sum()
    }

    pub fn share(&self, member_id: &str) -> Option<&MemberShare> {
        self.members.iter().find(|m| m.member_id == member_id)
    }
}

/// Splits the profit pool of `scenario` among its members.
pub fn allocate(scenario: &FirmScenario) -> Result<AllocationResult> {
    let r = scenario.royalty_rate();
    let costs = scenario.costs();
    let levels = scenario.levels();

    let invested: Money = scenario.investors().map(|m| m.investment()).sum();
    // Slack for investments meant to sum exactly to costs.
    if invested > costs * (1.0 + FUNDING_SLACK) {
        return Err(Error::Overfunded { invested, costs });
    }

    let mut samples_per_level: BTreeMap<u32, u64> = BTreeMap::new();
    for m in scenario.employees() {
        let level = m.level().expect("employees have a level");
        *samples_per_level.entry(level).or_default() += u64::from(m.perf_samples());
    }
    if let Some((&level, _)) = samples_per_level.iter().find(|(_, &tau)| tau == 0) {
        return Err(Error::EmptyLevel(level));
    }

    let level_weights = (1..=levels)
        .map(|n| Ok((n, level_weight(n, levels)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;

    let profit_pool = scenario.profit_pool();
    let in_profit = profit_pool > 0.0;

    let members = scenario
        .members()
        .iter()
        .map(|m| {
            let wage = m.paid_wage();
            let beta = if !in_profit {
                0.0
            } else {
                match m.role() {
                    // costs > 0 here: a positive investment never exceeds costs.
                    Role::Investor => r * m.investment() / costs,
                    Role::Employee => {
                        let level = m.level().expect("employees have a level");
                        let level_total = samples_per_level[&level] as f64;
                        (f64::from(m.perf_samples()) / level_total) * level_weights[&level] * (1.0 - r)
                    }
                }
            };
            MemberShare {
                member_id: m.id().to_string(),
                role: m.role(),
                level: m.level(),
                beta,
                wage,
                value: value_to_individual(wage, beta, scenario.sales(), costs),
            }
        })
        .collect();

    let residual_beta = if in_profit {
        let funded = if costs > 0.0 { (invested / costs).min(1.0) } else { 0.0 };
        let unclaimed_levels: f64 = level_weights
            .iter()
            .filter(|(n, _)| !samples_per_level.contains_key(n))
            .map(|(_, w)| w)
            .sum();
        r * (1.0 - funded) + (1.0 - r) * unclaimed_levels
    } else {
        1.0
    };

    Ok(AllocationResult {
        members,
        royalty_rate: r,
        profit_pool,
        level_weights,
        residual_beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Member;

    #[test]
    fn wage_examples() {
        assert_eq!(employee_wage(5.0, 0.6).unwrap(), 12.5);
        assert_eq!(employee_wage(4.0, 0.6).unwrap(), 10.0);
        assert!((employee_wage(7.0, 1e-12).unwrap() - 7.0).abs() < 1e-10);
        assert!(employee_wage(5.0, 0.0).is_err());
        assert!(employee_wage(5.0, 1.0).is_err());
        assert!(employee_wage(-5.0, 0.5).is_err());
    }

    #[test]
    fn level_weight_examples() {
        assert_eq!(level_weight(1, 1).unwrap(), 1.0);
        assert!((level_weight(1, 2).unwrap() - 0.682_689).abs() < 1e-6);
        assert!((level_weight(2, 2).unwrap() - 0.317_311).abs() < 1e-6);
        assert!(level_weight(0, 2).is_err());
        assert!(level_weight(3, 2).is_err());
    }

    #[test]
    fn level_weights_decrease_with_level() {
        for l in 3..=12 {
            let w: Vec<f64> = (1..=l).map(|n| level_weight(n, l).unwrap()).collect();
            assert!(w.iter().all(|&x| x >= 0.0));
            for pair in w[..(l as usize - 1)].windows(2) {
                assert!(pair[0] > pair[1], "l={l}: {w:?}");
            }
        }
    }

    #[test]
    fn value_examples() {
        assert!((value_to_individual(12.5, 0.2221, 100.0, 75.0) - 18.0525).abs() < 1e-12);
        assert_eq!(value_to_individual(0.0, 0.1, 100.0, 75.0), 2.5);
        assert_eq!(value_to_individual(9.0, 0.0, 100.0, 75.0), 9.0);
    }

    #[test]
    fn single_employee_takes_everything() {
        let s = FirmScenario::new(
            vec![Member::employee("e", 4.0, 0.5, 1, 1).unwrap()],
            1,
            0.0,
            30.0,
            20.0,
        )
        .unwrap();
        let a = allocate(&s).unwrap();
        assert_eq!(a.members[0].beta, 1.0);
        assert_eq!(a.members[0].value, 18.0);
        assert_eq!(a.residual_beta, 0.0);
    }

    #[test]
    fn underfunding_leaves_residual() {
        let s = FirmScenario::new(
            vec![
                Member::investor("i", 25.0).unwrap(),
                Member::employee("e", 4.0, 0.5, 1, 1).unwrap(),
            ],
            1,
            0.4,
            100.0,
            50.0,
        )
        .unwrap();
        let a = allocate(&s).unwrap();
        assert!((a.share("i").unwrap().beta - 0.2).abs() < 1e-15);
        assert!((a.residual_beta - 0.2).abs() < 1e-15);
        assert!((a.beta_sum() + a.residual_beta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_level_share_goes_to_residual() {
        let s = FirmScenario::new(
            vec![Member::employee("e", 4.0, 0.5, 1, 1).unwrap()],
            2,
            0.0,
            100.0,
            50.0,
        )
        .unwrap();
        let a = allocate(&s).unwrap();
        assert!((a.residual_beta - level_weight(2, 2).unwrap()).abs() < 1e-15);
        assert!((a.beta_sum() + a.residual_beta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn overfunding_is_rejected() {
        let s = FirmScenario::new(
            vec![Member::investor("i", 80.0).unwrap()],
            1,
            0.3,
            100.0,
            75.0,
        )
        .unwrap();
        assert!(matches!(allocate(&s), Err(Error::Overfunded { .. })));
    }

    #[test]
    fn zero_costs_with_investor_is_overfunded() {
        let s = FirmScenario::new(vec![Member::investor("i", 1.0).unwrap()], 1, 0.3, 10.0, 0.0).unwrap();
        assert!(matches!(allocate(&s), Err(Error::Overfunded { .. })));
    }
}
