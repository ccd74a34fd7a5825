//! Group-size relations and the free-rider predicates of collective action.
//!
//! The proportionality constants carry units (k_o, k_v in money, k_g in
//! money², k_s in units·money, k_omega dimensionless) for documentation only.

use serde::{Deserialize, Serialize};

use crate::allocation::AllocationResult;
use crate::error::{finite, Error, Result};
use crate::model::{FirmScenario, Money};

/// Quantities describing one group and its proportionality constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupModel {
    pub group_size: f64,
    pub group_value: Money,
    pub individual_value: Money,
    /// Rate at which the collective good is obtained.
    pub good_rate: f64,
    /// Service supply at the equilibrium point.
    pub supply_at_equilibrium: f64,
    pub k_o: f64,
    pub k_g: f64,
    pub k_s: f64,
    pub k_v: f64,
    pub k_omega: f64,
    pub oligopoly_prob: f64,
    pub organisation_cost: Money,
}

/// A relation that a [`GroupModel`] fails to satisfy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inconsistency {
    pub relation: &'static str,
    pub expected: f64,
    pub actual: f64,
}

impl GroupModel {
    /// Share of the group value reaching the individual, `V_i / V_g`.
    pub fn individual_fraction(&self) -> Option<f64> {
        (self.group_value != 0.0).then(|| self.individual_value / self.group_value)
    }

    /// Checks every relation linking the fields, within `tol` (relative to
    /// the larger magnitude, absolute below 1).
    pub fn consistency(&self, tol: f64) -> Vec<Inconsistency> {
        let mut out = Vec::new();
        let mut check = |relation, expected: f64, actual: f64| {
            let scale = expected.abs().max(actual.abs()).max(1.0);
            if !((expected - actual).abs() <= tol * scale) {
                out.push(Inconsistency {
                    relation,
                    expected,
                    actual,
                });
            }
        };
        if !(self.k_o > 0.0 && self.k_o <= 1.0) {
            check("0 < k_o <= 1", self.k_o.clamp(f64::MIN_POSITIVE, 1.0), self.k_o);
        }
        check("k_g = k_o * V_g", self.k_o * self.group_value, self.k_g);
        if self.individual_value != 0.0 {
            check(
                "S_g = k_o * V_g / V_i",
                self.k_o * self.group_value / self.individual_value,
                self.group_size,
            );
            check("S_g = k_g / V_i", self.k_g / self.individual_value, self.group_size);
        }
        if self.supply_at_equilibrium != 0.0 {
            check(
                "S_g = k_s / zeta_o",
                self.k_s / self.supply_at_equilibrium,
                self.group_size,
            );
        }
        if self.oligopoly_prob != 0.0 {
            check("S_g = k_v / P_o", self.k_v / self.oligopoly_prob, self.group_size);
        }
        check(
            "S_g = k_omega * C_o",
            self.k_omega * self.organisation_cost,
            self.group_size,
        );
        if let Some(fraction) = self.individual_fraction() {
            check(
                "V_i = F_i * S_g * T",
                fraction * self.group_size * self.good_rate,
                self.individual_value,
            );
        }
        out
    }
}

fn check_k_o(k_o: f64) -> Result<()> {
    if k_o > 0.0 && k_o <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain("k_o", k_o, "must lie in (0, 1]"))
    }
}

/// Group size from the group and individual values: `k_o · V_g / V_i`.
pub fn group_size_from_values(k_o: f64, v_g: Money, v_i: Money) -> Result<f64> {
    check_k_o(k_o)?;
    finite("v_g", v_g)?;
    finite("v_i", v_i)?;
    if v_i == 0.0 {
        return Err(Error::DivisionByZero("individual value v_i"));
    }
    Ok(k_o * v_g / v_i)
}

/// Group size from the combined constant `k_g = k_o · V_g`: `k_g / V_i`.
pub fn group_size_from_group_constant(k_g: f64, v_i: Money) -> Result<f64> {
    finite("k_g", k_g)?;
    finite("v_i", v_i)?;
    if v_i == 0.0 {
        return Err(Error::DivisionByZero("individual value v_i"));
    }
    Ok(k_g / v_i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Performance {
    Healthy,
    Underperforming,
}

/// `k_omega = S_g / C_o`; at or below 1 the organisation underperforms.
pub fn infer_k_omega(group_size: f64, organisation_cost: Money) -> Result<(f64, Performance)> {
    finite("group_size", group_size)?;
    if !(organisation_cost.is_finite() && organisation_cost > 0.0) {
        return Err(Error::domain(
            "organisation_cost",
            organisation_cost,
            "must be finite and > 0",
        ));
    }
    let k_omega = group_size / organisation_cost;
    let performance = if k_omega > 1.0 {
        Performance::Healthy
    } else {
        Performance::Underperforming
    };
    Ok((k_omega, performance))
}

/// Probability of oligopolistic interaction, `k_v / S_g` capped at 1.
pub fn oligopoly_probability(k_v: f64, group_size: f64) -> Result<f64> {
    if !(k_v.is_finite() && k_v > 0.0) {
        return Err(Error::domain("k_v", k_v, "must be finite and > 0"));
    }
    if !(group_size.is_finite() && group_size > 0.0) {
        return Err(Error::domain("group_size", group_size, "must be finite and > 0"));
    }
    Ok((k_v / group_size).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provision {
    /// Someone values the good above its full cost, so it gets supplied.
    Provided,
    AtRisk,
}

pub fn free_rider_check(v_i: Money, cost: Money) -> Provision {
    if v_i > cost {
        Provision::Provided
    } else {
        Provision::AtRisk
    }
}

/// Default exponent for [`provision_probability`].
pub const DEFAULT_SHARPNESS: f64 = 2.0;

/// Chance the collective good is provided when only `enthusiasts` of
/// `members` will bear its cost: `(enthusiasts / members)^sharpness`, and 1
/// under unanimity.
pub fn provision_probability(enthusiasts: u64, members: u64, sharpness: f64) -> Result<f64> {
    if members < 1 {
        return Err(Error::domain("members", members as f64, "must be >= 1"));
    }
    if enthusiasts > members {
        return Err(Error::domain(
            "enthusiasts",
            enthusiasts as f64,
            "must not exceed members",
        ));
    }
    if !(sharpness.is_finite() && sharpness > 0.0) {
        return Err(Error::domain("sharpness", sharpness, "must be finite and > 0"));
    }
    if enthusiasts == members {
        return Ok(1.0);
    }
    Ok((enthusiasts as f64 / members as f64).powf(sharpness))
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FreeRiderIncidence {
    pub count: usize,
    pub member_ids: Vec<String>,
}

/// Members getting nothing from a positive profit pool, plus employees
/// whose value does not clear their market wage. Empty when there is no
/// surplus to ride on.
pub fn free_rider_incidence(scenario: &FirmScenario, allocation: &AllocationResult) -> FreeRiderIncidence {
    if allocation.profit_pool <= 0.0 {
        return FreeRiderIncidence::default();
    }
    let mut ids = Vec::new();
    for share in &allocation.members {
        let member = scenario.members().iter().find(|m| m.id() == share.member_id);
        let below_outside_option = member
            .filter(|m| m.is_employee())
            .is_some_and(|m| share.value <= m.market_wage());
        if share.beta == 0.0 || below_outside_option {
            ids.push(share.member_id.clone());
        }
    }
    FreeRiderIncidence {
        count: ids.len(),
        member_ids: ids,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::allocate;
    use crate::model::Member;

    #[test]
    fn group_size_examples() {
        assert_eq!(group_size_from_values(1.0, 100.0, 100.0).unwrap(), 1.0);
        assert_eq!(group_size_from_values(0.5, 100.0, 10.0).unwrap(), 5.0);
        let s9 = group_size_from_values(1.0, 100.0, 10.0).unwrap();
        assert_eq!(s9, 10.0);
        assert_eq!(group_size_from_group_constant(1.0 * 100.0, 10.0).unwrap(), s9);
    }

    #[test]
    fn group_size_errors() {
        assert!(matches!(
            group_size_from_values(1.0, 100.0, 0.0),
            Err(Error::DivisionByZero(_))
        ));
        assert!(group_size_from_values(0.0, 100.0, 1.0).is_err());
        assert!(group_size_from_values(1.5, 100.0, 1.0).is_err());
    }

    #[test]
    fn k_omega_examples() {
        assert_eq!(infer_k_omega(10.0, 5.0).unwrap(), (2.0, Performance::Healthy));
        assert_eq!(
            infer_k_omega(5.0, 10.0).unwrap(),
            (0.5, Performance::Underperforming)
        );
        assert_eq!(infer_k_omega(1.0, 1.0).unwrap(), (1.0, Performance::Underperforming));
        assert!(infer_k_omega(1.0, 0.0).is_err());
    }

    #[test]
    fn oligopoly_examples() {
        assert_eq!(oligopoly_probability(10.0, 10.0).unwrap(), 1.0);
        assert_eq!(oligopoly_probability(10.0, 100.0).unwrap(), 0.1);
        assert_eq!(oligopoly_probability(10.0, 5.0).unwrap(), 1.0);
        assert!(oligopoly_probability(0.0, 5.0).is_err());
        assert!(oligopoly_probability(1.0, -5.0).is_err());
    }

    #[test]
    fn free_rider_examples() {
        assert_eq!(free_rider_check(10.0, 5.0), Provision::Provided);
        assert_eq!(free_rider_check(5.0, 10.0), Provision::AtRisk);
        assert_eq!(free_rider_check(5.0, 5.0), Provision::AtRisk);
    }

    #[test]
    fn provision_examples() {
        assert_eq!(provision_probability(7, 7, 3.0).unwrap(), 1.0);
        assert_eq!(provision_probability(0, 10, 2.0).unwrap(), 0.0);
        assert!((provision_probability(1, 100, 2.0).unwrap() - 1e-4).abs() < 1e-15);
        assert!(provision_probability(11, 10, 2.0).is_err());
        assert!(provision_probability(0, 0, 2.0).is_err());
        assert!(provision_probability(1, 2, 0.0).is_err());
    }

    #[test]
    fn consistent_group_model_has_no_findings() {
        let g = GroupModel {
            group_size: 10.0,
            group_value: 100.0,
            individual_value: 10.0,
            good_rate: 10.0,
            supply_at_equilibrium: 2.0,
            k_o: 1.0,
            k_g: 100.0,
            k_s: 20.0,
            k_v: 5.0,
            k_omega: 2.0,
            oligopoly_prob: 0.5,
            organisation_cost: 5.0,
        };
        assert_eq!(g.individual_fraction(), Some(0.1));
        assert!(g.consistency(1e-9).is_empty(), "{:?}", g.consistency(1e-9));
        let broken = GroupModel { k_g: 50.0, ..g };
        let findings = broken.consistency(1e-9);
        assert!(findings.iter().any(|f| f.relation == "k_g = k_o * V_g"));
    }

    fn worked_example_like(sales: f64) -> FirmScenario {
        FirmScenario::new(
            vec![
                Member::investor("a", 25.0).unwrap(),
                Member::employee("m", 5.0, 0.6, 1, 2).unwrap(),
                Member::employee("e", 4.0, 0.6, 1, 1).unwrap(),
            ],
            2,
            0.3,
            sales,
            75.0,
        )
        .unwrap()
    }

    #[test]
    fn incidence_is_zero_when_everyone_gains() {
        let s = worked_example_like(100.0);
        let alloc = allocate(&s).unwrap();
        assert_eq!(free_rider_incidence(&s, &alloc), FreeRiderIncidence::default());
    }

    #[test]
    fn incidence_is_zero_without_profit() {
        let s = worked_example_like(60.0);
        let alloc = allocate(&s).unwrap();
        assert_eq!(free_rider_incidence(&s, &alloc).count, 0);
    }

    #[test]
    fn incidence_flags_value_at_market_wage() {
        let s = worked_example_like(100.0);
        let mut alloc = allocate(&s).unwrap();
        let e = alloc.members.iter_mut().find(|m| m.member_id == "e").unwrap();
        e.value = 4.0;
        let inc = free_rider_incidence(&s, &alloc);
        assert_eq!(inc.count, 1);
        assert_eq!(inc.member_ids, vec!["e".to_string()]);
    }
}
