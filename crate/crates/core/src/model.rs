//! Domain types shared across the engine and the cost-identity and
//! firm-viability primitives.
//!
//! [`Member`] and [`FirmScenario`] validate themselves on construction, so
//! every operation downstream can assume well-formed inputs.

use serde::{Deserialize, Serialize};

use crate::allocation::employee_wage;
use crate::error::{finite, non_negative, Error, Result};

/// Monetary amount in abstract units.
pub type Money = f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Investor,
    Employee,
}

impl Role {
    /// Role indicator: 0 for investors, 1 for employees.
    pub fn indicator(self) -> u8 {
        match self {
            Role::Investor => 0,
            Role::Employee => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Investor => "investor",
            Role::Employee => "employee",
        }
    }
}

/// One participant of the organisation.
///
/// Investors carry only an investment; employees carry a market wage,
/// effort, performance samples and a hierarchy level. Fields that do not
/// apply to the role are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    id: String,
    role: Role,
    market_wage: Money,
    effort: f64,
    investment: Money,
    perf_samples: u32,
    level: u32,
}

impl Member {
    pub fn investor(id: impl Into<String>, investment: Money) -> Result<Self> {
        let id = id.into();
        if !(investment.is_finite() && investment > 0.0) {
            return Err(Error::InvalidMember {
                id,
                reason: format!("`investment` = {investment} must be finite and > 0"),
            });
        }
        Ok(Member {
            id,
            role: Role::Investor,
            market_wage: 0.0,
            effort: 0.0,
            investment,
            perf_samples: 0,
            level: 0,
        })
    }

    pub fn employee(
        id: impl Into<String>,
        market_wage: Money,
        effort: f64,
        perf_samples: u32,
        level: u32,
    ) -> Result<Self> {
        let id = id.into();
        let fail = |reason: String| Error::InvalidMember {
            id: id.clone(),
            reason,
        };
        if !(market_wage.is_finite() && market_wage > 0.0) {
            return Err(fail(format!(
                "`market_wage` = {market_wage} must be finite and > 0"
            )));
        }
        if !(effort > 0.0 && effort < 1.0) {
            return Err(fail(format!(
                "`effort` = {effort} must lie in the open interval (0, 1)"
            )));
        }
        if perf_samples < 1 {
            return Err(fail("`perf_samples` must be >= 1".to_string()));
        }
        if level < 1 {
            return Err(fail("`level` must be >= 1".to_string()));
        }
        Ok(Member {
            id,
            role: Role::Employee,
            market_wage,
            effort,
            investment: 0.0,
            perf_samples,
            level,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn is_employee(&self) -> bool {
        self.role == Role::Employee
    }

    pub fn market_wage(&self) -> Money {
        self.market_wage
    }

    pub fn effort(&self) -> f64 {
        self.effort
    }

    pub fn investment(&self) -> Money {
        self.investment
    }

    pub fn perf_samples(&self) -> u32 {
        self.perf_samples
    }

    /// Hierarchy level; `None` for investors.
    pub fn level(&self) -> Option<u32> {
        self.is_employee().then_some(self.level)
    }

    /// Wage actually paid: zero for investors, `w_r / (1 - effort)` for employees.
    pub fn paid_wage(&self) -> Money {
        match self.role {
            Role::Investor => 0.0,
            // Constructor guarantees 0 < effort < 1.
            Role::Employee => employee_wage(self.market_wage, self.effort)
                .expect("member effort validated at construction"),
        }
    }
}

/// Cost components of one transaction.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub land: Money,
    pub labour: Money,
    pub capital: Money,
    /// Expected market inflation over the period.
    pub price_uncertainty: f64,
    pub legal_cost: Money,
    pub organisation_cost: Money,
    pub operational_uncertainty: Money,
}

impl CostBreakdown {
    pub fn validate(&self) -> Result<()> {
        non_negative("land", self.land)?;
        non_negative("labour", self.labour)?;
        non_negative("capital", self.capital)?;
        non_negative("price_uncertainty", self.price_uncertainty)?;
        non_negative("legal_cost", self.legal_cost)?;
        non_negative("organisation_cost", self.organisation_cost)?;
        non_negative("operational_uncertainty", self.operational_uncertainty)?;
        Ok(())
    }
}

/// Behavioural constants of the linear supply `a + bP` and demand
/// `c - dP + e·IE` curves.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MarketParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    /// Inflation expectation; doubles as the price uncertainty of the market.
    pub inflation_expectation: f64,
}

impl MarketParams {
    pub fn validate(&self) -> Result<()> {
        finite("a", self.a)?;
        finite("b", self.b)?;
        finite("c", self.c)?;
        finite("d", self.d)?;
        finite("e", self.e)?;
        finite("inflation_expectation", self.inflation_expectation)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BudgetSet {
    pub investor_budget: Money,
    pub customer_budget: Money,
    /// Minimum wage a worker accepts to participate.
    pub worker_reservation: Money,
}

impl BudgetSet {
    pub fn validate(&self) -> Result<()> {
        finite("investor_budget", self.investor_budget)?;
        finite("customer_budget", self.customer_budget)?;
        finite("worker_reservation", self.worker_reservation)?;
        Ok(())
    }
}

/// Firm-wide parameters for one contractual cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct FirmScenario {
    members: Vec<Member>,
    levels: u32,
    royalty_rate: f64,
    sales: Money,
    costs: Money,
    cost_breakdowns: Vec<CostBreakdown>,
    market: MarketParams,
    existence_uncertainty: f64,
    budgets: Option<BudgetSet>,
}

impl FirmScenario {
    pub fn new(
        members: Vec<Member>,
        levels: u32,
        royalty_rate: f64,
        sales: Money,
        costs: Money,
    ) -> Result<Self> {
        if levels < 1 {
            return Err(Error::domain("levels", levels as f64, "must be >= 1"));
        }
        non_negative("sales", sales)?;
        non_negative("costs", costs)?;
        let mut seen = std::collections::BTreeSet::new();
        for m in &members {
            if !seen.insert(m.id()) {
                return Err(Error::InvalidMember {
                    id: m.id().to_string(),
                    reason: "duplicate member id".to_string(),
                });
            }
            if let Some(level) = m.level() {
                if level > levels {
                    return Err(Error::InvalidMember {
                        id: m.id().to_string(),
                        reason: format!("`level` = {level} exceeds firm `levels` = {levels}"),
                    });
                }
            }
        }
        let scenario = FirmScenario {
            members,
            levels,
            royalty_rate: 0.0,
            sales,
            costs,
            cost_breakdowns: Vec::new(),
            market: MarketParams::default(),
            existence_uncertainty: 0.0,
            budgets: None,
        };
        scenario.with_royalty_rate(royalty_rate)
    }

    pub fn with_royalty_rate(mut self, royalty_rate: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&royalty_rate) {
            return Err(Error::domain("royalty_rate", royalty_rate, "must lie in [0, 1]"));
        }
        self.royalty_rate = royalty_rate;
        Ok(self)
    }

    pub fn with_sales_and_costs(mut self, sales: Money, costs: Money) -> Result<Self> {
        self.sales = non_negative("sales", sales)?;
        self.costs = non_negative("costs", costs)?;
        Ok(self)
    }

    pub fn with_cost_breakdowns(mut self, breakdowns: Vec<CostBreakdown>) -> Result<Self> {
        for b in &breakdowns {
            b.validate()?;
        }
        self.cost_breakdowns = breakdowns;
        Ok(self)
    }

    pub fn with_market(mut self, market: MarketParams) -> Result<Self> {
        market.validate()?;
        self.market = market;
        Ok(self)
    }

    pub fn with_existence_uncertainty(mut self, u_e: f64) -> Result<Self> {
        self.existence_uncertainty = non_negative("existence_uncertainty", u_e)?;
        Ok(self)
    }

    pub fn with_budgets(mut self, budgets: BudgetSet) -> Result<Self> {
        budgets.validate()?;
        self.budgets = Some(budgets);
        Ok(self)
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn royalty_rate(&self) -> f64 {
        self.royalty_rate
    }

    pub fn sales(&self) -> Money {
        self.sales
    }

    pub fn costs(&self) -> Money {
        self.costs
    }

    /// Sales minus costs. May be negative.
    pub fn profit_pool(&self) -> Money {
        self.sales - self.costs
    }

    pub fn cost_breakdowns(&self) -> &[CostBreakdown] {
        &self.cost_breakdowns
    }

    pub fn market(&self) -> &MarketParams {
        &self.market
    }

    pub fn existence_uncertainty(&self) -> f64 {
        self.existence_uncertainty
    }

    pub fn budgets(&self) -> Option<&BudgetSet> {
        self.budgets.as_ref()
    }

    pub fn investors(&self) -> impl Iterator<Item = &Member> {
        self.members.iter().filter(|m| m.role() == Role::Investor)
    }

    pub fn employees(&self) -> impl Iterator<Item = &Member> {
        self.members.iter().filter(|m| m.is_employee())
    }
}

/// `TTC = ETC + ITC`.
pub fn total_transaction_cost(etc: Money, itc: Money) -> Result<Money> {
    Ok(non_negative("etc", etc)? + non_negative("itc", itc)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViabilityFailure {
    /// External transaction cost below internal cost.
    CostInversion,
    /// Without uncertainty there is nothing for management to do.
    ZeroUncertainty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Viability {
    Viable,
    /// Every failed condition, in check order.
    NotViable(Vec<ViabilityFailure>),
}

impl Viability {
    pub fn is_viable(&self) -> bool {
        matches!(self, Viability::Viable)
    }
}

/// A firm exists iff `ETC >= ITC` and `U_e != 0`.
pub fn firm_viability(etc: Money, itc: Money, u_e: f64) -> Result<Viability> {
    non_negative("etc", etc)?;
    non_negative("itc", itc)?;
    non_negative("u_e", u_e)?;
    let mut failures = Vec::new();
    if etc < itc {
        failures.push(ViabilityFailure::CostInversion);
    }
    if u_e == 0.0 {
        failures.push(ViabilityFailure::ZeroUncertainty);
    }
    Ok(if failures.is_empty() {
        Viability::Viable
    } else {
        Viability::NotViable(failures)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Expand,
    Stop,
}

/// Expand while the marginal internal cost does not exceed the marginal external cost.
pub fn expansion_decision(mitc: Money, metc: Money) -> Result<Verdict> {
    non_negative("mitc", mitc)?;
    non_negative("metc", metc)?;
    Ok(if mitc <= metc {
        Verdict::Expand
    } else {
        Verdict::Stop
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BudgetViolation {
    /// Investor budget exceeds the summed transaction costs.
    InvestorOverBudget { budget: Money, ttc_sum: Money },
    /// Customer budget exceeds the price.
    CustomerOverBudget { budget: Money, price: Money },
    /// Paid wage below the worker's reservation budget.
    WorkerBelowReservation {
        member_id: String,
        reservation: Money,
        wage: Money,
    },
}

impl std::fmt::Display for BudgetViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BudgetViolation::InvestorOverBudget { budget, ttc_sum } => write!(
                f,
                "investor budget {budget} exceeds total transaction cost {ttc_sum}"
            ),
            BudgetViolation::CustomerOverBudget { budget, price } => {
                write!(f, "customer budget {budget} exceeds price {price}")
            }
            BudgetViolation::WorkerBelowReservation {
                member_id,
                reservation,
                wage,
            } => write!(
                f,
                "employee `{member_id}` paid {wage}, below reservation {reservation}"
            ),
        }
    }
}

/// Role-budget constraints. Returns an empty list when the scenario has no
/// budgets or all constraints hold.
pub fn check_budgets(
    scenario: &FirmScenario,
    ttc_sum: Money,
    price: Money,
) -> Result<Vec<BudgetViolation>> {
    non_negative("ttc_sum", ttc_sum)?;
    non_negative("price", price)?;
    let Some(budgets) = scenario.budgets() else {
        return Ok(Vec::new());
    };
    let mut violations = Vec::new();
    if budgets.investor_budget > ttc_sum {
        violations.push(BudgetViolation::InvestorOverBudget {
            budget: budgets.investor_budget,
            ttc_sum,
        });
    }
    if budgets.customer_budget > price {
        violations.push(BudgetViolation::CustomerOverBudget {
            budget: budgets.customer_budget,
            price,
        });
    }
    for m in scenario.employees() {
        let wage = m.paid_wage();
        if wage < budgets.worker_reservation {
            violations.push(BudgetViolation::WorkerBelowReservation {
                member_id: m.id().to_string(),
                reservation: budgets.worker_reservation,
                wage,
            });
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn employee(id: &str, w: f64, effort: f64) -> Member {
        Member::employee(id, w, effort, 1, 1).unwrap()
    }

    #[test]
    fn ttc_examples() {
        assert_eq!(total_transaction_cost(0.0, 0.0).unwrap(), 0.0);
        assert_eq!(total_transaction_cost(6.6, 3.0).unwrap(), 6.6 + 3.0);
        assert_eq!(total_transaction_cost(75.0, 0.0).unwrap(), 75.0);
        assert!(total_transaction_cost(-1.0, 0.0).is_err());
        assert!(total_transaction_cost(1.0, f64::NAN).is_err());
        assert!(total_transaction_cost(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn viability_examples() {
        assert_eq!(firm_viability(10.0, 5.0, 0.1).unwrap(), Viability::Viable);
        assert_eq!(
            firm_viability(5.0, 10.0, 0.1).unwrap(),
            Viability::NotViable(vec![ViabilityFailure::CostInversion])
        );
        assert_eq!(
            firm_viability(10.0, 5.0, 0.0).unwrap(),
            Viability::NotViable(vec![ViabilityFailure::ZeroUncertainty])
        );
        assert_eq!(
            firm_viability(5.0, 10.0, 0.0).unwrap(),
            Viability::NotViable(vec![
                ViabilityFailure::CostInversion,
                ViabilityFailure::ZeroUncertainty
            ])
        );
        // Equal costs are allowed.
        assert!(firm_viability(5.0, 5.0, 1.0).unwrap().is_viable());
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expansion_decision(1.0, 2.0).unwrap(), Verdict::Expand);
        assert_eq!(expansion_decision(2.0, 2.0).unwrap(), Verdict::Expand);
        assert_eq!(expansion_decision(3.0, 2.0).unwrap(), Verdict::Stop);
        assert!(expansion_decision(-3.0, 2.0).is_err());
    }

    #[test]
    fn member_validation() {
        assert!(Member::investor("i", 0.0).is_err());
        assert!(Member::employee("e", 5.0, 1.2, 1, 1).is_err());
        assert!(Member::employee("e", 5.0, 0.0, 1, 1).is_err());
        assert!(Member::employee("e", 0.0, 0.5, 1, 1).is_err());
        assert!(Member::employee("e", 5.0, 0.5, 0, 1).is_err());
        assert!(Member::employee("e", 5.0, 0.5, 1, 0).is_err());
        let err = Member::employee("e", 5.0, 1.2, 1, 1).unwrap_err().to_string();
        assert!(err.contains("effort") && err.contains("(0, 1)"), "{err}");
        let inv = Member::investor("i", 10.0).unwrap();
        assert_eq!(inv.level(), None);
        assert_eq!(inv.paid_wage(), 0.0);
        assert_eq!(inv.role().indicator(), 0);
    }

    #[test]
    fn scenario_rejects_level_above_firm_levels() {
        let m = Member::employee("e", 5.0, 0.5, 1, 3).unwrap();
        let err = FirmScenario::new(vec![m], 2, 0.3, 10.0, 5.0)
            .unwrap_err()
            .to_string();
        assert!(err.contains('3') && err.contains('2') && err.contains("levels"), "{err}");
    }

    #[test]
    fn scenario_rejects_duplicate_ids_and_bad_rate() {
        let a = Member::investor("x", 1.0).unwrap();
        let b = Member::investor("x", 2.0).unwrap();
        assert!(FirmScenario::new(vec![a, b], 1, 0.3, 10.0, 5.0).is_err());
        assert!(FirmScenario::new(vec![], 1, 1.5, 10.0, 5.0).is_err());
    }

    #[test]
    fn profit_pool_is_not_clamped() {
        let s = FirmScenario::new(vec![], 1, 0.3, 70.0, 75.0).unwrap();
        assert_eq!(s.profit_pool(), -5.0);
    }

    fn budget_scenario(budgets: BudgetSet, members: Vec<Member>) -> FirmScenario {
        FirmScenario::new(members, 1, 0.3, 100.0, 75.0)
            .unwrap()
            .with_budgets(budgets)
            .unwrap()
    }

    #[test]
    fn budgets_all_hold() {
        // w_r = 8 at effort 0.6 pays exactly 20.
        let s = budget_scenario(
            BudgetSet {
                investor_budget: 50.0,
                customer_budget: 4.0,
                worker_reservation: 20.0,
            },
            vec![employee("e", 8.0, 0.6)],
        );
        assert_eq!(check_budgets(&s, 75.0, 5.0).unwrap(), vec![]);
    }

    #[test]
    fn customer_over_budget() {
        let s = budget_scenario(
            BudgetSet {
                investor_budget: 50.0,
                customer_budget: 6.0,
                worker_reservation: 0.0,
            },
            vec![],
        );
        assert_eq!(
            check_budgets(&s, 75.0, 5.0).unwrap(),
            vec![BudgetViolation::CustomerOverBudget {
                budget: 6.0,
                price: 5.0
            }]
        );
    }

    #[test]
    fn worker_reservation_is_met_by_higher_wage() {
        let s = budget_scenario(
            BudgetSet {
                investor_budget: 0.0,
                customer_budget: 0.0,
                worker_reservation: 10.0,
            },
            vec![employee("m", 5.0, 0.6)],
        );
        assert_eq!(check_budgets(&s, 75.0, 5.0).unwrap(), vec![]);
    }

    #[test]
    fn investor_and_worker_violations() {
        let s = budget_scenario(
            BudgetSet {
                investor_budget: 80.0,
                customer_budget: 0.0,
                worker_reservation: 15.0,
            },
            vec![employee("m", 5.0, 0.6)],
        );
        let v = check_budgets(&s, 75.0, 5.0).unwrap();
        assert_eq!(v.len(), 2);
        assert!(matches!(v[0], BudgetViolation::InvestorOverBudget { .. }));
        assert!(matches!(
            &v[1],
            BudgetViolation::WorkerBelowReservation { member_id, wage, .. }
                if member_id == "m" && *wage == 12.5
        ));
    }
}
