//! Scenario files: one JSON document with top-level keys `firm`,
//! `members`, `market`, `cost_breakdowns`, `tasks` and `oracle`.
//!
//! Parsing errors carry the JSON line and column; validation errors name
//! the offending field path, e.g. `members[2].effort`.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::market::{hurwicz_select, operational_uncertainty_from_hurwicz, HurwiczOption};
use crate::model::{BudgetSet, CostBreakdown, FirmScenario, MarketParams, Member, Money, Role};
use crate::oracle::{OracleConfig, TaskSpec};

/// A fully validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub firm: FirmScenario,
    pub tasks: Vec<TaskSpec>,
    pub oracle: OracleConfig,
    /// Present when the file has a `market` section.
    pub market: Option<MarketParams>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    firm: FirmSection,
    members: Vec<MemberSection>,
    #[serde(default)]
    market: Option<MarketParams>,
    #[serde(default)]
    cost_breakdowns: Vec<BreakdownSection>,
    #[serde(default)]
    tasks: Vec<TaskSpec>,
    #[serde(default)]
    oracle: Option<OracleConfig>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FirmSection {
    levels: u32,
    royalty_rate: f64,
    sales: Money,
    costs: Money,
    #[serde(default)]
    existence_uncertainty: f64,
    #[serde(default)]
    budgets: Option<BudgetSet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberSection {
    id: String,
    role: Role,
    market_wage: Option<Money>,
    effort: Option<f64>,
    investment: Option<Money>,
    perf_samples: Option<u32>,
    level: Option<u32>,
}

/// Operational uncertainty may be given directly or derived from a
/// Hurwicz choice over payoff options.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BreakdownSection {
    #[serde(default)]
    land: Money,
    #[serde(default)]
    labour: Money,
    #[serde(default)]
    capital: Money,
    #[serde(default)]
    price_uncertainty: f64,
    #[serde(default)]
    legal_cost: Money,
    #[serde(default)]
    organisation_cost: Money,
    operational_uncertainty: Option<Money>,
    hurwicz: Option<HurwiczSection>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HurwiczSection {
    expected_payoff: Money,
    optimism: f64,
    options: Vec<HurwiczOption>,
}

fn at(path: String) -> impl FnOnce(Error) -> Error {
    move |e| Error::Scenario(format!("{path}: {e}"))
}

fn member_from(i: usize, m: MemberSection) -> Result<Member> {
    let path = format!("members[{i}]");
    let misplaced = |field: &str| Error::Scenario(format!("{path}.{field}: not allowed for role `{}`", m.role.as_str()));
    match m.role {
        Role::Investor => {
            for (field, set) in [
                ("market_wage", m.market_wage.is_some()),
                ("effort", m.effort.is_some()),
                ("perf_samples", m.perf_samples.is_some()),
                ("level", m.level.is_some()),
            ] {
                if set {
                    return Err(misplaced(field));
                }
            }
            let investment = m
                .investment
                .ok_or_else(|| Error::Scenario(format!("{path}.investment: required for investors")))?;
            Member::investor(m.id, investment).map_err(at(path))
        }
        Role::Employee => {
            if m.investment.is_some() {
                return Err(misplaced("investment"));
            }
            let require = |field: &str, v: Option<f64>| {
                v.ok_or_else(|| Error::Scenario(format!("{path}.{field}: required for employees")))
            };
            let market_wage = require("market_wage", m.market_wage)?;
            let effort = require("effort", m.effort)?;
            let perf_samples = require("perf_samples", m.perf_samples.map(f64::from))? as u32;
            let level = require("level", m.level.map(f64::from))? as u32;
            Member::employee(m.id, market_wage, effort, perf_samples, level).map_err(at(path))
        }
    }
}

fn breakdown_from(i: usize, b: BreakdownSection) -> Result<CostBreakdown> {
    let path = format!("cost_breakdowns[{i}]");
    let operational_uncertainty = match (b.operational_uncertainty, b.hurwicz) {
        (Some(_), Some(_)) => {
            return Err(Error::Scenario(format!(
                "{path}: give either `operational_uncertainty` or `hurwicz`, not both"
            )))
        }
        (Some(u), None) => u,
        (None, Some(h)) => {
            let (_, value) = hurwicz_select(&h.options, h.optimism).map_err(at(format!("{path}.hurwicz")))?;
            operational_uncertainty_from_hurwicz(h.expected_payoff, value).map_err(at(format!("{path}.hurwicz")))?
        }
        (None, None) => 0.0,
    };
    let breakdown = CostBreakdown {
        land: b.land,
        labour: b.labour,
        capital: b.capital,
        price_uncertainty: b.price_uncertainty,
        legal_cost: b.legal_cost,
        organisation_cost: b.organisation_cost,
        operational_uncertainty,
    };
    breakdown.validate().map_err(at(path))?;
    Ok(breakdown)
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let file: ScenarioFile = serde_json::from_str(text)?;

    let members = file
        .members
        .into_iter()
        .enumerate()
        .map(|(i, m)| member_from(i, m))
        .collect::<Result<Vec<_>>>()?;
    let breakdowns = file
        .cost_breakdowns
        .into_iter()
        .enumerate()
        .map(|(i, b)| breakdown_from(i, b))
        .collect::<Result<Vec<_>>>()?;
    for (i, t) in file.tasks.iter().enumerate() {
        t.validate().map_err(at(format!("tasks[{i}]")))?;
    }
    let oracle = file.oracle.unwrap_or_default();
    oracle.validate().map_err(at("oracle".into()))?;

    let f = file.firm;
    let mut firm = FirmScenario::new(members, f.levels, f.royalty_rate, f.sales, f.costs)
        .map_err(at("firm".into()))?
        .with_cost_breakdowns(breakdowns)?
        .with_existence_uncertainty(f.existence_uncertainty)
        .map_err(at("firm".into()))?;
    if let Some(market) = file.market {
        firm = firm.with_market(market).map_err(at("market".into()))?;
    }
    if let Some(budgets) = f.budgets {
        firm = firm.with_budgets(budgets).map_err(at("firm.budgets".into()))?;
    }
    Ok(Scenario {
        firm,
        tasks: file.tasks,
        oracle,
        market: file.market,
    })
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    parse_scenario(&std::fs::read_to_string(path)?)
}
