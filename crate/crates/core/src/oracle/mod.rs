//! The reward oracle: one contractual cycle at a time it allocates profit,
//! checks the transaction-cost and free-rider conditions, nudges the
//! royalty rate toward labour when employees fall behind, and automates
//! tasks so internal cost drifts toward its irreducible uncertainty.

mod curves;
mod tasks;

use serde::{Deserialize, Serialize};

pub use curves::{
    emit_curves, productivity, value_by_level, CurveConfig, CurveKind, CurveSample, PRODUCTIVITY_DOMAIN,
    VI_BASE_VALUE,
};
pub use tasks::{distribute_tasks, TaskKind, TaskSpec};

use crate::allocation::{allocate, AllocationResult};
use crate::error::{non_negative, Error, Result};
use crate::market::{etc_compose, itc_compose};
use crate::model::{firm_viability, FirmScenario, Money, Viability, ViabilityFailure};
use crate::olson::{free_rider_incidence, FreeRiderIncidence};

/// Per-cycle tuning of the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleConfig {
    pub royalty_min: f64,
    pub royalty_max: f64,
    pub royalty_step: f64,
    pub automation_rate: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            royalty_min: 0.0,
            royalty_max: 1.0,
            royalty_step: 0.05,
            automation_rate: 0.0,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        for (field, v) in [("royalty_min", self.royalty_min), ("royalty_max", self.royalty_max)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::domain(field, v, "must lie in [0, 1]"));
            }
        }
        if self.royalty_min > self.royalty_max {
            return Err(Error::domain(
                "royalty_min",
                self.royalty_min,
                "must not exceed royalty_max",
            ));
        }
        if !(self.royalty_step.is_finite() && self.royalty_step > 0.0) {
            return Err(Error::domain("royalty_step", self.royalty_step, "must be finite and > 0"));
        }
        if !(0.0..=1.0).contains(&self.automation_rate) {
            return Err(Error::domain("automation_rate", self.automation_rate, "must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Marginal transaction costs of one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginalCosts {
    pub etc: Money,
    /// Breakdown ITC plus the legal and organisation costs of every task.
    pub itc: Money,
    pub operational_uncertainty: Money,
}

impl MarginalCosts {
    pub fn ttc(&self) -> Money {
        self.etc + self.itc
    }

    /// Distance of the internal cost from its uncertainty floor.
    pub fn itc_gap(&self) -> Money {
        (self.itc - self.operational_uncertainty).abs()
    }
}

pub fn marginal_costs(scenario: &FirmScenario, tasks: &[TaskSpec]) -> MarginalCosts {
    let breakdowns = scenario.cost_breakdowns();
    MarginalCosts {
        etc: breakdowns.iter().map(etc_compose).sum(),
        itc: breakdowns.iter().map(itc_compose).sum::<Money>()
            + tasks.iter().map(TaskSpec::internal_cost).sum::<Money>(),
        operational_uncertainty: breakdowns.iter().map(|b| b.operational_uncertainty).sum(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoaseCheck {
    /// `ITC <= ETC`.
    pub itc_within_etc: bool,
    /// Members with `ITC + ETC >= V`.
    pub value_violations: Vec<String>,
}

impl CoaseCheck {
    pub fn ok(&self) -> bool {
        self.itc_within_etc && self.value_violations.is_empty()
    }
}

/// Evaluates `ITC <= ETC` and, per member, `ITC + ETC < V`.
pub fn check_coase_conditions(etc: Money, itc: Money, values: &[(&str, Money)]) -> Result<CoaseCheck> {
    if values.is_empty() {
        return Err(Error::Empty("member values"));
    }
    let ttc = etc + itc;
    Ok(CoaseCheck {
        itc_within_etc: itc <= etc,
        value_violations: values
            .iter()
            .filter(|(_, v)| !(ttc < *v))
            .map(|(id, _)| id.to_string())
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoyaltyAdjustment {
    pub royalty: f64,
    /// Allocation re-run at the adjusted rate.
    pub allocation: AllocationResult,
    pub warning: Option<String>,
}

/// Moves one `step` of royalty from investors to labour when some employee's
/// value does not exceed their market wage; otherwise leaves the rate alone.
/// The result always lies in `bounds`.
pub fn adjust_royalty(
    scenario: &FirmScenario,
    allocation: &AllocationResult,
    bounds: (f64, f64),
    step: f64,
) -> Result<RoyaltyAdjustment> {
    let (r_min, r_max) = bounds;
    if !(0.0..=1.0).contains(&r_min) || !(0.0..=1.0).contains(&r_max) || r_min > r_max {
        return Err(Error::domain("royalty bounds", r_min, "need 0 <= r_min <= r_max <= 1"));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::domain("step", step, "must be finite and > 0"));
    }
    let current = allocation.royalty_rate.clamp(r_min, r_max);
    let lagging: Vec<&str> = scenario
        .employees()
        .filter(|m| {
            allocation
                .share(m.id())
                .is_some_and(|s| s.value <= m.market_wage())
        })
        .map(|m| m.id())
        .collect();

    let mut warning = None;
    let royalty = if lagging.is_empty() {
        current
    } else if current > r_min {
        (current - step).max(r_min)
    } else {
        warning = Some(format!(
            "royalty already at minimum {r_min}; employees {} still at or below market wage",
            lagging.join(", ")
        ));
        r_min
    };
    let allocation = allocate(&scenario.clone().with_royalty_rate(royalty)?)?;
    Ok(RoyaltyAdjustment {
        royalty,
        allocation,
        warning,
    })
}

/// Outcome of one contractual cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub cycle_id: u64,
    /// Royalty rate the cycle allocated with.
    pub royalty_rate: f64,
    pub costs: MarginalCosts,
    pub viability: Viability,
    pub allocation: AllocationResult,
    pub coase: CoaseCheck,
    pub coase_ok: bool,
    pub free_riders: FreeRiderIncidence,
    pub olson_ok: bool,
    pub itc_gap: Money,
    /// Royalty rate for the next cycle.
    pub adjusted_royalty: f64,
    /// Tasks after this cycle's automation, the input of the next cycle.
    pub tasks_after: Vec<TaskSpec>,
    pub warnings: Vec<String>,
}

/// Runs one cycle. With a `prior` report the cycle id advances and the
/// prior's adjusted royalty replaces the scenario's rate; `tasks` is the
/// task set in force, normally `prior.tasks_after`.
pub fn run_cycle(
    state: &FirmScenario,
    tasks: &[TaskSpec],
    prior: Option<&CycleReport>,
    config: &OracleConfig,
) -> Result<CycleReport> {
    config.validate()?;
    if state.members().is_empty() {
        return Err(Error::Empty("members"));
    }
    for t in tasks {
        t.validate()?;
    }
    let mut warnings = Vec::new();

    let requested = prior.map_or(state.royalty_rate(), |p| p.adjusted_royalty);
    let royalty_rate = requested.clamp(config.royalty_min, config.royalty_max);
    if royalty_rate != requested {
        warnings.push(format!(
            "royalty {requested} clamped to [{}, {}]",
            config.royalty_min, config.royalty_max
        ));
    }
    let scenario = state.clone().with_royalty_rate(royalty_rate)?;

    let costs = marginal_costs(&scenario, tasks);
    let viability = firm_viability(
        non_negative("etc", costs.etc)?,
        non_negative("itc", costs.itc)?,
        scenario.existence_uncertainty(),
    )?;
    if let Viability::NotViable(failures) = &viability {
        for f in failures {
            warnings.push(match f {
                ViabilityFailure::CostInversion => {
                    format!("cost inversion: ETC {} < ITC {}", costs.etc, costs.itc)
                }
                ViabilityFailure::ZeroUncertainty => "zero existence uncertainty".to_string(),
            });
        }
    }

    let allocation = allocate(&scenario)?;
    let values: Vec<(&str, Money)> = allocation
        .members
        .iter()
        .map(|m| (m.member_id.as_str(), m.value))
        .collect();
    let coase = check_coase_conditions(costs.etc, costs.itc, &values)?;
    if !coase.itc_within_etc {
        warnings.push(format!("ITC {} exceeds ETC {}", costs.itc, costs.etc));
    }
    for id in &coase.value_violations {
        let v = allocation.share(id).map_or(0.0, |s| s.value);
        warnings.push(format!("TTC {} not below value {v} of `{id}`", costs.ttc()));
    }

    let free_riders = free_rider_incidence(&scenario, &allocation);
    let adjustment = adjust_royalty(
        &scenario,
        &allocation,
        (config.royalty_min, config.royalty_max),
        config.royalty_step,
    )?;
    warnings.extend(adjustment.warning);

    Ok(CycleReport {
        cycle_id: prior.map_or(0, |p| p.cycle_id + 1),
        royalty_rate,
        costs,
        viability,
        coase_ok: coase.ok(),
        coase,
        olson_ok: free_riders.count == 0,
        free_riders,
        itc_gap: costs.itc_gap(),
        adjusted_royalty: adjustment.royalty,
        tasks_after: distribute_tasks(tasks, config.automation_rate)?,
        allocation,
        warnings,
    })
}

/// Runs `cycles` chained cycles, feeding each report into the next.
pub fn simulate(
    state: &FirmScenario,
    tasks: &[TaskSpec],
    config: &OracleConfig,
    cycles: usize,
) -> Result<Vec<CycleReport>> {
    let mut reports: Vec<CycleReport> = Vec::with_capacity(cycles);
    for _ in 0..cycles {
        let report = match reports.last() {
            Some(prior) => run_cycle(state, &prior.tasks_after, Some(prior), config)?,
            None => run_cycle(state, tasks, None, config)?,
        };
        reports.push(report);
    }
    Ok(reports)
}
