//! Deterministic engine for distributed-organisation economics.
//!
//! * [`model`]: members, firm scenarios, cost identities and viability.
//! * [`market`]: cost composition, linear equilibrium pricing, Hurwicz choice.
//! * [`olson`]: group-size relations and free-rider predicates.
//! * [`allocation`]: wages, level weights, dividend shares, member value.
//! * [`oracle`]: the per-cycle monitoring and adjustment loop.
//! * [`ledger`]: hash-chained, append-only record of cycles and tasks.
//! * [`scenario`]: JSON scenario files.

// Predicates are written as `!(x <= bound)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod allocation;
pub mod error;
pub mod ledger;
pub mod market;
pub mod model;
pub mod normal;
pub mod olson;
pub mod oracle;
pub mod scenario;

pub use allocation::{allocate, employee_wage, level_weight, value_to_individual, AllocationResult, MemberShare};
pub use error::{Error, Result};
pub use model::{
    check_budgets, expansion_decision, firm_viability, total_transaction_cost, BudgetSet, BudgetViolation,
    CostBreakdown, FirmScenario, MarketParams, Member, Money, Role, Verdict, Viability, ViabilityFailure,
};
pub use oracle::{run_cycle, simulate, CycleReport, OracleConfig, TaskKind, TaskSpec};
pub use scenario::{load_scenario, parse_scenario, Scenario};
