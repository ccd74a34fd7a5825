//! Fixtures shared by the benchmarks.

use dorg_core::{CostBreakdown, FirmScenario, Member, TaskKind, TaskSpec};

/// Two investors and three employees on two levels; r = 0.3, S = 100, C = 75.
pub fn worked_example() -> FirmScenario {
    FirmScenario::new(
        vec![
            Member::investor("investor-0", 25.0).unwrap(),
            Member::investor("investor-1", 50.0).unwrap(),
            Member::employee("manager-3", 5.0, 0.6, 1, 2).unwrap(),
            Member::employee("employee-4", 4.0, 0.6, 1, 1).unwrap(),
            Member::employee("employee-5", 3.0, 0.6, 1, 1).unwrap(),
        ],
        2,
        0.3,
        100.0,
        75.0,
    )
    .unwrap()
    .with_cost_breakdowns(vec![CostBreakdown {
        land: 0.5,
        labour: 0.5,
        capital: 0.5,
        price_uncertainty: 0.02,
        legal_cost: 0.0,
        organisation_cost: 0.0,
        operational_uncertainty: 0.4,
    }])
    .unwrap()
    .with_existence_uncertainty(0.1)
    .unwrap()
}

/// A firm with `per_level` employees on each of `levels` levels, funded
/// exactly by four investors.
pub fn large_firm(levels: u32, per_level: usize) -> FirmScenario {
    let costs = 1_000.0;
    let mut members: Vec<Member> = (0..4)
        .map(|i| Member::investor(format!("investor-{i}"), costs / 4.0).unwrap())
        .collect();
    for level in 1..=levels {
        for k in 0..per_level {
            let samples = 1 + (k as u32 % 7);
            members.push(Member::employee(format!("e{level}-{k}"), 3.0 + k as f64 % 5.0, 0.5, samples, level).unwrap());
        }
    }
    FirmScenario::new(members, levels, 0.3, 2_000.0, costs).unwrap()
}

/// `n` AI tasks with unit legal and organisation cost.
pub fn ai_tasks(n: usize) -> Vec<TaskSpec> {
    (0..n)
        .map(|i| TaskSpec::new(format!("task-{i}"), TaskKind::Ai, 1.0, 1.0).unwrap())
        .collect()
}
