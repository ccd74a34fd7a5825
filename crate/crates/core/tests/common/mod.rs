#![allow(dead_code)]

use dorg_core::{CostBreakdown, FirmScenario, Member};

/// Worked example: two investors, a manager on level 2 and two level-1
/// employees, r = 0.3, S = 100, C = 75, effort 0.6 throughout.
pub fn worked_example() -> FirmScenario {
    worked_example_with(100.0, 75.0)
}

pub fn worked_example_with(sales: f64, costs: f64) -> FirmScenario {
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
        sales,
        costs,
    )
    .unwrap()
    .with_cost_breakdowns(vec![CostBreakdown {
        land: 0.5,
        labour: 0.5,
        capital: 0.5,
        price_uncertainty: 0.02,
        legal_cost: 0.2,
        organisation_cost: 0.3,
        operational_uncertainty: 0.4,
    }])
    .unwrap()
    .with_existence_uncertainty(0.1)
    .unwrap()
}

pub const WORKED_BETA: [f64; 5] = [0.1, 0.2, 0.2221, 0.2389, 0.2389];
pub const WORKED_VALUE: [f64; 5] = [2.5, 5.0, 18.0528, 15.9736, 13.4736];

/// `Φ(k) - Φ(-k)` by composite Simpson integration of the standard normal
/// density over `[-k, k]`; independent of any erf implementation.
pub fn central_mass_by_quadrature(k: f64) -> f64 {
    if k == 0.0 {
        return 0.0;
    }
    let intervals = 20_000usize;
    let h = 2.0 * k / intervals as f64;
    let density = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut sum = density(-k) + density(k);
    for i in 1..intervals {
        let x = -k + i as f64 * h;
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * density(x);
    }
    sum * h / 3.0
}
