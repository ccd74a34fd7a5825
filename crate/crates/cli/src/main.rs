//! `dorg`: command-line driver for the distributed-organisation engine.
//!
//! Exit codes: 0 success, 2 `check` found a violation, 64 usage error,
//! 65 domain or scenario error, 74 I/O error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dorg_core::ledger::{self, Ledger, Payload, Verification};
use dorg_core::market::{equilibrium_price, equilibrium_residual};
use dorg_core::olson::free_rider_incidence;
use dorg_core::oracle::{check_coase_conditions, emit_curves, marginal_costs, CurveConfig, CurveKind};
use dorg_core::{
    allocate, check_budgets, firm_viability, load_scenario, simulate, AllocationResult, Error, Scenario, Viability,
    ViabilityFailure,
};

const EXIT_VIOLATION: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Debug, Parser)]
#[command(name = "dorg", version)]
#[command(about = "Transaction-cost, free-rider and profit-allocation engine for distributed organisations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Allocate the profit pool and print β, wage and value per member.
    Allocate {
        scenario: PathBuf,
        /// Also write the allocation as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check viability, transaction-cost conditions, budgets and free riders.
    Check { scenario: PathBuf },
    /// Print the market equilibrium price and its gap to summed costs.
    Equilibrium { scenario: PathBuf },
    /// Run oracle cycles and append each report to a ledger.
    Simulate {
        scenario: PathBuf,
        #[arg(long)]
        cycles: usize,
        #[arg(long)]
        ledger: PathBuf,
    },
    /// Emit the value-by-level or productivity series as CSV.
    Curves {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 11)]
        samples: usize,
        /// Output file; standard output when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Inspect a ledger file.
    #[command(subcommand)]
    Ledger(LedgerCommand),
}

#[derive(Debug, Subcommand)]
enum LedgerCommand {
    /// Check the hash chain.
    Verify { path: PathBuf },
    /// Print the cycle reports recorded in the ledger.
    Replay { path: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Vi,
    Productivity,
}

/// A failed command: what to print and how to exit.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_io() { EXIT_IO } else { EXIT_DATA },
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        let code = if matches!(e.kind(), csv::ErrorKind::Io(_)) { EXIT_IO } else { EXIT_DATA };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Allocate { scenario, csv } => cmd_allocate(&scenario, csv.as_deref()),
        Command::Check { scenario } => cmd_check(&scenario),
        Command::Equilibrium { scenario } => cmd_equilibrium(&scenario),
        Command::Simulate {
            scenario,
            cycles,
            ledger,
        } => cmd_simulate(&scenario, cycles, &ledger),
        Command::Curves { which, samples, csv } => cmd_curves(which, samples, csv.as_deref()),
        Command::Ledger(LedgerCommand::Verify { path }) => cmd_ledger_verify(&path),
        Command::Ledger(LedgerCommand::Replay { path }) => cmd_ledger_replay(&path),
    }
}

fn load(path: &Path) -> Result<Scenario, Failure> {
    load_scenario(path).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn level_cell(level: Option<u32>) -> String {
    level.map_or_else(|| "-".to_string(), |l| l.to_string())
}

fn allocation_table(a: &AllocationResult) -> String {
    let rows: Vec<[String; 6]> = a
        .members
        .iter()
        .map(|m| {
            [
                m.member_id.clone(),
                m.role.as_str().to_string(),
                level_cell(m.level),
                format!("{:.6}", m.beta),
                format!("{:.6}", m.wage),
                format!("{:.6}", m.value),
            ]
        })
        .collect();
    let header = ["member_id", "role", "level", "beta", "wage", "value"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }

    let mut out = String::new();
    let mut line = |cells: [&str; 6]| {
        let _ = writeln!(
            out,
            "{:<w0$}  {:<w1$}  {:>w2$}  {:>w3$}  {:>w4$}  {:>w5$}",
            cells[0],
            cells[1],
            cells[2],
            cells[3],
            cells[4],
            cells[5],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3],
            w4 = widths[4],
            w5 = widths[5],
        );
    };
    line(header);
    for row in &rows {
        line(row.each_ref().map(String::as_str));
    }
    let _ = writeln!(out, "residual beta  {:.6}", a.residual_beta);
    let _ = writeln!(out, "profit pool    {:.6}", a.profit_pool);
    out
}

fn write_allocation_csv(path: &Path, a: &AllocationResult) -> Result<(), Failure> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["member_id", "role", "level", "beta", "wage", "value"])?;
    for m in &a.members {
        w.write_record([
            m.member_id.clone(),
            m.role.as_str().to_string(),
            m.level.map(|l| l.to_string()).unwrap_or_default(),
            m.beta.to_string(),
            m.wage.to_string(),
            m.value.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_allocate(scenario: &Path, csv_path: Option<&Path>) -> Result<u8, Failure> {
    let s = load(scenario)?;
    let a = allocate(&s.firm)?;
    print!("{}", allocation_table(&a));
    if let Some(path) = csv_path {
        write_allocation_csv(path, &a)?;
    }
    Ok(0)
}

fn cmd_check(scenario: &Path) -> Result<u8, Failure> {
    let s = load(scenario)?;
    let firm = &s.firm;
    let costs = marginal_costs(firm, &s.tasks);
    let mut violations = 0usize;

    println!("costs: ETC {:.6}, ITC {:.6}, TTC {:.6}", costs.etc, costs.itc, costs.ttc());
    match firm_viability(costs.etc, costs.itc, firm.existence_uncertainty())? {
        Viability::Viable => println!("viability: ok"),
        Viability::NotViable(failures) => {
            for f in failures {
                violations += 1;
                match f {
                    ViabilityFailure::CostInversion => println!(
                        "viability: FAIL: external cost {:.6} is below internal cost {:.6}; the firm needs ETC >= ITC",
                        costs.etc, costs.itc
                    ),
                    ViabilityFailure::ZeroUncertainty => println!(
                        "viability: FAIL: existence uncertainty U_e = 0; a firm exists only when U_e != 0"
                    ),
                }
            }
        }
    }

    let allocation = allocate(firm)?;
    let values: Vec<(&str, f64)> = allocation
        .members
        .iter()
        .map(|m| (m.member_id.as_str(), m.value))
        .collect();
    let coase = check_coase_conditions(costs.etc, costs.itc, &values)?;
    if coase.itc_within_etc {
        println!("coase: ITC <= ETC ok");
    } else {
        violations += 1;
        println!("coase: FAIL: ITC {:.6} exceeds ETC {:.6}", costs.itc, costs.etc);
    }
    if coase.value_violations.is_empty() {
        println!("coase: ITC + ETC < V ok for all {} members", values.len());
    }
    for id in &coase.value_violations {
        violations += 1;
        let v = allocation.share(id).map_or(0.0, |m| m.value);
        println!("coase: FAIL: ITC + ETC = {:.6} is not below value {v:.6} of `{id}`", costs.ttc());
    }

    match firm.budgets() {
        None => println!("budgets: none declared"),
        Some(_) => {
            // The cost-based price is the summed transaction cost.
            let found = check_budgets(firm, costs.ttc(), costs.ttc())?;
            if found.is_empty() {
                println!("budgets: ok");
            }
            for v in found {
                violations += 1;
                println!("budgets: FAIL: {v}");
            }
        }
    }

    let riders = free_rider_incidence(firm, &allocation);
    if riders.count == 0 {
        println!("free riders: none");
    } else {
        violations += riders.count;
        println!("free riders: FAIL: {} ({})", riders.count, riders.member_ids.join(", "));
    }

    if violations == 0 {
        println!("all checks passed");
        Ok(0)
    } else {
        println!("{violations} violation(s)");
        Ok(EXIT_VIOLATION)
    }
}

fn cmd_equilibrium(scenario: &Path) -> Result<u8, Failure> {
    let s = load(scenario)?;
    let Some(market) = s.market else {
        return Err(Failure {
            code: EXIT_DATA,
            message: format!("{}: scenario has no `market` section", scenario.display()),
        });
    };
    let eq = equilibrium_price(&market)?;
    println!("price     {:.6}", eq.price);
    if eq.negative {
        println!("warning: equilibrium price is negative");
    }
    println!("residual  {:e}", equilibrium_residual(&market, eq.price));
    let ttc = marginal_costs(&s.firm, &s.tasks).ttc();
    println!("sum TTC   {ttc:.6}");
    println!("cost gap  {:.6}", ttc - eq.price);
    Ok(0)
}

fn cmd_simulate(scenario: &Path, cycles: usize, ledger_path: &Path) -> Result<u8, Failure> {
    let s = load(scenario)?;
    let reports = simulate(&s.firm, &s.tasks, &s.oracle, cycles)?;
    let mut ledger = Ledger::open(ledger_path)?;
    println!("{:>5}  {:>8}  {:>12}  {:>11}", "cycle", "r", "itc_gap", "free_riders");
    for report in reports {
        println!(
            "{:>5}  {:>8.6}  {:>12.6}  {:>11}",
            report.cycle_id, report.royalty_rate, report.itc_gap, report.free_riders.count
        );
        for w in &report.warnings {
            println!("       warning: {w}");
        }
        ledger.append(&Payload::Cycle(report))?;
    }
    println!("ledger {} now holds {} entries", ledger_path.display(), ledger.len());
    Ok(0)
}

fn cmd_curves(which: Which, samples: usize, csv_path: Option<&Path>) -> Result<u8, Failure> {
    let which = match which {
        Which::Vi => CurveKind::Vi,
        Which::Productivity => CurveKind::Productivity,
    };
    let series = emit_curves(&CurveConfig { which, samples })?;
    let sink: Box<dyn std::io::Write> = match csv_path {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["x", "typical", "expected", "ideal"])?;
    for p in series {
        w.write_record([p.x, p.typical, p.expected, p.ideal].map(|v| v.to_string()))?;
    }
    w.flush()?;
    Ok(0)
}

fn cmd_ledger_verify(path: &Path) -> Result<u8, Failure> {
    match ledger::verify(path)? {
        Verification::Ok(n) => {
            println!("ok: {n} entries");
            Ok(0)
        }
        Verification::Corrupt(seq) => Err(Error::CorruptLedger(seq).into()),
    }
}

fn cmd_ledger_replay(path: &Path) -> Result<u8, Failure> {
    let reports = ledger::replay(path)?;
    println!("{:>5}  {:>8}  {:>8}  {:>12}  {:>11}", "cycle", "r", "next_r", "itc_gap", "free_riders");
    for r in &reports {
        println!(
            "{:>5}  {:>8.6}  {:>8.6}  {:>12.6}  {:>11}",
            r.cycle_id, r.royalty_rate, r.adjusted_royalty, r.itc_gap, r.free_riders.count
        );
    }
    println!("{} cycle report(s)", reports.len());
    Ok(0)
}
