//! Acceptance runner: one PASS/FAIL line per criterion, each with its
//! runtime budget.
//!
//! Criteria listed in `KNOWN_FAILURES` are still run and reported as FAIL;
//! any other failure makes the runner exit non-zero.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use powertower::series::{convergence_report, format_significant, taylor_at_one};
use powertower::verify::{self, Check, SERIES_REFERENCE, SERIES_TOLERANCE};

/// The reference n = 20 row of the series grid coincides with the partial
/// sums at n = 15, so the x = 0.5 and x = 2 cells at n = 20 cannot match.
const KNOWN_FAILURES: &[u32] = &[1];

struct Outcome {
    id: u32,
    title: &'static str,
    budget: Duration,
    elapsed: Duration,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.failures.is_empty() && self.elapsed < self.budget
    }

    fn print(&self) {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} [{:>2}] {} ({:.3}s, budget {}s)",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs_f64()
        );
        if self.elapsed >= self.budget {
            println!("       over budget");
        }
        for f in &self.failures {
            println!("       {f}");
        }
        for n in &self.notes {
            println!("       note: {n}");
        }
    }
}

fn criterion(
    id: u32,
    title: &'static str,
    budget_secs: f64,
    body: impl FnOnce(&mut Vec<String>) -> Vec<String>,
) -> Outcome {
    let mut notes = Vec::new();
    let start = Instant::now();
    let failures = body(&mut notes);
    Outcome {
        id,
        title,
        budget: Duration::from_secs_f64(budget_secs),
        elapsed: start.elapsed(),
        failures,
        notes,
    }
}

fn failures_of(checks: impl IntoIterator<Item = Check>) -> Vec<String> {
    checks
        .into_iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect()
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_powertower"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run powertower: {e}"))?;
    if !out.status.success() {
        return Err(format!(
            "powertower exited with {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

/// Series grid through the command line: the text grid must show the
/// reference digits and the csv values must lie within the tolerance.
fn series_grid(notes: &mut Vec<String>) -> Vec<String> {
    let args = [
        "series",
        "--anchor",
        "1",
        "--order",
        "20",
        "--eval",
        "0.5",
        "0.9",
        "2",
        "--checkpoints",
        "5",
        "10",
        "20",
    ];
    let text = match run_cli(&args) {
        Ok(t) => t,
        Err(e) => return vec![e],
    };
    let csv = match run_cli(&[&args[..], &["--format", "csv"]].concat()) {
        Ok(t) => t,
        Err(e) => return vec![e],
    };

    let grid: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();
    let values: Vec<(f64, usize, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (
                f[0].parse().unwrap(),
                f[1].parse().unwrap(),
                f[2].parse().unwrap(),
            )
        })
        .collect();

    let mut failures = Vec::new();
    for (col, (x, cells)) in SERIES_REFERENCE.iter().enumerate() {
        for (row, (n, printed)) in cells.iter().enumerate() {
            let shown = grid
                .get(row)
                .and_then(|r| r.get(col + 1))
                .copied()
                .unwrap_or("<missing>");
            let value = values
                .iter()
                .find(|(vx, vn, _)| vx == x && vn == n)
                .map(|v| v.2);
            let reference: f64 = printed.parse().unwrap();
            let close = value.is_some_and(|v| (v - reference).abs() <= SERIES_TOLERANCE);
            if shown != *printed || !close {
                failures.push(format!(
                    "x={x} n={n}: printed {shown} (value {}), reference {printed}",
                    value.map_or("?".into(), |v| v.to_string())
                ));
            }
        }
    }

    // Where the mismatching row does match.
    let series = taylor_at_one(20);
    let at_15: Vec<bool> = SERIES_REFERENCE
        .iter()
        .map(|(x, cells)| {
            let r = convergence_report(&series, *x, &[15]).unwrap();
            format_significant(r.rows[0].value, 7) == cells[2].1
        })
        .collect();
    if at_15.iter().all(|&m| m) {
        notes.push("the reference row labelled n=20 equals the partial sums at n=15".into());
    }
    failures
}

fn main() -> ExitCode {
    let outcomes = vec![
        criterion(1, "series grid at anchor 1, order 20", 1.0, series_grid),
        criterion(2, "Omega reference table a=1..9", 0.1, |_| {
            failures_of([verify::omega_reference()])
        }),
        criterion(
            3,
            "Omega recursion vs closed form and column sums",
            5.0,
            |_| failures_of([verify::omega_closed_form(), verify::omega_column_sums()]),
        ),
        criterion(
            4,
            "partial sums: three routes and S_0..S_4 formulas",
            5.0,
            |_| failures_of([verify::partial_sum_routes(), verify::partial_sum_formulas()]),
        ),
        criterion(5, "rencontres enumeration and lambda mapping", 30.0, |_| {
            failures_of([verify::rencontres_enumeration(), verify::lambda_mapping()])
        }),
        criterion(6, "P family identities", 10.0, |_| {
            failures_of([
                verify::p_family(),
                verify::p_derivative_ladder(),
                verify::p_constant_derivative(),
                verify::omega_binomial(),
            ])
        }),
        criterion(7, "Delta recursion vs closed form", 10.0, |_| {
            failures_of([verify::delta_equivalence()])
        }),
        criterion(
            8,
            "derivative forms: recursion vs closed form",
            20.0,
            |_| failures_of([verify::derivative_forms()]),
        ),
        criterion(9, "values at 1 vs formal power series", 2.0, |_| {
            failures_of([verify::values_at_one()])
        }),
        criterion(10, "numeric derivatives vs finite differences", 1.0, |_| {
            failures_of([verify::finite_difference_crosscheck()])
        }),
    ];

    println!("acceptance criteria");
    for o in &outcomes {
        o.print();
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let unexpected: Vec<u32> = outcomes
        .iter()
        .filter(|o| !o.passed() && !KNOWN_FAILURES.contains(&o.id))
        .map(|o| o.id)
        .collect();
    let fixed: Vec<u32> = outcomes
        .iter()
        .filter(|o| o.passed() && KNOWN_FAILURES.contains(&o.id))
        .map(|o| o.id)
        .collect();
    println!("{passed} of {} criteria passed", outcomes.len());
    if !fixed.is_empty() {
        println!("known failures now passing: {fixed:?}");
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
