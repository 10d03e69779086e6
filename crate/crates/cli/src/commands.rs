use std::thread;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use powertower::combinatorics::{partial_sum_closed, OmegaTable, PartialSumTable, RencontresTable};
use powertower::laurent::{poly_p, QFamily};
use powertower::series::{
    convergence_report, format_significant, taylor_at, taylor_at_one, Coefficients,
};
use powertower::verify::{Check, Suite};
use powertower::{Anchor, DerivativeEngine, LaurentPoly, Method};

use crate::output::{latex_tabular, text_grid, Cell, Report};

/// Significant digits for partial sums in human-readable output.
const SERIES_DIGITS: usize = 7;
/// Significant digits for derivative values and float coefficients.
const VALUE_DIGITS: usize = 10;

pub type CommandResult<T> = Result<T, String>;

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// 10 significant digits with trailing zeros dropped, keeping one decimal.
fn compact(v: f64) -> String {
    let s = format_significant(v, VALUE_DIGITS);
    if !s.contains('.') {
        return if v.is_finite() { format!("{s}.0") } else { s };
    }
    let trimmed = s.trim_end_matches('0');
    if trimmed.ends_with('.') {
        format!("{trimmed}0")
    } else {
        trimmed.to_string()
    }
}

pub fn omega(max_a: usize) -> Report {
    let table = OmegaTable::new(max_a);
    let mut columns = vec!["a".to_string()];
    columns.extend((0..max_a).map(|b| format!("b={b}")));
    let mut report = Report::new("omega", params(&[("max_a", json!(max_a))]), columns);
    for a in 1..=max_a {
        let mut row = vec![Cell::index(a)];
        row.extend((0..max_a).map(|b| Cell::exact(table.get(a, b))));
        report.rows.push(row);
    }

    let mut header = vec!["$\\Omega(a,b)$".to_string()];
    header.extend((0..max_a).map(|b| format!("$b={b}$")));
    let body: Vec<Vec<String>> = (1..=max_a)
        .map(|a| {
            let mut row = vec![format!("$a={a}$")];
            row.extend((0..max_a).map(|b| table.get(a, b).to_string()));
            row
        })
        .collect();
    report.latex = Some(latex_tabular(&header, &body));
    report
}

pub fn sums(i: usize, n_max: usize) -> Report {
    let table = PartialSumTable::new(i, n_max);
    let columns = ["n", "recursive", "closed", "agree"]
        .map(String::from)
        .to_vec();
    let mut report = Report::new(
        "sums",
        params(&[("i", json!(i)), ("n_max", json!(n_max))]),
        columns,
    );
    for n in 1..=n_max {
        let rec = table.get(i, n);
        let closed = if i == 0 {
            BigInt::from(n)
        } else {
            partial_sum_closed(i, n)
        };
        report.rows.push(vec![
            Cell::index(n),
            Cell::exact(rec),
            Cell::exact(&closed),
            Cell::Bool(*rec == closed),
        ]);
    }
    report
}

pub fn rencontres(max_n: usize) -> Report {
    let table = RencontresTable::new(max_n);
    let mut columns = vec!["n".to_string()];
    columns.extend((0..=max_n).map(|k| format!("k={k}")));
    let mut report = Report::new("rencontres", params(&[("max_n", json!(max_n))]), columns);
    for n in 0..=max_n {
        let mut row = vec![Cell::index(n)];
        row.extend((0..=max_n).map(|k| match table.get(n, k) {
            Ok(d) => Cell::exact(d),
            Err(_) => Cell::exact(0),
        }));
        report.rows.push(row);
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "Q", alias = "q")]
    Q,
}

pub fn poly(family: Family, n: usize) -> CommandResult<Report> {
    let (name, poly): (&str, LaurentPoly) = match family {
        Family::P => {
            if n == 0 {
                return Err("family P starts at n = 1".into());
            }
            ("P", poly_p(&OmegaTable::new(n), n).poly)
        }
        Family::Q => ("Q", QFamily::new(n).get(n).clone()),
    };
    let columns = vec!["exponent".to_string(), "coefficient".to_string()];
    let mut report = Report::new(
        "poly",
        params(&[("family", json!(name)), ("n", json!(n))]),
        columns,
    );
    for (e, c) in poly.to_pairs() {
        report
            .rows
            .push(vec![Cell::Text(e.to_string()), Cell::Exact(c)]);
    }
    report.text = Some(format!("{poly}\n"));
    report.latex = Some(format!("{}_{{{n}}}(x) = {}\n", name, poly.to_latex()));
    Ok(report)
}

pub fn derivative_symbolic(n: usize) -> Report {
    let engine = DerivativeEngine::new(n);
    let form = engine.form_closed(n).expect("order within engine");
    let columns = vec!["ln_power".to_string(), "coefficient".to_string()];
    let mut report = Report::new(
        "derivative",
        params(&[("n", json!(n)), ("symbolic", json!(true))]),
        columns,
    );
    for j in (0..=n).rev() {
        report
            .rows
            .push(vec![Cell::index(j), Cell::Exact(form.coeff(j).to_string())]);
    }
    report.text = Some(format!("{form}\n"));
    report.latex = Some(format!("f^{{({n})}}(x) = {}\n", form.to_latex()));
    report
}

/// Numeric f^(n)(x) by both methods. Returns the report and an optional
/// conditioning warning for the diagnostics stream.
pub fn derivative_numeric(n: usize, x: f64) -> CommandResult<(Report, Option<String>)> {
    let engine = DerivativeEngine::new(n);
    let rec = engine
        .eval(n, x, Method::Recursive)
        .map_err(|e| e.to_string())?;
    let closed = engine
        .eval(n, x, Method::Closed)
        .map_err(|e| e.to_string())?;
    let diff = closed.value - rec.value;
    let columns = vec!["method".to_string(), "value".to_string()];
    let mut report = Report::new(
        "derivative",
        params(&[("n", json!(n)), ("x", json!(x)), ("symbolic", json!(false))]),
        columns,
    );
    report.rows = vec![
        vec![
            Cell::Text(Method::Recursive.to_string()),
            Cell::float(rec.value, compact(rec.value)),
        ],
        vec![
            Cell::Text(Method::Closed.to_string()),
            Cell::float(closed.value, compact(closed.value)),
        ],
        vec![
            Cell::Text("difference".into()),
            Cell::float(diff, format!("{diff:.3e}")),
        ],
    ];
    Ok((report, closed.warning))
}

pub fn parse_anchor(s: &str) -> CommandResult<Anchor> {
    if s.trim() == "1" {
        return Ok(Anchor::One);
    }
    let a: f64 = s
        .parse()
        .map_err(|_| format!("anchor `{s}` is not a number"))?;
    if !(a.is_finite() && a > 0.0) {
        return Err(format!("anchor must be positive, got {s}"));
    }
    Ok(Anchor::Real(a))
}

pub fn series(
    anchor: Anchor,
    order: usize,
    eval_at: &[f64],
    checkpoints: Option<&[usize]>,
) -> CommandResult<Report> {
    let series = match anchor {
        Anchor::One => taylor_at_one(order),
        Anchor::Real(a) => taylor_at(a, order).map_err(|e| e.to_string())?,
    };
    let mut p = params(&[
        ("anchor", json!(anchor.to_string())),
        ("order", json!(order)),
    ]);
    if eval_at.is_empty() {
        return Ok(coefficient_report(&series, p));
    }

    let checkpoints: Vec<usize> = checkpoints.map_or_else(|| vec![order], <[usize]>::to_vec);
    p.insert("eval".into(), json!(eval_at));
    p.insert("checkpoints".into(), json!(checkpoints));
    let columns = ["x", "n", "value", "direct", "abs_error"]
        .map(String::from)
        .to_vec();
    let mut report = Report::new("series", p, columns);
    let mut reports = Vec::with_capacity(eval_at.len());
    for &x in eval_at {
        let r = convergence_report(&series, x, &checkpoints).map_err(|e| e.to_string())?;
        for row in &r.rows {
            report.rows.push(vec![
                Cell::float(x, x.to_string()),
                Cell::index(row.n),
                Cell::float(row.value, format_significant(row.value, SERIES_DIGITS)),
                r.direct_value.map_or(Cell::Empty, |d| {
                    Cell::float(d, format_significant(d, SERIES_DIGITS))
                }),
                row.abs_error
                    .map_or(Cell::Empty, |e| Cell::float(e, format!("{e:.2e}"))),
            ]);
        }
        reports.push(r);
    }

    // Grid layout: one row per checkpoint, one column per evaluation point,
    // closed by the directly computed x^x.
    let mut header = vec!["n\\x".to_string()];
    header.extend(eval_at.iter().map(|x| x.to_string()));
    let grid: Vec<Vec<String>> = checkpoints
        .iter()
        .enumerate()
        .map(|(j, n)| {
            let mut row = vec![n.to_string()];
            row.extend(
                reports
                    .iter()
                    .map(|r| format_significant(r.rows[j].value, SERIES_DIGITS)),
            );
            row
        })
        .collect();
    let mut direct = vec!["x^x".to_string()];
    direct.extend(reports.iter().map(|r| {
        r.direct_value
            .map_or("-".into(), |d| format_significant(d, SERIES_DIGITS))
    }));
    report.text = Some(text_grid(&header, &[grid.clone(), vec![direct]].concat()));

    let mut latex_header = vec!["n\\setminus x".to_string()];
    latex_header.extend(eval_at.iter().map(|x| x.to_string()));
    let mut out = String::from("$$\\begin{array}{||c||");
    out.push_str(&vec!["c"; eval_at.len()].join("|"));
    out.push_str("||}\n\\hline\\hline\n");
    out.push_str(&latex_header.join("&"));
    out.push_str("\\\\\n\\hline\\hline\n");
    for row in &grid {
        out.push_str(&row.join("&"));
        out.push_str("\\\\\n");
    }
    out.push_str("\\hline\\hline\n\\end{array}$$\n");
    report.latex = Some(out);
    Ok(report)
}

fn coefficient_report(series: &powertower::TaylorSeries, p: Map<String, Value>) -> Report {
    match series.coefficients() {
        Coefficients::Exact(coeffs) => {
            let columns = ["k", "numerator", "denominator"].map(String::from).to_vec();
            let mut report = Report::new("series", p, columns);
            let mut lines = Vec::new();
            for (k, c) in coeffs.iter().enumerate() {
                report.rows.push(vec![
                    Cell::index(k),
                    Cell::exact(c.numer()),
                    Cell::exact(c.denom()),
                ]);
                lines.push(vec![k.to_string(), c.to_string()]);
            }
            report.text = Some(text_grid(&["k".into(), "coefficient".into()], &lines));
            report
        }
        Coefficients::Float(coeffs) => {
            let columns = ["k", "coefficient"].map(String::from).to_vec();
            let mut report = Report::new("series", p, columns);
            for (k, &c) in coeffs.iter().enumerate() {
                report
                    .rows
                    .push(vec![Cell::index(k), Cell::float(c, compact(c))]);
            }
            report
        }
    }
}

/// Runs the suites on separate threads and returns their checks in suite
/// order, along with whether any check failed.
pub fn verify(suites: &[Suite]) -> (Report, bool) {
    let results: Vec<(Suite, Vec<Check>)> = thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| scope.spawn(move || (suite, suite.run())))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });

    let names: Vec<&str> = suites.iter().map(Suite::name).collect();
    let columns = ["suite", "check", "passed", "seconds", "detail"]
        .map(String::from)
        .to_vec();
    let mut report = Report::new("verify", params(&[("suites", json!(names))]), columns);
    let mut lines = String::new();
    let mut failed = 0;
    let mut total = 0;
    for (suite, checks) in &results {
        for check in checks {
            total += 1;
            if !check.passed {
                failed += 1;
            }
            lines.push_str(&format!("{check}\n"));
            let secs = check.elapsed.as_secs_f64();
            report.rows.push(vec![
                Cell::Text(suite.name().into()),
                Cell::Text(check.name.clone()),
                Cell::Bool(check.passed),
                Cell::float(secs, format!("{secs:.3}")),
                Cell::Text(check.detail.clone()),
            ]);
        }
    }
    lines.push_str(&format!("{} of {total} checks passed\n", total - failed));
    report.text = Some(lines);
    (report, failed > 0)
}
