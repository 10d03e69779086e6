//! Rendering of command results as text, csv, json or LaTeX.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
    Latex,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Exact integer or rational in decimal, e.g. "-5040" or "1/12".
    Exact(String),
    Index(u64),
    /// A double together with its human-readable rendering.
    Float {
        value: f64,
        text: String,
    },
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn exact(v: impl ToString) -> Self {
        Cell::Exact(v.to_string())
    }

    pub fn index(v: usize) -> Self {
        Cell::Index(v as u64)
    }

    pub fn float(value: f64, text: String) -> Self {
        Cell::Float { value, text }
    }

    fn machine(&self) -> String {
        match self {
            Cell::Exact(s) | Cell::Text(s) => s.clone(),
            Cell::Index(i) => i.to_string(),
            Cell::Float { value, .. } => value.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn human(&self) -> String {
        match self {
            Cell::Float { text, .. } => text.clone(),
            Cell::Empty => "-".into(),
            other => other.machine(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Exact(s) | Cell::Text(s) => Value::String(s.clone()),
            Cell::Index(i) => Value::from(*i),
            Cell::Float { value, .. } => serde_json::Number::from_f64(*value)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// A command's output: a table of rows plus optional hand-made text and
/// LaTeX renderings that replace the generic table layout.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub text: Option<String>,
    pub latex: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, params: Map<String, Value>, columns: Vec<String>) -> Self {
        Report {
            command,
            params,
            columns,
            rows: Vec::new(),
            text: None,
            latex: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone().unwrap_or_else(|| self.text_table()),
            Format::Csv => self.csv(),
            Format::Json => self.json(),
            Format::Latex => self.latex.clone().unwrap_or_else(|| self.latex_table()),
        }
    }

    fn text_table(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::human).collect())
            .collect();
        text_grid(&self.columns, &cells)
    }

    fn csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record(row.iter().map(Cell::machine))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("flush to memory")).expect("utf-8 csv")
    }

    fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.into()));
        top.insert("params".into(), Value::Object(self.params.clone()));
        top.insert("rows".into(), Value::Array(rows));
        let mut out = serde_json::to_string_pretty(&Value::Object(top)).expect("json value");
        out.push('\n');
        out
    }

    fn latex_table(&self) -> String {
        let header: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("${}$", c.replace('_', "\\_")))
            .collect();
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::human).collect())
            .collect();
        latex_tabular(&header, &body)
    }
}

/// Right-aligned columns separated by two spaces.
pub fn text_grid(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

/// Double-ruled tabular with a single rule under the header row.
pub fn latex_tabular(header: &[String], rows: &[Vec<String>]) -> String {
    let columns = format!("||c|{}||", "c".repeat(header.len().saturating_sub(1)));
    let mut out = format!("\\begin{{tabular}}{{{columns}}}\n\\hline\\hline\n");
    out.push_str(&header.join("&"));
    out.push_str("\\\\\n\\hline\n");
    for row in rows {
        out.push_str(&row.join("&"));
        out.push_str("\\\\\n");
    }
    out.push_str("\\hline\\hline\n\\end{tabular}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut params = Map::new();
        params.insert("max_a".into(), Value::from(2));
        let mut r = Report::new("omega", params, vec!["a".into(), "b=0".into()]);
        r.rows.push(vec![Cell::index(1), Cell::exact(-12)]);
        r.rows
            .push(vec![Cell::index(2), Cell::float(0.5, "0.50".into())]);
        r
    }

    #[test]
    fn csv_has_header_and_machine_values() {
        assert_eq!(sample().render(Format::Csv), "a,b=0\n1,-12\n2,0.5\n");
    }

    #[test]
    fn json_shape() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["command"], "omega");
        assert_eq!(v["params"]["max_a"], 2);
        assert_eq!(v["rows"][0]["b=0"], "-12");
        assert_eq!(v["rows"][1]["b=0"], 0.5);
    }

    #[test]
    fn text_is_aligned() {
        assert_eq!(sample().render(Format::Text), "a   b=0\n1   -12\n2  0.50\n");
    }

    #[test]
    fn latex_rules() {
        let out = sample().render(Format::Latex);
        assert!(out.starts_with("\\begin{tabular}{||c|c||}"));
        assert!(out.contains("$a$&$b=0$\\\\"));
        assert!(out.ends_with("\\end{tabular}\n"));
    }
}
