//! CSV emission: a `# key = value` header, one column row, data rows.

use std::fmt::Write as _;

use lockin_core::Precision;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Prec(Precision),
}

impl Cell {
    fn render(&self, out: &mut String) {
        match self {
            Cell::Int(v) => write!(out, "{v}").unwrap(),
            Cell::Real(v) => write_real(out, *v),
            Cell::Prec(Precision::Finite(v)) => write_real(out, *v),
            Cell::Prec(Precision::Divergent) => out.push_str("divergent"),
            Cell::Prec(Precision::Unmeasurable) => out.push_str("unmeasurable"),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Real(v) => Some(*v),
            Cell::Prec(p) => p.value(),
        }
    }
}

/// 17 significant digits.
fn write_real(out: &mut String, v: f64) {
    write!(out, "{v:.16e}").unwrap();
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Trailing comment lines, e.g. fit results.
    pub footer: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64()).collect())
    }

    pub fn to_csv(&self, header: &[(&str, String)]) -> String {
        let mut out = format!("# lockin {}\n", lockin_core::VERSION);
        for (k, v) in header {
            writeln!(out, "# {k} = {v}").unwrap();
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.render(&mut out);
            }
            out.push('\n');
        }
        for line in &self.footer {
            writeln!(out, "# {line}").unwrap();
        }
        out
    }
}
