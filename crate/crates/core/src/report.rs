//! Deterministic report files: fixed-precision CSV tables and pretty JSON.
//!
//! Every number is written as `{:.16e}` (17 significant digits, `.` decimal
//! separator), rows end with `\n`, and JSON objects serialize with sorted
//! keys — so a rerun with the same inputs produces byte-identical files.

use std::fs;
use std::io;
use std::path::Path;

/// Canonical float formatting for CSV cells: 17 significant digits,
/// scientific notation, locale-independent.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A CSV table with a fixed header, rendered with LF line endings.
#[derive(Debug, Clone)]
pub struct CsvTable {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(columns: &[&str]) -> Self {
        CsvTable {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Append a row; the cell count must match the header.
    pub fn push(&mut self, cells: Vec<String>) {
        assert_eq!(
            cells.len(),
            self.columns.len(),
            "row width must match the header"
        );
        for cell in &cells {
            assert!(
                !cell.contains(',') && !cell.contains('\n'),
                "cells must not need quoting: {cell:?}"
            );
        }
        self.rows.push(cells);
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> io::Result<()> {
        fs::write(path, self.render())
    }
}

/// Write a JSON value pretty-printed with a trailing newline.
pub fn write_json(path: &Path, value: &serde_json::Value) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    text.push('\n');
    fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_fixed_width_scientific() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(std::f64::consts::SQRT_2), "1.4142135623730951e0");
        assert_eq!(fmt_f64(-0.03125), "-3.1250000000000000e-2");
        // Round-trips exactly: 17 significant digits identify a double.
        for x in [1.0 / 3.0, 2.0_f64.sqrt(), 1e-17, 123456.789] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn table_renders_header_and_lf_rows() {
        let mut t = CsvTable::new(&["n", "value"]);
        t.push(vec!["2".into(), fmt_f64(0.5)]);
        t.push(vec!["3".into(), fmt_f64(-1.0)]);
        assert_eq!(
            t.render(),
            "n,value\n2,5.0000000000000000e-1\n3,-1.0000000000000000e0\n"
        );
    }

    #[test]
    fn json_files_are_stable_across_reruns() {
        let value = serde_json::json!({
            "zeta": 1.0,
            "alpha": [1, 2, 3],
            "mid": {"b": 2.0, "a": 1.0}
        });
        let dir = tempfile::tempdir().unwrap();
        let p1 = dir.path().join("a.json");
        let p2 = dir.path().join("b.json");
        write_json(&p1, &value).unwrap();
        write_json(&p2, &value).unwrap();
        let b1 = std::fs::read(&p1).unwrap();
        let b2 = std::fs::read(&p2).unwrap();
        assert_eq!(b1, b2);
        assert!(b1.ends_with(b"\n"));
        // Keys render sorted, independent of insertion order.
        let text = String::from_utf8(b1).unwrap();
        let alpha = text.find("\"alpha\"").unwrap();
        let mid = text.find("\"mid\"").unwrap();
        let zeta = text.find("\"zeta\"").unwrap();
        assert!(alpha < mid && mid < zeta);
    }
}
