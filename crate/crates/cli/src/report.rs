//! Reports: tables rendered as aligned text or as `key=value` records.

use std::fmt::Write as _;

/// Rows sharing one set of keys. Values never contain whitespace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub keys: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(keys: &[&'static str]) -> Self {
        Table { keys: keys.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.keys.len(), "row width");
        let row = row
            .into_iter()
            .map(|v| if v.chars().any(char::is_whitespace) { v.split_whitespace().collect() } else { v })
            .collect();
        self.rows.push(row);
    }
}

#[macro_export]
macro_rules! row {
    ($($v:expr),* $(,)?) => { vec![$($v.to_string()),*] };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub cmd: &'static str,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(cmd: &'static str) -> Self {
        Report { cmd, tables: Vec::new() }
    }

    pub fn add(&mut self, t: Table) {
        if !t.rows.is_empty() {
            self.tables.push(t);
        }
    }

    /// Aligned tables with a header line each, separated by blank lines.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for (k, t) in self.tables.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            let widths: Vec<usize> = (0..t.keys.len())
                .map(|c| t.rows.iter().map(|r| r[c].len()).chain([t.keys[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: Vec<&str>| {
                let mut s = String::new();
                for (c, v) in cells.iter().enumerate() {
                    if c + 1 == cells.len() {
                        s.push_str(v);
                    } else {
                        let _ = write!(s, "{v:<w$}  ", w = widths[c]);
                    }
                }
                s.push('\n');
                s
            };
            out.push_str(&line(t.keys.clone()));
            for r in &t.rows {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
        }
        out
    }

    /// One `cmd=... key=value ...` line per row.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            for r in &t.rows {
                out.push_str("cmd=");
                out.push_str(self.cmd);
                for (k, v) in t.keys.iter().zip(r) {
                    let _ = write!(out, " {k}={v}");
                }
                out.push('\n');
            }
        }
        out
    }
}
