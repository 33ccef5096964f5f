//! CSV output: locale-free numbers with 9 significant digits, sections
//! separated by a blank line.

use std::fmt::Write;

/// Renders `x` with 9 significant digits and no trailing zeros.
pub fn format_number(x: f64) -> String {
    let rounded: f64 = format!("{x:.8e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        "0".to_string()
    } else {
        rounded.to_string()
    }
}

/// One CSV table.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Section {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(header: &[&str]) -> Self {
        Section {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Column index by header name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join(","));
        }
    }
}

pub fn render(sections: &[Section]) -> String {
    let mut out = String::new();
    for (i, s) in sections.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        s.render(&mut out);
    }
    out
}

/// Splits command output back into its sections.
pub fn parse_sections(text: &str) -> Vec<Section> {
    text.split("\n\n")
        .filter(|block| !block.trim().is_empty())
        .map(|block| {
            let mut lines = block.lines().filter(|l| !l.is_empty());
            let header = lines
                .next()
                .unwrap_or_default()
                .split(',')
                .map(String::from)
                .collect();
            let rows = lines
                .map(|l| l.split(',').map(String::from).collect())
                .collect();
            Section { header, rows }
        })
        .collect()
}
