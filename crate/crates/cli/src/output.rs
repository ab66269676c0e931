//! Output plumbing: format selection, 15-significant-digit decimals for the
//! CSV and table renderers, and the stdout-or-file sink.

use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    HumanTable,
    Json,
    Csv,
}

/// Render a float as a plain decimal with 15 significant digits, trailing
/// zeros trimmed.
pub fn sig15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (14 - exponent).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// `sig15` for an optional value; absent values render as the empty cell.
pub fn sig15_opt(x: Option<f64>) -> String {
    x.map(sig15).unwrap_or_default()
}

/// Join header and rows into a CSV document (values contain no commas).
pub fn csv_document(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Align rows into a fixed-width text table.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let render = |cells: &[String]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let header_cells: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    let mut out = render(&header_cells);
    out.push('\n');
    for row in rows {
        out.push_str(&render(row));
        out.push('\n');
    }
    out
}

/// Write the rendered document to stdout or to `--out FILE`.
pub fn sink(rendered: &str, out: Option<&Path>) -> std::io::Result<()> {
    let with_newline = if rendered.ends_with('\n') {
        rendered.to_string()
    } else {
        format!("{rendered}\n")
    };
    match out {
        Some(path) => std::fs::write(path, with_newline),
        None => std::io::stdout().write_all(with_newline.as_bytes()),
    }
}
