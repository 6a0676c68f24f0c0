//! Fixed-width text rendering of reports.

use anyhow::bail;

use crate::report::Report;

/// Compact scientific notation for table cells.
fn format_sci(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.abs() >= 0.01 && x.abs() < 1000.0 {
        format!("{x:.4}")
    } else {
        format!("{x:.3e}")
    }
}

pub const COLUMNS: &[&str] = &["id", "anchor", "params", "value", "bound", "cmp", "pass"];

/// Deterministic fixed-width table over the requested columns, one record
/// per row, followed by a summary line. Unknown columns are rejected.
pub fn render_table(report: &Report, columns: &[&str]) -> anyhow::Result<String> {
    for col in columns {
        if !COLUMNS.contains(col) {
            bail!("unknown column `{col}`");
        }
    }
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(report.records.len() + 1);
    rows.push(columns.iter().map(|c| c.to_string()).collect());
    for r in &report.records {
        rows.push(
            columns
                .iter()
                .map(|&c| match c {
                    "id" => r.id.clone(),
                    "anchor" => r.anchor.clone(),
                    "params" => r.params.clone(),
                    "value" => format_sci(r.value),
                    "bound" => format_sci(r.bound),
                    "cmp" => r.cmp.to_string(),
                    "pass" => if r.pass { "pass" } else { "FAIL" }.to_string(),
                    _ => unreachable!("validated above"),
                })
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..columns.len())
        .map(|i| rows.iter().map(|row| row[i].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = widths[i].saturating_sub(cell.chars().count());
            if i + 1 < row.len() {
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if idx == 0 {
            let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
            out.extend(std::iter::repeat_n('-', total));
            out.push('\n');
        }
    }
    out.push_str(&format!(
        "{}: {}/{} passed, {} failed\n",
        report.suite, report.summary.passed, report.summary.total, report.summary.failed
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SuiteConfig;
    use crate::report::Record;

    fn demo(n: usize) -> Report {
        let records = (0..n)
            .map(|i| Record::le(&format!("s.check{i}"), "x = y", format!("k={i}"), 0.0, 1e-12))
            .collect();
        Report::new("s", &SuiteConfig::default(), records)
    }

    #[test]
    fn empty_single_and_many() {
        let empty = render_table(&demo(0), &["id", "pass"]).unwrap();
        assert!(empty.ends_with("s: 0/0 passed, 0 failed\n"));

        let one = render_table(&demo(1), &["id", "value", "pass"]).unwrap();
        assert!(one.contains("s.check0"));
        assert!(one.contains("pass"));

        let many = render_table(&demo(100), &["id", "pass"]).unwrap();
        assert_eq!(many.lines().count(), 100 + 3);
        // Deterministic output.
        assert_eq!(many, render_table(&demo(100), &["id", "pass"]).unwrap());
    }

    #[test]
    fn unknown_column_is_rejected() {
        assert!(render_table(&demo(1), &["id", "wat"]).is_err());
    }
}
