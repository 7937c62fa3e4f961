use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use crate::diagnostics::DiagnosticsRecord;
use crate::error::{Error, Result};

pub fn csv_header() -> String {
    DiagnosticsRecord::COLUMNS.join(",")
}

/// One data line, every value with 17 significant digits.
pub fn csv_row(r: &DiagnosticsRecord) -> String {
    r.values()
        .iter()
        .map(|v| format!("{v:.16e}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Appends a record, writing the header first if the file is new or empty.
pub fn append_csv(record: &DiagnosticsRecord, path: &Path) -> Result<()> {
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    let mut text = String::new();
    if f.metadata()?.len() == 0 {
        text.push_str(&csv_header());
        text.push('\n');
    }
    text.push_str(&csv_row(record));
    text.push('\n');
    f.write_all(text.as_bytes())?;
    Ok(())
}

/// Reads a diagnostics CSV written by [`append_csv`].
pub fn read_csv(path: &Path) -> Result<Vec<DiagnosticsRecord>> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == csv_header() => {}
        _ => return Err(Error::Shape("unexpected CSV header".into())),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let vals: Vec<f64> = line
                .split(',')
                .map(|s| s.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Shape(format!("CSV row {}: {e}", i + 1)))?;
            let arr: [f64; 12] = vals
                .try_into()
                .map_err(|_| Error::Shape(format!("CSV row {}: wrong column count", i + 1)))?;
            Ok(DiagnosticsRecord::from_values(arr))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_and_reread() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let a = DiagnosticsRecord {
            t: 0.1,
            kinetic: 1.0 / 3.0,
            max_d: 0.999_999_999_9,
            ..Default::default()
        };
        let b = DiagnosticsRecord {
            t: 0.2,
            total_e: std::f64::consts::PI,
            helicity: -1e-300,
            ..Default::default()
        };
        append_csv(&a, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(
            text.lines().next().unwrap(),
            "t,kinetic,elastic,penalty,total_E,E_alpha,dissipation,energy_residual,max_d,div_residual,helicity,enstrophy"
        );
        append_csv(&b, &path).unwrap();
        assert_eq!(read_csv(&path).unwrap(), vec![a, b]);
    }
}
