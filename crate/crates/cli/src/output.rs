use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use kryest::record::ConvergenceRecord;

pub const TRACE_HEADER: &str = "step,xi1_rel,xi2_rel,true_rel,wall_ms";
pub const BOUNDS_HEADER: &str = "m,bound41,bound42,bound43,bound44,gamma1,gamma2,gamma3,mu2,true_err";

/// Ten significant digits in scientific notation; missing values are empty.
fn value(x: Option<f64>) -> String {
    x.map(|x| format!("{x:.9e}")).unwrap_or_default()
}

fn write_lines(path: &Path, header: &str, rows: impl Iterator<Item = String>) -> anyhow::Result<()> {
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{header}")?;
    for row in rows {
        writeln!(w, "{row}")?;
    }
    w.flush().with_context(|| format!("writing {}", path.display()))
}

pub fn trace_row(r: &ConvergenceRecord) -> String {
    format!(
        "{},{},{},{},{}",
        r.step,
        value(Some(r.xi1_rel())),
        value(Some(r.xi2_rel())),
        value(r.true_rel),
        value(Some(r.wall_ms))
    )
}

pub fn write_trace_csv(path: &Path, records: &[ConvergenceRecord]) -> anyhow::Result<()> {
    write_lines(path, TRACE_HEADER, records.iter().map(trace_row))
}

pub fn write_bounds_csv(path: &Path, records: &[ConvergenceRecord]) -> anyhow::Result<()> {
    let rows = records.iter().filter_map(|r| {
        let b = r.bounds.as_ref()?;
        Some(format!(
            "{},{},{},{},{},{},{},{},{},{}",
            r.step,
            value(Some(b.bound_41)),
            value(b.bound_42),
            value(Some(b.bound_43)),
            value(b.bound_44),
            value(b.gamma1),
            value(Some(b.gamma2)),
            value(b.gamma3),
            value(Some(b.mu2)),
            value(r.true_abs)
        ))
    });
    write_lines(path, BOUNDS_HEADER, rows)
}

/// One value per line with 17 significant digits, enough to round-trip an `f64`.
pub fn write_vector(path: &Path, x: &[f64]) -> anyhow::Result<()> {
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    for v in x {
        writeln!(w, "{v:.16e}")?;
    }
    w.flush().with_context(|| format!("writing {}", path.display()))
}

/// `0.5` -> `0.5`, `1/81` -> `0.012346`; safe in file names.
pub fn tau_label(tau: f64) -> String {
    let s = format!("{tau:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() {
        "0".into()
    } else {
        s.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kryest::estimates::EstimatePair;

    #[test]
    fn trace_rows_use_ten_digits_and_empty_missing() {
        let rec = ConvergenceRecord::new(3, EstimatePair::from_parts(2.0, 1.0, 4.0), 1.5);
        assert_eq!(trace_row(&rec), "3,5.000000000e-1,2.500000000e-1,,1.500000000e0");
    }

    #[test]
    fn vector_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.txt");
        let x = [1.0 / 3.0, -2.5e-300, std::f64::consts::PI];
        write_vector(&path, &x).unwrap();
        let back: Vec<f64> = fs::read_to_string(&path)
            .unwrap()
            .lines()
            .map(|l| l.parse().unwrap())
            .collect();
        assert_eq!(back, x);
    }

    #[test]
    fn tau_labels() {
        assert_eq!(tau_label(0.5), "0.5");
        assert_eq!(tau_label(1.0), "1");
        assert_eq!(tau_label(0.0), "0");
        assert_eq!(tau_label(1.0 / 81.0), "0.012346");
    }
}
