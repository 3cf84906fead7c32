//! CSV files: `x,y` statistic series and single-column `value` histograms.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Shortest decimal that parses back to exactly the same `f64`.
pub fn format_value(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn write(path: &Path, body: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, body).map_err(|e| Error::io(path, e))
}

fn check_finite(path: &Path, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Parse { path: path.into(), message: format!("refusing to write non-finite value {v}") })
    }
}

/// Writes `x,y` with one row per point.
pub fn emit_series(points: &[(usize, f64)], path: &Path) -> Result<()> {
    let mut body = String::from("x,y\n");
    for &(x, y) in points {
        check_finite(path, y)?;
        let _ = writeln!(body, "{x},{}", format_value(y));
    }
    write(path, &body)
}

/// Writes `value` with one row per sample.
pub fn emit_histogram(values: &[f64], path: &Path) -> Result<()> {
    let mut body = String::from("value\n");
    for &v in values {
        check_finite(path, v)?;
        let _ = writeln!(body, "{}", format_value(v));
    }
    write(path, &body)
}

fn read_lines(path: &Path, header: &str) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == header => {}
        other => {
            return Err(Error::Parse {
                path: path.into(),
                message: format!("expected header '{header}', found {:?}", other.unwrap_or("")),
            })
        }
    }
    Ok(lines.filter(|l| !l.trim().is_empty()).map(str::to_string).collect())
}

pub fn read_histogram(path: &Path) -> Result<Vec<f64>> {
    read_lines(path, "value")?
        .iter()
        .map(|l| {
            l.trim().parse::<f64>().map_err(|_| Error::Parse { path: path.into(), message: format!("bad value '{l}'") })
        })
        .collect()
}

pub fn read_series(path: &Path) -> Result<Vec<(usize, f64)>> {
    read_lines(path, "x,y")?
        .iter()
        .map(|l| {
            let bad = || Error::Parse { path: path.into(), message: format!("bad row '{l}'") };
            let (x, y) = l.split_once(',').ok_or_else(bad)?;
            Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn series_layout() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        emit_series(&[(8, 3.2), (11, 4.4)], &p).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "x,y\n8,3.2\n11,4.4\n");
        emit_series(&[], &p).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "x,y\n");
        assert!(read_series(&p).unwrap().is_empty());
        assert!(emit_series(&[(1, f64::NAN)], &p).is_err());
    }

    #[test]
    fn io_errors_name_the_path() {
        let err = read_histogram(Path::new("/nonexistent/h.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/h.csv"));
    }

    #[test]
    fn integers_print_plainly() {
        assert_eq!(format_value(612.0), "612");
        assert_eq!(format_value(-6.0), "-6");
        assert_eq!(format_value(0.1), "0.1");
    }

    proptest! {
        #[test]
        fn histogram_round_trip(values in proptest::collection::vec(-1e12f64..1e12, 0..50)) {
            let dir = tempfile::tempdir().unwrap();
            let p = dir.path().join("h.csv");
            emit_histogram(&values, &p).unwrap();
            let back = read_histogram(&p).unwrap();
            prop_assert_eq!(back.len(), values.len());
            for (a, b) in back.iter().zip(&values) {
                prop_assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
            }
        }

        #[test]
        fn series_round_trip(ys in proptest::collection::vec(-1e6f64..1e6, 0..20)) {
            let dir = tempfile::tempdir().unwrap();
            let p = dir.path().join("s.csv");
            let pts: Vec<(usize, f64)> = ys.iter().enumerate().map(|(i, y)| (i + 2, *y)).collect();
            emit_series(&pts, &p).unwrap();
            prop_assert_eq!(read_series(&p).unwrap(), pts);
        }
    }
}
