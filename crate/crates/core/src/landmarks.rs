//! Plain-text landmark files.
//!
//! One figure is `N` lines of `K` comma-separated numbers. A file may start
//! with a single header line, and holds several figures separated by blank
//! lines.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::shape::LandmarkSet;

/// Parses every figure in `text`. Errors carry 1-based line numbers.
pub fn parse_landmark_csv(text: &str) -> Result<Vec<LandmarkSet>> {
    let mut figures = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut first_line = None;
    let mut seen_data = false;

    let finish = |rows: &mut Vec<Vec<f64>>, start: usize, figures: &mut Vec<LandmarkSet>| -> Result<()> {
        if rows.is_empty() {
            return Ok(());
        }
        let k = rows[0].len();
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let set = LandmarkSet::new(DMatrix::from_row_slice(rows.len(), k, &flat))
            .map_err(|e| Error::Parse { line: start, message: e.to_string() })?;
        figures.push(set);
        rows.clear();
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            if let Some(start) = first_line.take() {
                finish(&mut rows, start, &mut figures)?;
            }
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if !seen_data => {
                // a single header line before any data
                seen_data = true;
                continue;
            }
            Err(e) => {
                return Err(Error::Parse { line: line_no, message: format!("not a numeric row ({e}): {line:?}") });
            }
        };
        seen_data = true;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse { line: line_no, message: "non-finite coordinate".into() });
        }
        if let Some(first) = rows.first() {
            if first.len() != values.len() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {} columns, found {}", first.len(), values.len()),
                });
            }
        } else if let Some(prev) = figures.last() {
            if prev.dimension() != values.len() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {} columns, found {}", prev.dimension(), values.len()),
                });
            }
        }
        first_line.get_or_insert(line_no);
        rows.push(values);
    }
    if let Some(start) = first_line {
        finish(&mut rows, start, &mut figures)?;
    }
    if figures.is_empty() {
        return Err(Error::Parse { line: 1, message: "no landmark rows found".into() });
    }
    let n = figures[0].landmarks();
    if let Some(bad) = figures.iter().position(|f| f.landmarks() != n) {
        return Err(Error::Parse {
            line: 1,
            message: format!("figure {} has {} landmarks, the first has {n}", bad + 1, figures[bad].landmarks()),
        });
    }
    Ok(figures)
}

pub fn read_landmark_file(path: impl AsRef<Path>) -> Result<Vec<LandmarkSet>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_landmark_csv(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse { line, message: format!("{}: {message}", path.display()) },
        other => other,
    })
}

/// Writes figures separated by blank lines, using the shortest decimal form
/// that round-trips each coordinate.
pub fn write_landmark_csv(figures: &[LandmarkSet]) -> String {
    let mut out = String::new();
    for (i, figure) in figures.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let m = figure.coords();
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                if c > 0 {
                    out.push(',');
                }
                write!(out, "{}", m[(r, c)]).unwrap();
            }
            out.push('\n');
        }
    }
    out
}
