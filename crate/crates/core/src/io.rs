//! Plain-text point sets.
//!
//! ```text
//! # comment
//! n d
//! x_11 ... x_1d
//! ...
//! ```
//!
//! Blank lines and lines starting with `#` are skipped anywhere.

use std::fmt::Write as _;
use std::io::Read;

use crate::error::{DepthError, Result};
use crate::instance::PointSet;

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(DepthError::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(DepthError::Parse {
            line: hline,
            msg: format!("header must be \"n d\", got {header:?}"),
        });
    }
    let n = parse_count(head[0], hline)?;
    let d = parse_count(head[1], hline)?;
    if d == 0 {
        return Err(DepthError::ZeroDimension);
    }

    let mut points = Vec::with_capacity(n);
    for (line, l) in lines {
        if points.len() == n {
            return Err(DepthError::Parse {
                line,
                msg: format!("more than {n} points"),
            });
        }
        let coords = parse_coords(l.split_whitespace(), line)?;
        if coords.len() != d {
            return Err(DepthError::DimensionMismatch {
                index: points.len(),
                got: coords.len(),
                expected: d,
            });
        }
        points.push(coords);
    }
    if points.len() != n {
        return Err(DepthError::Parse {
            line: 0,
            msg: format!("expected {n} points, found {}", points.len()),
        });
    }
    PointSet::new(d, points)
}

pub fn read_point_set(mut reader: impl Read) -> Result<PointSet> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_point_set(&text)
}

/// Serialize with shortest round-trip float formatting.
pub fn format_point_set(points: &PointSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", points.len(), points.dim());
    for q in points.points() {
        let row: Vec<String> = q.iter().map(|v| format!("{v}")).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Parse `"c1,c2,..."` (whitespace around entries allowed).
pub fn parse_point(s: &str) -> Result<Vec<f64>> {
    let coords = parse_coords(s.split(',').map(str::trim), 0)?;
    if coords.is_empty() {
        return Err(DepthError::ZeroDimension);
    }
    Ok(coords)
}

fn parse_count(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| DepthError::Parse {
        line,
        msg: format!("not a count: {tok:?}"),
    })
}

fn parse_coords<'a>(toks: impl Iterator<Item = &'a str>, line: usize) -> Result<Vec<f64>> {
    toks.map(|t| match t.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(DepthError::Parse {
            line,
            msg: format!("not a finite number: {t:?}"),
        }),
    })
    .collect()
}
