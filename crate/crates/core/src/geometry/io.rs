//! Curve CSV files.
//!
//! ```text
//! # closed=true
//! x,y
//! 1.0000000000000000e0,0.0000000000000000e0
//! ...
//! ```
//!
//! Comment lines start with `#`; one of them must be `# closed=true` or
//! `# closed=false` and it must come before the `x,y` header. Writers emit
//! 17 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use super::DiscreteCurve;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// 17 significant digits, round-trips every `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_csv_string<T: Scalar>(curve: &DiscreteCurve<T>) -> String {
    let mut out = String::with_capacity(curve.len() * 48 + 32);
    let _ = writeln!(out, "# closed={}", curve.is_closed());
    out.push_str("x,y\n");
    for p in curve.nodes() {
        let _ = writeln!(out, "{},{}", fmt_f64(p.x.as_f64()), fmt_f64(p.y.as_f64()));
    }
    out
}

pub fn parse_csv<T: Scalar>(text: &str) -> Result<DiscreteCurve<T>> {
    let bad = |line: usize, msg: &str| Error::MalformedCsv { line, msg: msg.to_string() };
    let mut closed = None;
    let mut header = false;
    let mut nodes = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("closed=") {
                if header {
                    return Err(bad(line_no, "closed flag must precede the header"));
                }
                closed = Some(match v.trim() {
                    "true" => true,
                    "false" => false,
                    _ => return Err(bad(line_no, "closed flag must be true or false")),
                });
            }
            continue;
        }
        if !header {
            if closed.is_none() {
                return Err(bad(line_no, "missing `# closed=` comment"));
            }
            if line.replace(' ', "") != "x,y" {
                return Err(bad(line_no, "expected header `x,y`"));
            }
            header = true;
            continue;
        }
        let mut parts = line.split(',');
        let (Some(xs), Some(ys), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(line_no, "expected two comma-separated values"));
        };
        let parse = |s: &str| {
            s.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| bad(line_no, "not a finite number"))
        };
        nodes.push(Vec2::new(T::of(parse(xs)?), T::of(parse(ys)?)));
    }
    let closed = closed.ok_or_else(|| bad(0, "missing `# closed=` comment"))?;
    if !header {
        return Err(bad(0, "missing header `x,y`"));
    }
    Ok(DiscreteCurve::new(nodes, closed))
}

pub fn write_csv<T: Scalar>(curve: &DiscreteCurve<T>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_csv_string(curve))?;
    Ok(())
}

pub fn read_csv<T: Scalar>(path: impl AsRef<Path>) -> Result<DiscreteCurve<T>> {
    parse_csv(&std::fs::read_to_string(path)?)
}
