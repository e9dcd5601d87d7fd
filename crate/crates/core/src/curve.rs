//! Sampled roof curves and their CSV form.
//!
//! CSV layout: header `p,region,tau_roof,tau_char_min,t_signed`, one row per
//! grid point, floats in shortest round-trip notation.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::error::{Result, TangleError};
use crate::family::FamilyParams;
use crate::oracle::phi_scan;
use crate::roof::{roof_value, t_curve, thresholds, RoofRegion};

pub const CSV_HEADER: &str = "p,region,tau_roof,tau_char_min,t_signed";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub p: f64,
    pub region: RoofRegion,
    /// Exact mixed-state tangle of `rho(p)`.
    pub tau_roof: f64,
    /// Minimum of the superposition tangle over the phase grid.
    pub tau_char_min: f64,
    /// Signed characteristic curve `t(p)`.
    pub t_signed: f64,
}

/// Roof, characteristic minimum and `t(p)` at `grid` uniform points of
/// `[0, 1]`.
pub fn roof_curve(fam: &FamilyParams, grid: usize, phi_grid: usize) -> Result<Vec<CurveRow>> {
    if grid < 2 {
        return Err(TangleError::InvalidDecomposition(format!(
            "curve grid of {grid} points; at least 2 required"
        )));
    }
    let th = thresholds(fam);
    (0..grid)
        .map(|i| {
            let p = i as f64 / (grid - 1) as f64;
            Ok(CurveRow {
                p,
                region: th.region(p),
                tau_roof: roof_value(fam, p)?,
                tau_char_min: phi_scan(fam, p, phi_grid)?.min_value,
                t_signed: t_curve(fam, p)?,
            })
        })
        .collect()
}

pub fn write_csv<W: Write>(mut out: W, rows: &[CurveRow]) -> io::Result<()> {
    let mut buf = String::with_capacity(64 * (rows.len() + 1));
    buf.push_str(CSV_HEADER);
    buf.push('\n');
    for r in rows {
        // `{:?}` on f64 is the shortest string that parses back exactly.
        let _ = writeln!(
            buf,
            "{:?},{},{:?},{:?},{:?}",
            r.p,
            r.region.label(),
            r.tau_roof,
            r.tau_char_min,
            r.t_signed
        );
    }
    out.write_all(buf.as_bytes())
}

pub fn parse_csv(text: &str) -> std::result::Result<Vec<CurveRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(format!("line {}: expected 5 fields", i + 2));
            }
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("line {}: {e}", i + 2))
            };
            Ok(CurveRow {
                p: num(fields[0])?,
                region: RoofRegion::from_label(fields[1].trim())
                    .ok_or_else(|| format!("line {}: unknown region {}", i + 2, fields[1]))?,
                tau_roof: num(fields[2])?,
                tau_char_min: num(fields[3])?,
                t_signed: num(fields[4])?,
            })
        })
        .collect()
}
