use serde::Serialize;

use super::{phi_scan, roof_upper_bound, OracleOptions, RankTwoState};
use crate::error::Result;
use crate::family::FamilyParams;
use crate::roof::{roof_value, thresholds, RoofRegion};

/// Outcome of comparing the oracle with the closed form at one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerifyFlag {
    #[serde(rename = "OK")]
    Ok,
    /// Oracle found a decomposition below the closed form by more than the
    /// tolerance, contradicting optimality.
    #[serde(rename = "FALSIFIED")]
    Falsified,
    /// Oracle stayed above the closed form by more than the tolerance.
    #[serde(rename = "LOOSE")]
    Loose,
}

impl VerifyFlag {
    pub fn label(self) -> &'static str {
        match self {
            VerifyFlag::Ok => "OK",
            VerifyFlag::Falsified => "FALSIFIED",
            VerifyFlag::Loose => "LOOSE",
        }
    }
}

/// One grid point of a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct RoofReport {
    pub p: f64,
    pub region: RoofRegion,
    pub analytic: f64,
    pub oracle: f64,
    /// Minimum of `tau(p, phi)` over the phase grid.
    pub char_min: f64,
    /// `oracle - analytic`.
    pub gap: f64,
    /// Frobenius residual of the oracle decomposition against `rho(p)`.
    pub reconstruction_residual: f64,
    /// Length of the winning oracle decomposition.
    pub oracle_size: usize,
    pub flag: VerifyFlag,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Number of uniformly spaced `p` values on `[0, 1]`, endpoints included.
    pub p_grid: usize,
    pub phi_grid: usize,
    pub tol_gap: f64,
    pub oracle: OracleOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            p_grid: 21,
            phi_grid: 720,
            tol_gap: 1e-3,
            oracle: OracleOptions::default(),
        }
    }
}

/// Compares the closed-form roof with the numerical upper bound on a grid.
pub fn verify_family(fam: &FamilyParams, opts: &VerifyOptions) -> Result<Vec<RoofReport>> {
    let th = thresholds(fam);
    let n = opts.p_grid.max(2);
    (0..n)
        .map(|i| {
            let p = i as f64 / (n - 1) as f64;
            let rho = RankTwoState::family(fam, p)?;
            let analytic = roof_value(fam, p)?;
            let oracle = roof_upper_bound(&rho, &opts.oracle)?;
            let reconstruction_residual = oracle
                .decomposition
                .residual(&rho.density_matrix());
            let char_min = phi_scan(fam, p, opts.phi_grid)?.min_value;
            let gap = oracle.value - analytic;
            let flag = if gap < -opts.tol_gap {
                VerifyFlag::Falsified
            } else if gap > opts.tol_gap {
                VerifyFlag::Loose
            } else {
                VerifyFlag::Ok
            };
            Ok(RoofReport {
                p,
                region: th.region(p),
                analytic,
                oracle: oracle.value,
                char_min,
                gap,
                reconstruction_residual,
                oracle_size: oracle.size,
                flag,
            })
        })
        .collect()
}
