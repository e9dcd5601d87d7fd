//! Closed-form convex roof of the three-tangle for
//! `rho(p) = p |gGHZ><gGHZ| + (1-p) |gW><gW|`.
//!
//! The roof has three branches separated by the thresholds `p0 <= p1`:
//!
//! * `p <= p0`: zero. `rho(p)` lies in the simplex spanned by `|gW>` and
//!   the three zero-tangle superpositions `|p0, k 2pi/3>`.
//! * `p0 <= p <= p1`: the characteristic curve `tau(p, 0)`, realized by
//!   the three superpositions `|p, k 2pi/3>`.
//! * `p1 <= p`: the straight line from `(p1, t(p1))` to `(1, tau_ghz)`,
//!   realized by mixing `|gGHZ>` into the decomposition at `p1`.
//!
//! Degenerate families (`a = 0`, `b = 0` or `cdf = 0`) are dispatched before
//! the generic formulas, using exact zero tests on the stored coefficients.

use std::f64::consts::SQRT_2;

use crate::bisect::bisect;
use crate::decomposition::{Decomposition, DensityMatrix};
use crate::error::{Result, TangleError};
use crate::family::{check_probability, FamilyKind, FamilyParams};
use crate::state::PureState3Q;

/// `2 sqrt 2`: above this `s` the characteristic-curve branch is empty.
pub const S_CRITICAL: f64 = 2.0 * SQRT_2;

const INFLECTION_TOLERANCE: f64 = 1e-12;

fn check_s(s: f64) -> Result<()> {
    if s.is_finite() && s >= 0.0 {
        Ok(())
    } else {
        Err(TangleError::InvalidS(s))
    }
}

/// Start of the nonzero part of the roof: `s^{2/3} / (1 + s^{2/3})`.
pub fn p_zero(s: f64) -> Result<f64> {
    check_s(s)?;
    let s23 = s.cbrt().powi(2);
    Ok(s23 / (1.0 + s23))
}

/// Tangent point of the line through `(1, tau_ghz)` ignoring the
/// constraint `p1 >= p0`: `1/2 + 1 / (2 sqrt(1 + s^2))`.
pub fn p_one_unconstrained(s: f64) -> Result<f64> {
    check_s(s)?;
    Ok(0.5 + 0.5 / (1.0 + s * s).sqrt())
}

/// Start of the linear branch: `max(p0, 1/2 + 1/(2 sqrt(1 + s^2)))`.
///
/// For `s >= 2 sqrt 2` the unconstrained tangent point lies at or below
/// `p0` and the result is exactly `p_zero(s)`.
pub fn p_one(s: f64) -> Result<f64> {
    let p0 = p_zero(s)?;
    if s >= S_CRITICAL {
        return Ok(p0);
    }
    Ok(p0.max(p_one_unconstrained(s)?))
}

/// Which branch of the roof a mixing weight falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoofRegion {
    ZeroSimplex,
    CharacteristicCurve,
    ConvexifiedLeaf,
}

impl RoofRegion {
    /// Short label used in CSV and JSON output.
    pub fn label(self) -> &'static str {
        match self {
            RoofRegion::ZeroSimplex => "ZERO",
            RoofRegion::CharacteristicCurve => "CHAR",
            RoofRegion::ConvexifiedLeaf => "CONVEXIFIED",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "ZERO" => Some(RoofRegion::ZeroSimplex),
            "CHAR" => Some(RoofRegion::CharacteristicCurve),
            "CONVEXIFIED" => Some(RoofRegion::ConvexifiedLeaf),
            _ => None,
        }
    }
}

/// Branch boundaries `0 <= p0 <= p1 <= 1` of a family's roof.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub p0: f64,
    pub p1: f64,
}

impl Thresholds {
    /// Closed intervals `[0, p0]`, `(p0, p1]`, `(p1, 1]`.
    pub fn region(&self, p: f64) -> RoofRegion {
        if p <= self.p0 {
            RoofRegion::ZeroSimplex
        } else if p <= self.p1 {
            RoofRegion::CharacteristicCurve
        } else {
            RoofRegion::ConvexifiedLeaf
        }
    }
}

/// Thresholds for any family. A product GHZ part (`a b = 0`) behaves like
/// `s -> infinity`: the zero region covers all of `[0, 1]`.
pub fn thresholds(fam: &FamilyParams) -> Thresholds {
    match fam.s() {
        None => Thresholds { p0: 1.0, p1: 1.0 },
        Some(s) => Thresholds {
            p0: p_zero(s).expect("s from valid family"),
            p1: p_one(s).expect("s from valid family"),
        },
    }
}

pub fn region(fam: &FamilyParams, p: f64) -> Result<RoofRegion> {
    check_probability(p)?;
    Ok(thresholds(fam).region(p))
}

fn generic_s(fam: &FamilyParams) -> Result<f64> {
    fam.s().ok_or(TangleError::DegenerateFamily)
}

/// `tau_ghz * s = 16 b cdf`, finite for every family.
fn tau_times_s(fam: &FamilyParams) -> f64 {
    16.0 * fam.b() * fam.cdf()
}

/// Signed characteristic curve `t(p) = tau_ghz (p^2 - sqrt(p (1-p)^3) s)`.
///
/// Negative for `0 < p < p0`, where `tau(p, 0) = |t(p)|`. Evaluated as
/// `tau_ghz p^2 - 16 b cdf sqrt(p (1-p)^3)` so that it stays defined when
/// `a b = 0`.
pub fn t_curve(fam: &FamilyParams, p: f64) -> Result<f64> {
    check_probability(p)?;
    let q = 1.0 - p;
    Ok(fam.tau_ghz() * p * p - tau_times_s(fam) * (p * q * q * q).sqrt())
}

fn check_open_interval(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else if p == 0.0 || p == 1.0 {
        Err(TangleError::SingularEndpoint(p))
    } else {
        Err(TangleError::ProbabilityOutOfRange(p))
    }
}

fn t_second_unchecked(tau: f64, tau_s: f64, p: f64) -> f64 {
    2.0 * tau - tau_s * (8.0 * p * p - 4.0 * p - 1.0) / (4.0 * p * (p * (1.0 - p)).sqrt())
}

/// `t''(p) = tau_ghz (2 - s (8p^2 - 4p - 1) / (4p sqrt(p (1-p))))` on the
/// open interval `(0, 1)`.
pub fn t_second(fam: &FamilyParams, p: f64) -> Result<f64> {
    check_open_interval(p)?;
    Ok(t_second_unchecked(fam.tau_ghz(), tau_times_s(fam), p))
}

/// `t'''(p) = -3 tau_ghz s / (8 p^2 sqrt(p (1-p)^3))`, never positive.
pub fn t_third(fam: &FamilyParams, p: f64) -> Result<f64> {
    check_open_interval(p)?;
    let q = 1.0 - p;
    Ok(-3.0 * tau_times_s(fam) / (8.0 * p * p * (p * q * q * q).sqrt()))
}

/// The unique zero of `t''` in `(0, 1)`: `t` is convex below it and
/// concave above it. Requires `s > 0`.
pub fn inflection_point(fam: &FamilyParams) -> Result<f64> {
    let s = generic_s(fam)?;
    if s == 0.0 {
        return Err(TangleError::NoInflection);
    }
    let (tau, tau_s) = (fam.tau_ghz(), tau_times_s(fam));
    let f = |p: f64| t_second_unchecked(tau, tau_s, p);
    let lo = 1e-9;
    // For tiny s the zero sits closer to 1 than 1e-9; walk the upper end
    // towards 1 until t'' turns negative.
    let mut gap = 1e-9;
    while f(1.0 - gap) > 0.0 {
        gap *= 1e-2;
        if gap < f64::EPSILON {
            return Err(TangleError::NoInflection);
        }
    }
    bisect(f, lo, 1.0 - gap, INFLECTION_TOLERANCE).ok_or(TangleError::NoInflection)
}

/// Average tangle of `alpha |gGHZ> + (1-alpha) rho_Delta(p1)`:
/// `(p - p1)/(1 - p1) tau_ghz + (1 - p)/(1 - p1) tau(p1, 0)`.
pub fn convexified_value(fam: &FamilyParams, p: f64, p1: f64) -> Result<f64> {
    check_probability(p)?;
    check_probability(p1)?;
    if p1 == 1.0 {
        return fam.char_tangle(1.0, 0.0);
    }
    let span = 1.0 - p1;
    Ok((p - p1) / span * fam.tau_ghz() + (1.0 - p) / span * fam.char_tangle(p1, 0.0)?)
}

/// Exact three-tangle of `rho(p)`.
pub fn roof_value(fam: &FamilyParams, p: f64) -> Result<f64> {
    check_probability(p)?;
    match fam.kind() {
        FamilyKind::GhzIsZeroZeroZero | FamilyKind::GhzIsOneOneOne => Ok(0.0),
        FamilyKind::ZeroS => Ok(fam.tau_ghz() * p * p),
        FamilyKind::Generic => {
            let th = thresholds(fam);
            match th.region(p) {
                RoofRegion::ZeroSimplex => Ok(0.0),
                RoofRegion::CharacteristicCurve => fam.char_tangle(p, 0.0),
                RoofRegion::ConvexifiedLeaf => convexified_value(fam, p, th.p1),
            }
        }
    }
}

/// `rho(p)` as a dense matrix.
pub fn family_density(fam: &FamilyParams, p: f64) -> Result<DensityMatrix> {
    check_probability(p)?;
    let mut rho = DensityMatrix::zeros();
    rho.add_projector(p, fam.ghz_state().amplitudes());
    rho.add_projector(1.0 - p, fam.w_state().amplitudes());
    Ok(rho)
}

/// An optimal decomposition together with the branch it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalDecomposition {
    pub region: RoofRegion,
    /// Set for families with a vanishing coefficient.
    pub degenerate: bool,
    pub decomposition: Decomposition,
}

/// The three equal-weight members of `rho_Delta(p)`, each scaled by
/// `total`.
fn delta_members(fam: &FamilyParams, p: f64, total: f64) -> Result<Vec<(f64, PureState3Q)>> {
    FamilyParams::minimizing_phases()
        .iter()
        .map(|&phi| Ok((total / 3.0, fam.superposition_state(p, phi)?)))
        .collect()
}

/// Optimal decomposition of `rho(p)` for a family with all coefficients
/// nonzero.
pub fn generic_optimal_decomposition(fam: &FamilyParams, p: f64) -> Result<OptimalDecomposition> {
    check_probability(p)?;
    if fam.kind() != FamilyKind::Generic {
        return Err(TangleError::DegenerateFamily);
    }
    let th = thresholds(fam);
    let region = th.region(p);
    let decomposition = match region {
        RoofRegion::ZeroSimplex => {
            if p == 0.0 {
                Decomposition::from_pairs([(1.0, fam.w_state())])?
            } else {
                let corners = p / th.p0;
                let pairs: Vec<_> = delta_members(fam, th.p0, corners)?
                    .into_iter()
                    .chain([((th.p0 - p) / th.p0, fam.w_state())])
                    .collect();
                Decomposition::from_pairs(pairs)?
            }
        }
        RoofRegion::CharacteristicCurve => Decomposition::from_pairs(delta_members(fam, p, 1.0)?)?,
        RoofRegion::ConvexifiedLeaf => {
            let alpha = (p - th.p1) / (1.0 - th.p1);
            let pairs: Vec<_> = delta_members(fam, th.p1, 1.0 - alpha)?
                .into_iter()
                .chain([(alpha, fam.ghz_state())])
                .collect();
            Decomposition::from_pairs(pairs)?
        }
    };
    Ok(OptimalDecomposition {
        region,
        degenerate: false,
        decomposition,
    })
}

/// Optimal decomposition of `rho(p)` for any family.
///
/// Product GHZ parts give the eigen-decomposition (every member has zero
/// tangle). For `s = 0` every superposition has tangle `tau_ghz p^2`, so
/// `rho_Delta(p)` is optimal.
pub fn optimal_decomposition(fam: &FamilyParams, p: f64) -> Result<OptimalDecomposition> {
    check_probability(p)?;
    match fam.kind() {
        FamilyKind::Generic => generic_optimal_decomposition(fam, p),
        FamilyKind::GhzIsZeroZeroZero | FamilyKind::GhzIsOneOneOne => Ok(OptimalDecomposition {
            region: RoofRegion::ZeroSimplex,
            degenerate: true,
            decomposition: Decomposition::from_pairs([
                (p, fam.ghz_state()),
                (1.0 - p, fam.w_state()),
            ])?,
        }),
        FamilyKind::ZeroS => {
            let region = thresholds(fam).region(p);
            let decomposition = if p == 0.0 {
                Decomposition::from_pairs([(1.0, fam.w_state())])?
            } else if p == 1.0 {
                Decomposition::from_pairs([(1.0, fam.ghz_state())])?
            } else {
                Decomposition::from_pairs(delta_members(fam, p, 1.0)?)?
            };
            Ok(OptimalDecomposition {
                region,
                degenerate: true,
                decomposition,
            })
        }
    }
}

/// A representative family with the given `s` and `tau_ghz`.
///
/// Picks `a^2 >= 1/2` and `c = d`, then solves `c d f = s a^2 b / 4` for
/// `f <= 1/sqrt 3` by bisection. The roof depends on the family only through
/// `(s, tau_ghz)`.
pub fn solve_coefficients(s: f64, tau_ghz: f64) -> Result<FamilyParams> {
    check_s(s)?;
    if !(tau_ghz > 0.0 && tau_ghz <= 1.0) {
        return Err(TangleError::InvalidTauGhz(tau_ghz));
    }
    let root = (1.0 - tau_ghz).sqrt();
    let a = (0.5 * (1.0 + root)).sqrt();
    let b = (0.5 * (1.0 - root)).sqrt();
    let required = s * a * a * b / 4.0;

    // With c = d the product is (f - f^3)/2, increasing on [0, 1/sqrt 3]
    // up to 3^{-3/2}, the maximum of cdf on the unit sphere.
    let f_max = 3.0_f64.sqrt().recip();
    let cdf_max = 3.0_f64.powf(-1.5);
    let f = if required > cdf_max * (1.0 + 1e-12) {
        return Err(TangleError::Infeasible {
            s,
            tau_ghz,
            required,
        });
    } else if required >= cdf_max {
        f_max
    } else {
        bisect(|f| 0.5 * (f - f * f * f) - required, 0.0, f_max, 0.0)
            .expect("bracketed: g(0) = 0 <= required < g(f_max)")
    };
    let c = (0.5 * (1.0 - f * f)).sqrt();

    // Renormalize away the last bits so the family validates.
    let ghz_norm = (a * a + b * b).sqrt();
    let w_norm = (2.0 * c * c + f * f).sqrt();
    FamilyParams::new(
        a / ghz_norm,
        b / ghz_norm,
        c / w_norm,
        c / w_norm,
        f / w_norm,
    )
}
