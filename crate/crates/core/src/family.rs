//! The generalized GHZ / generalized W family and its one-parameter
//! superpositions.
//!
//! Coefficients are restricted to nonnegative reals. Complex phases on the
//! coefficients only shift the relative phase `phi` of the superposition, so
//! nothing is lost by the restriction.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Result, TangleError};
use crate::state::{basis_index, PureState3Q};

const COEFF_TOLERANCE: f64 = 1e-12;

/// Coefficients of `a|000> + b|111>` and `c|001> + d|010> + f|100>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    f: f64,
}

/// Which formula applies to a family. Decided by exact zero tests on the
/// stored coefficients; near-zero coefficients are generic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// All five coefficients nonzero.
    Generic,
    /// `b = 0`: the GHZ part is `|000>`.
    GhzIsZeroZeroZero,
    /// `a = 0`: the GHZ part is `|111>`.
    GhzIsOneOneOne,
    /// `cdf = 0` with `a b > 0`, so `s = 0`.
    ZeroS,
}

impl FamilyParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64, f: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d), ("f", f)] {
            if !v.is_finite() || v < 0.0 {
                return Err(TangleError::InvalidFamily(format!(
                    "{name} = {v} must be a nonnegative finite number"
                )));
            }
        }
        let ghz_norm = a * a + b * b;
        if (ghz_norm - 1.0).abs() > COEFF_TOLERANCE {
            return Err(TangleError::InvalidFamily(format!(
                "a^2 + b^2 = {ghz_norm} differs from 1"
            )));
        }
        let w_norm = c * c + d * d + f * f;
        if (w_norm - 1.0).abs() > COEFF_TOLERANCE {
            return Err(TangleError::InvalidFamily(format!(
                "c^2 + d^2 + f^2 = {w_norm} differs from 1"
            )));
        }
        Ok(Self { a, b, c, d, f })
    }

    /// `a = b = 1/sqrt 2`, `c = d = f = 1/sqrt 3`.
    pub fn symmetric() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let t = 3.0_f64.sqrt().recip();
        Self {
            a: h,
            b: h,
            c: t,
            d: t,
            f: t,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn kind(&self) -> FamilyKind {
        if self.b == 0.0 {
            FamilyKind::GhzIsZeroZeroZero
        } else if self.a == 0.0 {
            FamilyKind::GhzIsOneOneOne
        } else if self.cdf() == 0.0 {
            FamilyKind::ZeroS
        } else {
            FamilyKind::Generic
        }
    }

    pub fn cdf(&self) -> f64 {
        self.c * self.d * self.f
    }

    /// `s = 4cdf / (a^2 b)`; `None` when `a b = 0` (the GHZ part is a
    /// product state and `s` diverges).
    pub fn s(&self) -> Option<f64> {
        if self.a == 0.0 || self.b == 0.0 {
            None
        } else {
            Some(4.0 * self.cdf() / (self.a * self.a * self.b))
        }
    }

    /// Three-tangle of the GHZ part, `4 a^2 b^2`.
    pub fn tau_ghz(&self) -> f64 {
        4.0 * self.a * self.a * self.b * self.b
    }

    pub fn ghz_state(&self) -> PureState3Q {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        amps[basis_index(0, 0, 0)] = Complex64::new(self.a, 0.0);
        amps[basis_index(1, 1, 1)] = Complex64::new(self.b, 0.0);
        PureState3Q::new(amps).expect("validated coefficients")
    }

    pub fn w_state(&self) -> PureState3Q {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        amps[basis_index(0, 0, 1)] = Complex64::new(self.c, 0.0);
        amps[basis_index(0, 1, 0)] = Complex64::new(self.d, 0.0);
        amps[basis_index(1, 0, 0)] = Complex64::new(self.f, 0.0);
        PureState3Q::new(amps).expect("validated coefficients")
    }

    /// `sqrt(p)|gGHZ> - sqrt(1-p) e^{i phi}|gW>`.
    pub fn superposition_state(&self, p: f64, phi: f64) -> Result<PureState3Q> {
        check_probability(p)?;
        let ghz = Complex64::new(p.sqrt(), 0.0);
        let w = -Complex64::from_polar((1.0 - p).sqrt(), phi);
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        amps[basis_index(0, 0, 0)] = ghz * self.a;
        amps[basis_index(1, 1, 1)] = ghz * self.b;
        amps[basis_index(0, 0, 1)] = w * self.c;
        amps[basis_index(0, 1, 0)] = w * self.d;
        amps[basis_index(1, 0, 0)] = w * self.f;
        PureState3Q::new(amps)
    }

    /// Closed-form three-tangle of `superposition_state(p, phi)`:
    /// `4 |p^2 a^2 b^2 - 4 sqrt(p (1-p)^3) e^{3 i phi} b c d f|`.
    pub fn char_tangle(&self, p: f64, phi: f64) -> Result<f64> {
        check_probability(p)?;
        let ghz_term = Complex64::new(p * p * self.a * self.a * self.b * self.b, 0.0);
        let q = 1.0 - p;
        let amplitude = 4.0 * (p * q * q * q).sqrt() * self.b * self.cdf();
        let w_term = Complex64::from_polar(amplitude, 3.0 * phi);
        Ok(4.0 * (ghz_term - w_term).norm())
    }

    /// The three phases `k 2pi/3` at which the superposition tangle is
    /// minimal for fixed `p`.
    pub fn minimizing_phases() -> [f64; 3] {
        [0.0, TAU / 3.0, 2.0 * TAU / 3.0]
    }
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(TangleError::ProbabilityOutOfRange(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::three_tangle;

    #[test]
    fn rejects_bad_coefficients() {
        assert!(FamilyParams::new(1.0, 0.1, 1.0, 0.0, 0.0).is_err());
        assert!(FamilyParams::new(1.0, 0.0, 0.5, 0.5, 0.5).is_err());
        assert!(FamilyParams::new(-1.0, 0.0, 1.0, 0.0, 0.0).is_err());
        assert!(FamilyParams::new(f64::NAN, 0.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn kinds() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let t = 3.0_f64.sqrt().recip();
        assert_eq!(FamilyParams::symmetric().kind(), FamilyKind::Generic);
        assert_eq!(
            FamilyParams::new(1.0, 0.0, t, t, t).unwrap().kind(),
            FamilyKind::GhzIsZeroZeroZero
        );
        assert_eq!(
            FamilyParams::new(0.0, 1.0, t, t, t).unwrap().kind(),
            FamilyKind::GhzIsOneOneOne
        );
        assert_eq!(
            FamilyParams::new(h, h, 0.0, h, h).unwrap().kind(),
            FamilyKind::ZeroS
        );
        assert_eq!(FamilyParams::new(0.0, 1.0, t, t, t).unwrap().s(), None);
    }

    #[test]
    fn symmetric_s() {
        let s = FamilyParams::symmetric().s().unwrap();
        let expected = 2.0_f64.powf(3.5) / 3.0_f64.powf(1.5);
        assert!((s - expected).abs() < 1e-14);
    }

    #[test]
    fn superposition_endpoints() {
        let fam = FamilyParams::symmetric();
        assert_eq!(fam.superposition_state(1.0, 0.7).unwrap(), fam.ghz_state());
        let w = fam.superposition_state(0.0, 0.0).unwrap();
        let overlap = w.inner(&fam.w_state());
        assert!((overlap + 1.0).norm() < 1e-15);
        assert_eq!(three_tangle(&w), 0.0);
        assert!(fam.superposition_state(1.5, 0.0).is_err());
        assert!(fam.char_tangle(-0.1, 0.0).is_err());
    }

    #[test]
    fn char_tangle_at_unit_p_is_ghz_tangle() {
        let fam = FamilyParams::new(0.8, 0.6, 0.48, 0.6, 0.64).unwrap();
        assert!((fam.char_tangle(1.0, 1.3).unwrap() - fam.tau_ghz()).abs() < 1e-15);
    }

    #[test]
    fn half_mixture_matches_explicit_state() {
        let fam = FamilyParams::symmetric();
        let psi = fam.superposition_state(0.5, 0.0).unwrap();
        assert!((three_tangle(&psi) - fam.char_tangle(0.5, 0.0).unwrap()).abs() < 1e-12);
    }
}
