//! Three-qubit pure states, the polynomial three-tangle and local unitary
//! action.
//!
//! Amplitudes are stored in computational-basis order: the index of
//! `|jkl>` is `4j + 2k + l`, so qubit A is the most significant bit.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TangleError};

/// Deviations of the squared norm from 1 up to this size are silently
/// renormalized; anything larger is rejected.
pub const NORM_TOLERANCE: f64 = 1e-9;

const UNITARY_TOLERANCE: f64 = 1e-12;

/// Basis index of `|jkl>`.
#[inline]
pub const fn basis_index(j: usize, k: usize, l: usize) -> usize {
    (j << 2) | (k << 1) | l
}

/// A normalized three-qubit pure state.
#[derive(Clone, Copy, PartialEq)]
pub struct PureState3Q {
    amps: [Complex64; 8],
}

impl fmt::Debug for PureState3Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.amps.iter()).finish()
    }
}

impl PureState3Q {
    /// Builds a state from its eight amplitudes.
    ///
    /// A squared norm within `NORM_TOLERANCE` of 1 is renormalized; larger
    /// deviations are an error.
    pub fn new(amps: [Complex64; 8]) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(TangleError::NonFinite);
        }
        let norm_sqr = squared_norm(&amps);
        let deviation = (norm_sqr - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(TangleError::NotNormalized { deviation });
        }
        Ok(Self::scaled(amps, norm_sqr))
    }

    /// Builds a state from an arbitrary nonzero vector, dividing by its norm.
    pub fn normalize(amps: [Complex64; 8]) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(TangleError::NonFinite);
        }
        let norm_sqr = squared_norm(&amps);
        if norm_sqr == 0.0 {
            return Err(TangleError::NotNormalized { deviation: 1.0 });
        }
        Ok(Self::scaled(amps, norm_sqr))
    }

    pub fn from_slice(amps: &[Complex64]) -> Result<Self> {
        let arr: [Complex64; 8] = amps
            .try_into()
            .map_err(|_| TangleError::WrongAmplitudeCount(amps.len()))?;
        Self::new(arr)
    }

    fn scaled(mut amps: [Complex64; 8], norm_sqr: f64) -> Self {
        if norm_sqr != 1.0 {
            let inv = norm_sqr.sqrt().recip();
            for z in &mut amps {
                *z *= inv;
            }
        }
        Self { amps }
    }

    /// The product basis state `|jkl>`.
    pub fn basis(j: usize, k: usize, l: usize) -> Self {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        amps[basis_index(j & 1, k & 1, l & 1)] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    /// A random state with independent Gaussian amplitudes, normalized
    /// (uniform on the unit sphere of C^8).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let amps: [Complex64; 8] = std::array::from_fn(|_| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            });
            if let Ok(s) = Self::normalize(amps) {
                return s;
            }
        }
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amps
    }

    /// `<jkl|psi>`.
    pub fn amplitude(&self, j: usize, k: usize, l: usize) -> Complex64 {
        self.amps[basis_index(j, k, l)]
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Multiplies every amplitude by `e^{i theta}`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let phase = Complex64::from_polar(1.0, theta);
        Self {
            amps: self.amps.map(|z| z * phase),
        }
    }

    /// Reorders the tensor factors: qubit `i` of the result is qubit
    /// `perm[i]` of `self`. `perm` must be a permutation of `{0, 1, 2}`.
    pub fn permute_qubits(&self, perm: [usize; 3]) -> Self {
        let mut sorted = perm;
        sorted.sort_unstable();
        assert_eq!(sorted, [0, 1, 2], "not a permutation of the three qubits");
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        for (idx, out) in amps.iter_mut().enumerate() {
            let bits = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
            let mut src = [0usize; 3];
            for i in 0..3 {
                src[perm[i]] = bits[i];
            }
            *out = self.amps[basis_index(src[0], src[1], src[2])];
        }
        Self { amps }
    }

    /// Parses the JSON state format: an array of 8 `{"re": x, "im": y}`
    /// objects in basis order `000, 001, ..., 111`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<JsonAmplitude> =
            serde_json::from_str(text).map_err(|e| TangleError::Json(e.to_string()))?;
        let amps: Vec<Complex64> = raw.into_iter().map(Complex64::from).collect();
        Self::from_slice(&amps)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_amplitudes()).expect("amplitudes serialize")
    }

    pub fn to_json_amplitudes(&self) -> Vec<JsonAmplitude> {
        self.amps.iter().copied().map(JsonAmplitude::from).collect()
    }
}

fn squared_norm(amps: &[Complex64; 8]) -> f64 {
    amps.iter().map(|z| z.norm_sqr()).sum()
}

/// One amplitude in the JSON state format.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonAmplitude {
    pub re: f64,
    pub im: f64,
}

impl From<JsonAmplitude> for Complex64 {
    fn from(a: JsonAmplitude) -> Self {
        Complex64::new(a.re, a.im)
    }
}

impl From<Complex64> for JsonAmplitude {
    fn from(z: Complex64) -> Self {
        JsonAmplitude { re: z.re, im: z.im }
    }
}

/// The quartic form `d1 - 2 d2 + 4 d3` whose modulus (times 4) is the
/// three-tangle. Works on unnormalized vectors; homogeneous of degree 4.
pub fn tangle_form(psi: &[Complex64; 8]) -> Complex64 {
    let p = |j, k, l| psi[basis_index(j, k, l)];
    let (p000, p001, p010, p011) = (p(0, 0, 0), p(0, 0, 1), p(0, 1, 0), p(0, 1, 1));
    let (p100, p101, p110, p111) = (p(1, 0, 0), p(1, 0, 1), p(1, 1, 0), p(1, 1, 1));

    let d1 = p000 * p000 * p111 * p111
        + p001 * p001 * p110 * p110
        + p010 * p010 * p101 * p101
        + p100 * p100 * p011 * p011;

    let ghz = p000 * p111;
    let a = p011 * p100;
    let b = p101 * p010;
    let c = p110 * p001;
    let d2 = ghz * a + ghz * b + ghz * c + a * b + a * c + b * c;

    let d3 = p000 * p110 * p101 * p011 + p111 * p001 * p010 * p100;

    d1 - 2.0 * d2 + 4.0 * d3
}

/// Three-tangle `4 |d1 - 2 d2 + 4 d3|` of a pure state.
pub fn three_tangle(state: &PureState3Q) -> f64 {
    (4.0 * tangle_form(&state.amps).norm()).max(0.0)
}

pub type Matrix2 = [[Complex64; 2]; 2];

/// A product `U_A (x) U_B (x) U_C` of single-qubit unitaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalUnitary {
    factors: [Matrix2; 3],
}

impl LocalUnitary {
    pub fn new(u_a: Matrix2, u_b: Matrix2, u_c: Matrix2) -> Result<Self> {
        for (u, name) in [(&u_a, 'A'), (&u_b, 'B'), (&u_c, 'C')] {
            let deviation = unitarity_deviation(u);
            if !(deviation <= UNITARY_TOLERANCE) {
                return Err(TangleError::NotUnitary {
                    factor: name,
                    deviation,
                });
            }
        }
        Ok(Self {
            factors: [u_a, u_b, u_c],
        })
    }

    pub fn identity() -> Self {
        let id = identity2();
        Self {
            factors: [id, id, id],
        }
    }

    /// The same single-qubit unitary on every qubit.
    pub fn uniform(u: Matrix2) -> Result<Self> {
        Self::new(u, u, u)
    }

    /// Haar-random factors.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            factors: std::array::from_fn(|_| random_unitary2(rng)),
        }
    }

    pub fn factors(&self) -> &[Matrix2; 3] {
        &self.factors
    }
}

fn identity2() -> Matrix2 {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    [[one, zero], [zero, one]]
}

/// Largest entry of `|U^dagger U - I|`.
fn unitarity_deviation(u: &Matrix2) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                acc += u[k][r].conj() * u[k][c];
            }
            if r == c {
                acc -= 1.0;
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

fn random_unitary2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    loop {
        let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-6 {
            continue;
        }
        let a = Complex64::new(g[0] / n, g[1] / n);
        let b = Complex64::new(g[2] / n, g[3] / n);
        let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        return [[a, -b.conj() * phase], [b, a.conj() * phase]];
    }
}

/// Applies `U_A (x) U_B (x) U_C` to a state.
pub fn apply_local_unitary(state: &PureState3Q, u: &LocalUnitary) -> Result<PureState3Q> {
    let [ua, ub, uc] = &u.factors;
    let mut out = [Complex64::new(0.0, 0.0); 8];
    for (idx, amp) in state.amps.iter().enumerate() {
        if *amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let (j, k, l) = ((idx >> 2) & 1, (idx >> 1) & 1, idx & 1);
        for jj in 0..2 {
            let fa = ua[jj][j] * amp;
            for kk in 0..2 {
                let fab = ub[kk][k] * fa;
                for ll in 0..2 {
                    out[basis_index(jj, kk, ll)] += uc[ll][l] * fab;
                }
            }
        }
    }
    PureState3Q::new(out)
}
