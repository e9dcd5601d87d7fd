//! Numerical convex-roof upper bound for rank-2 three-qubit states.
//!
//! Every length-`m` decomposition of `rho = l1 |e1><e1| + l2 |e2><e2|` is
//! generated by an `m x 2` isometry `V`: member `j` is the unnormalized
//! vector `V[j][0] sqrt(l1) |e1> + V[j][1] sqrt(l2) |e2>`. The average
//! member tangle is minimized over `V` with a simplex search from many
//! seeded starting points. Whatever is found is an upper bound on the roof.

mod nelder_mead;
mod verify;

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::decomposition::{Decomposition, DensityMatrix, Member};
use crate::error::{Result, TangleError};
use crate::family::{check_probability, FamilyParams};
use crate::state::{tangle_form, PureState3Q};

pub use nelder_mead::{minimize, NelderMeadOptions, NelderMeadResult};
pub use verify::{verify_family, RoofReport, VerifyFlag, VerifyOptions};

const EIGEN_SUM_TOLERANCE: f64 = 1e-12;
const ORTHOGONALITY_TOLERANCE: f64 = 1e-10;
const ISOMETRY_TOLERANCE: f64 = 1e-10;
/// Members with squared norm below this are dropped.
const MIN_MEMBER_NORM_SQR: f64 = 1e-14;

pub const MAX_DECOMPOSITION_SIZE: usize = 8;
pub const DEFAULT_SIZES: [usize; 3] = [3, 4, 5];
pub const DEFAULT_RESTARTS: usize = 32;
pub const DEFAULT_SEED: u64 = 20240;

/// A density operator of rank at most two, in eigen-form.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTwoState {
    eigenvalues: [f64; 2],
    eigenvectors: [PureState3Q; 2],
}

impl RankTwoState {
    pub fn new(eigenvalues: [f64; 2], eigenvectors: [PureState3Q; 2]) -> Result<Self> {
        let [l1, l2] = eigenvalues;
        if !(l1 >= 0.0 && l2 >= 0.0) {
            return Err(TangleError::InvalidRankTwo(format!(
                "negative eigenvalue in ({l1}, {l2})"
            )));
        }
        if (l1 + l2 - 1.0).abs() > EIGEN_SUM_TOLERANCE {
            return Err(TangleError::InvalidRankTwo(format!(
                "eigenvalues sum to {}",
                l1 + l2
            )));
        }
        let overlap = eigenvectors[0].inner(&eigenvectors[1]).norm();
        if overlap > ORTHOGONALITY_TOLERANCE {
            return Err(TangleError::InvalidRankTwo(format!(
                "eigenvectors overlap by {overlap:e}"
            )));
        }
        Ok(Self {
            eigenvalues,
            eigenvectors,
        })
    }

    /// `rho(p) = p |gGHZ><gGHZ| + (1-p) |gW><gW|`.
    pub fn family(fam: &FamilyParams, p: f64) -> Result<Self> {
        check_probability(p)?;
        Self::new([p, 1.0 - p], [fam.ghz_state(), fam.w_state()])
    }

    /// The state `(I + r . sigma) / 2` on the span of two orthonormal
    /// states, with `e1` at the north pole of the Bloch ball. Requires
    /// `|r| <= 1`.
    pub fn from_bloch(e1: PureState3Q, e2: PureState3Q, r: [f64; 3]) -> Result<Self> {
        let len = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(len <= 1.0) {
            return Err(TangleError::InvalidRankTwo(format!("Bloch vector length {len}")));
        }
        if len == 0.0 {
            return Self::new([0.5, 0.5], [e1, e2]);
        }
        let theta = (r[2] / len).clamp(-1.0, 1.0).acos();
        let phi = r[1].atan2(r[0]);
        let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
        let phase = Complex64::from_polar(1.0, phi);
        let combine = |x: Complex64, y: Complex64| {
            let amps: [Complex64; 8] = std::array::from_fn(|i| {
                x * e1.amplitudes()[i] + y * e2.amplitudes()[i]
            });
            PureState3Q::normalize(amps)
        };
        let up = combine(Complex64::new(c, 0.0), phase * s)?;
        let down = combine(Complex64::new(s, 0.0), -phase * c)?;
        Self::new([0.5 * (1.0 + len), 0.5 * (1.0 - len)], [up, down])
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[PureState3Q; 2] {
        &self.eigenvectors
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        DensityMatrix::mixture(
            self.eigenvalues
                .iter()
                .copied()
                .zip(self.eigenvectors.iter()),
        )
    }
}

/// An `m x 2` complex matrix with orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingMatrix {
    rows: Vec<[Complex64; 2]>,
}

impl MixingMatrix {
    pub fn new(rows: Vec<[Complex64; 2]>) -> Result<Self> {
        let m = rows.len();
        if !(2..=MAX_DECOMPOSITION_SIZE).contains(&m) {
            return Err(TangleError::NotIsometry(f64::NAN));
        }
        let deviation = gram_deviation(&rows);
        if !(deviation <= ISOMETRY_TOLERANCE) {
            return Err(TangleError::NotIsometry(deviation));
        }
        Ok(Self { rows })
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            rows: vec![[one, zero], [zero, one]],
        }
    }

    /// Gram-Schmidt orthonormalization of the columns of an arbitrary
    /// `m x 2` matrix given as `4m` reals (row-major, `re, im` per entry).
    /// `None` if the columns are numerically dependent.
    pub fn from_raw(params: &[f64]) -> Option<Self> {
        debug_assert_eq!(params.len() % 4, 0);
        let m = params.len() / 4;
        let mut rows: Vec<[Complex64; 2]> = params
            .chunks_exact(4)
            .map(|c| [Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3])])
            .collect();

        let n0 = rows.iter().map(|r| r[0].norm_sqr()).sum::<f64>().sqrt();
        if !(n0 > 1e-12) {
            return None;
        }
        for r in &mut rows {
            r[0] /= n0;
        }
        let proj: Complex64 = rows.iter().map(|r| r[0].conj() * r[1]).sum();
        for r in &mut rows {
            r[1] -= proj * r[0];
        }
        let n1 = rows.iter().map(|r| r[1].norm_sqr()).sum::<f64>().sqrt();
        if !(n1 > 1e-12) || m < 2 {
            return None;
        }
        for r in &mut rows {
            r[1] /= n1;
        }
        Some(Self { rows })
    }

    /// Orthonormalized complex Gaussian matrix.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        loop {
            let raw = random_raw(m, rng);
            if let Some(v) = Self::from_raw(&raw) {
                return v;
            }
        }
    }

    pub fn rows(&self) -> &[[Complex64; 2]] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

fn random_raw<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    (0..4 * m).map(|_| rng.sample(StandardNormal)).collect()
}

/// Largest entry of `|V^dagger V - I|`.
fn gram_deviation(rows: &[[Complex64; 2]]) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            let mut g: Complex64 = rows.iter().map(|r| r[a].conj() * r[b]).sum();
            if a == b {
                g -= 1.0;
            }
            worst = worst.max(g.norm());
        }
    }
    worst
}

fn member_vector(rho: &RankTwoState, row: &[Complex64; 2]) -> [Complex64; 8] {
    let [l1, l2] = rho.eigenvalues;
    let x = row[0] * l1.sqrt();
    let y = row[1] * l2.sqrt();
    let [e1, e2] = &rho.eigenvectors;
    std::array::from_fn(|i| x * e1.amplitudes()[i] + y * e2.amplitudes()[i])
}

/// The decomposition generated by a mixing matrix. Members whose squared
/// norm is below `1e-14` are dropped.
pub fn decomposition_from_mixing(rho: &RankTwoState, v: &MixingMatrix) -> Result<Decomposition> {
    let deviation = gram_deviation(&v.rows);
    if !(deviation <= ISOMETRY_TOLERANCE) {
        return Err(TangleError::NotIsometry(deviation));
    }
    let members = v
        .rows
        .iter()
        .filter_map(|row| {
            let vec = member_vector(rho, row);
            let weight: f64 = vec.iter().map(|z| z.norm_sqr()).sum();
            (weight >= MIN_MEMBER_NORM_SQR).then(|| Member {
                weight,
                state: PureState3Q::normalize(vec).expect("nonzero member"),
            })
        })
        .collect();
    Decomposition::new(members)
}

/// The tangle form restricted to the span of the eigenvectors:
/// `D(x e1 + y e2) = sum_k c_k x^{4-k} y^k`.
#[derive(Debug, Clone, Copy)]
struct SpanQuartic {
    coeffs: [Complex64; 5],
}

impl SpanQuartic {
    fn new(e1: &PureState3Q, e2: &PureState3Q) -> Self {
        // Sample D(e1 + t e2) at the fifth roots of unity and invert the
        // discrete Fourier transform.
        let samples: [Complex64; 5] = std::array::from_fn(|j| {
            let t = Complex64::from_polar(1.0, TAU * j as f64 / 5.0);
            let v: [Complex64; 8] =
                std::array::from_fn(|i| e1.amplitudes()[i] + t * e2.amplitudes()[i]);
            tangle_form(&v)
        });
        let coeffs = std::array::from_fn(|k| {
            samples
                .iter()
                .enumerate()
                .map(|(j, s)| s * Complex64::from_polar(1.0, -TAU * (j * k) as f64 / 5.0))
                .sum::<Complex64>()
                / 5.0
        });
        Self { coeffs }
    }

    fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let [c0, c1, c2, c3, c4] = self.coeffs;
        let x2 = x * x;
        let y2 = y * y;
        c0 * x2 * x2 + c1 * x2 * x * y + c2 * x2 * y2 + c3 * x * y2 * y + c4 * y2 * y2
    }
}

/// Average member tangle of the decomposition generated by `v`, computed on
/// the two-dimensional span without building the members.
fn average_tangle_fast(quartic: &SpanQuartic, sqrt_l: [f64; 2], v: &MixingMatrix) -> f64 {
    v.rows
        .iter()
        .map(|row| {
            let x = row[0] * sqrt_l[0];
            let y = row[1] * sqrt_l[1];
            let w = x.norm_sqr() + y.norm_sqr();
            if w < MIN_MEMBER_NORM_SQR {
                0.0
            } else {
                // tau is homogeneous of degree 4, weight is degree 2.
                4.0 * quartic.eval(x, y).norm() / w
            }
        })
        .sum()
}

/// Search settings for `roof_upper_bound`.
#[derive(Debug, Clone)]
pub struct OracleOptions {
    /// Decomposition lengths to try, each in `2..=8`.
    pub sizes: Vec<usize>,
    pub restarts: usize,
    pub seed: u64,
    pub local: NelderMeadOptions,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            sizes: DEFAULT_SIZES.to_vec(),
            restarts: DEFAULT_RESTARTS,
            seed: DEFAULT_SEED,
            local: NelderMeadOptions::default(),
        }
    }
}

/// Best decomposition found by `roof_upper_bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Average member tangle of `decomposition`.
    pub value: f64,
    pub decomposition: Decomposition,
    /// Length and restart index of the winning run.
    pub size: usize,
    pub restart: usize,
    pub evaluations: usize,
}

/// Seed of restart `restart` at decomposition length `size`. Independent of
/// the other entries of the search configuration.
pub fn sub_seed(seed: u64, size: usize, restart: usize) -> u64 {
    let mut z = seed
        ^ (size as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (restart as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct RunOutcome {
    value: f64,
    mixing: MixingMatrix,
    evals: usize,
}

fn single_run(rho: &RankTwoState, quartic: &SpanQuartic, size: usize, seed: u64, local: &NelderMeadOptions) -> RunOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sqrt_l = rho.eigenvalues.map(f64::sqrt);
    let start = loop {
        let raw = random_raw(size, &mut rng);
        if MixingMatrix::from_raw(&raw).is_some() {
            break raw;
        }
    };
    let objective = |x: &[f64]| match MixingMatrix::from_raw(x) {
        Some(v) => average_tangle_fast(quartic, sqrt_l, &v),
        None => f64::INFINITY,
    };
    let result = minimize(objective, &start, local);
    let mixing = MixingMatrix::from_raw(&result.x)
        .or_else(|| MixingMatrix::from_raw(&start))
        .expect("start point is a valid isometry");
    RunOutcome {
        value: result.value,
        mixing,
        evals: result.evals,
    }
}

/// Numerical upper bound on the three-tangle convex roof of a rank-2 state.
///
/// Runs `restarts` independent local searches for every size in
/// `opts.sizes`. Restarts execute in parallel; the result does not depend
/// on scheduling because every run has its own seed from `sub_seed` and ties
/// are broken by `(size, restart)` order.
pub fn roof_upper_bound(rho: &RankTwoState, opts: &OracleOptions) -> Result<OracleResult> {
    if opts.restarts == 0 {
        return Err(TangleError::InvalidDecomposition("restarts must be at least 1".into()));
    }
    if let Some(&m) = opts
        .sizes
        .iter()
        .find(|&&m| !(2..=MAX_DECOMPOSITION_SIZE).contains(&m))
    {
        return Err(TangleError::InvalidDecomposition(format!(
            "decomposition size {m} outside 2..=8"
        )));
    }
    if opts.sizes.is_empty() {
        return Err(TangleError::InvalidDecomposition("no decomposition sizes".into()));
    }

    let quartic = SpanQuartic::new(&rho.eigenvectors[0], &rho.eigenvectors[1]);
    let mut sizes = opts.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let tasks: Vec<(usize, usize)> = sizes
        .iter()
        .flat_map(|&m| (0..opts.restarts).map(move |r| (m, r)))
        .collect();

    let outcomes: Vec<RunOutcome> = tasks
        .par_iter()
        .map(|&(m, r)| single_run(rho, &quartic, m, sub_seed(opts.seed, m, r), &opts.local))
        .collect();

    let evaluations = outcomes.iter().map(|o| o.evals).sum();
    let (best_idx, _) = outcomes
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .expect("at least one run");
    let (size, restart) = tasks[best_idx];
    let decomposition = decomposition_from_mixing(rho, &outcomes[best_idx].mixing)?;
    Ok(OracleResult {
        value: decomposition.average_tangle(),
        decomposition,
        size,
        restart,
        evaluations,
    })
}

/// Local minima of `phi -> tau(p, phi)` on a uniform grid over `[0, 2pi)`.
///
/// Neighbouring values closer than `1e-14` count as equal, so a flat
/// profile returns every grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiScan {
    pub phis: Vec<f64>,
    pub values: Vec<f64>,
    pub minima: Vec<f64>,
    pub min_value: f64,
}

const PLATEAU_TOLERANCE: f64 = 1e-14;

pub fn phi_scan(fam: &FamilyParams, p: f64, grid: usize) -> Result<PhiScan> {
    if grid < 12 {
        return Err(TangleError::InvalidDecomposition(format!(
            "phi grid of {grid} points; at least 12 required"
        )));
    }
    let phis: Vec<f64> = (0..grid).map(|k| TAU * k as f64 / grid as f64).collect();
    let values = phis
        .iter()
        .map(|&phi| fam.char_tangle(p, phi))
        .collect::<Result<Vec<_>>>()?;
    let minima = (0..grid)
        .filter(|&k| {
            let v = values[k];
            let prev = values[(k + grid - 1) % grid];
            let next = values[(k + 1) % grid];
            v <= prev + PLATEAU_TOLERANCE && v <= next + PLATEAU_TOLERANCE
        })
        .map(|k| phis[k])
        .collect();
    let min_value = values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(PhiScan {
        phis,
        values,
        minima,
        min_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roof::{family_density, roof_value, thresholds};
    use crate::state::three_tangle;

    #[test]
    fn identity_mixing_is_eigen_decomposition() {
        let fam = FamilyParams::symmetric();
        let rho = RankTwoState::family(&fam, 0.4).unwrap();
        let d = decomposition_from_mixing(&rho, &MixingMatrix::identity()).unwrap();
        assert_eq!(d.len(), 2);
        assert!((d.members()[0].weight - 0.4).abs() < 1e-15);
        assert!((d.members()[0].state.inner(&fam.ghz_state()).re - 1.0).abs() < 1e-15);
        assert!((d.members()[1].state.inner(&fam.w_state()).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn triangle_mixing_gives_delta_members() {
        let fam = FamilyParams::symmetric();
        let p = 0.7;
        let rho = RankTwoState::family(&fam, p).unwrap();
        let s3 = 3.0_f64.sqrt().recip();
        let rows = FamilyParams::minimizing_phases()
            .map(|phi| [Complex64::new(s3, 0.0), -Complex64::from_polar(s3, phi)])
            .to_vec();
        let v = MixingMatrix::new(rows).unwrap();
        let d = decomposition_from_mixing(&rho, &v).unwrap();
        for (m, phi) in d.members().iter().zip(FamilyParams::minimizing_phases()) {
            assert!((m.weight - 1.0 / 3.0).abs() < 1e-15);
            let target = fam.superposition_state(p, phi).unwrap();
            assert!((m.state.inner(&target).norm() - 1.0).abs() < 1e-14);
        }
        assert!(d.residual(&family_density(&fam, p).unwrap()) < 1e-14);
    }

    #[test]
    fn random_mixing_weights_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rho = RankTwoState::from_bloch(
            PureState3Q::basis(0, 0, 0),
            PureState3Q::basis(1, 1, 1),
            [0.2, -0.3, 0.4],
        )
        .unwrap();
        for m in 2..=8 {
            let v = MixingMatrix::random(m, &mut rng);
            let d = decomposition_from_mixing(&rho, &v).unwrap();
            assert!((d.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(d.residual(&rho.density_matrix()) < 1e-10);
        }
    }

    #[test]
    fn non_isometry_rejected() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert!(MixingMatrix::new(vec![[one, zero], [one, one]]).is_err());
        assert!(MixingMatrix::new(vec![[one, zero]]).is_err());
    }

    #[test]
    fn rank_two_validation() {
        let e = PureState3Q::basis(0, 0, 0);
        assert!(RankTwoState::new([0.5, 0.5], [e, e]).is_err());
        assert!(RankTwoState::new([0.7, 0.7], [e, PureState3Q::basis(0, 0, 1)]).is_err());
        assert!(RankTwoState::new([1.2, -0.2], [e, PureState3Q::basis(0, 0, 1)]).is_err());
    }

    #[test]
    fn bloch_state_density() {
        let e1 = PureState3Q::basis(0, 0, 0);
        let e2 = PureState3Q::basis(0, 1, 1);
        let r = [0.3, 0.4, -0.5];
        let rho = RankTwoState::from_bloch(e1, e2, r).unwrap();
        let m = rho.density_matrix();
        assert!((m[(0, 0)].re - 0.5 * (1.0 + r[2])).abs() < 1e-15);
        assert!((m[(3, 3)].re - 0.5 * (1.0 - r[2])).abs() < 1e-15);
        // <e1|rho|e2> = (r_x - i r_y) / 2
        assert!((m[(0, 3)] - Complex64::new(0.15, -0.2)).norm() < 1e-15);
    }

    #[test]
    fn span_quartic_matches_direct_tangle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let fam = FamilyParams::new(0.8, 0.6, 0.48, 0.6, 0.64).unwrap();
        let rho = RankTwoState::family(&fam, 0.55).unwrap();
        let q = SpanQuartic::new(&rho.eigenvectors[0], &rho.eigenvectors[1]);
        let sqrt_l = rho.eigenvalues.map(f64::sqrt);
        for m in [2, 3, 6] {
            let v = MixingMatrix::random(m, &mut rng);
            let fast = average_tangle_fast(&q, sqrt_l, &v);
            let slow = decomposition_from_mixing(&rho, &v).unwrap().average_tangle();
            assert!((fast - slow).abs() < 1e-13, "{fast} vs {slow}");
        }
    }

    fn quick() -> OracleOptions {
        OracleOptions {
            restarts: 8,
            ..Default::default()
        }
    }

    #[test]
    fn pure_state_bound_is_its_tangle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let e1 = PureState3Q::random(&mut rng);
        let e2 = PureState3Q::basis(0, 0, 0);
        let rho = RankTwoState::from_bloch(
            e1,
            {
                // Orthogonalize e2 against e1.
                let ov = e1.inner(&e2);
                let amps = std::array::from_fn(|i| e2.amplitudes()[i] - ov * e1.amplitudes()[i]);
                PureState3Q::normalize(amps).unwrap()
            },
            [0.0, 0.0, 1.0],
        )
        .unwrap();
        let res = roof_upper_bound(&rho, &quick()).unwrap();
        assert!((res.value - three_tangle(&e1)).abs() < 1e-12);
    }

    #[test]
    fn zero_region_bound_vanishes() {
        let fam = FamilyParams::symmetric();
        let rho = RankTwoState::family(&fam, 0.55).unwrap();
        let res = roof_upper_bound(&rho, &OracleOptions::default()).unwrap();
        assert!(res.value <= 1e-6, "{}", res.value);
    }

    #[test]
    fn zero_s_bound_is_quadratic() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let fam = FamilyParams::new(0.6, 0.8, 0.0, h, h).unwrap();
        let rho = RankTwoState::family(&fam, 0.7).unwrap();
        let res = roof_upper_bound(&rho, &quick()).unwrap();
        assert!((res.value - 0.49 * fam.tau_ghz()).abs() < 1e-3);
    }

    #[test]
    fn bound_reconstructs_state() {
        let fam = FamilyParams::symmetric();
        let p = 0.85;
        let rho = RankTwoState::family(&fam, p).unwrap();
        let res = roof_upper_bound(&rho, &quick()).unwrap();
        assert!(res.decomposition.residual(&rho.density_matrix()) < 1e-10);
        assert_eq!(res.value, res.decomposition.average_tangle());
        assert!(res.value >= roof_value(&fam, p).unwrap() - 1e-6);
        assert!(res.value <= roof_value(&fam, p).unwrap() + 1e-3);
        assert!(p > thresholds(&fam).p1);
    }

    #[test]
    fn rejects_bad_options() {
        let rho = RankTwoState::family(&FamilyParams::symmetric(), 0.5).unwrap();
        let bad = OracleOptions {
            restarts: 0,
            ..Default::default()
        };
        assert!(roof_upper_bound(&rho, &bad).is_err());
        let bad = OracleOptions {
            sizes: vec![9],
            ..Default::default()
        };
        assert!(roof_upper_bound(&rho, &bad).is_err());
    }

    #[test]
    fn phi_scan_symmetric_minima() {
        let fam = FamilyParams::symmetric();
        let grid = 720;
        let scan = phi_scan(&fam, 0.8, grid).unwrap();
        assert_eq!(scan.minima.len(), 3);
        let step = TAU / grid as f64;
        for (found, expected) in scan.minima.iter().zip(FamilyParams::minimizing_phases()) {
            assert!((found - expected).abs() <= step);
        }
        assert!(phi_scan(&fam, 0.8, 6).is_err());
    }

    #[test]
    fn phi_scan_flat_profiles() {
        let t = 3.0_f64.sqrt().recip();
        let a0 = FamilyParams::new(0.0, 1.0, t, t, t).unwrap();
        let scan = phi_scan(&a0, 0.4, 360).unwrap();
        assert!(scan.values.iter().all(|v| (v - scan.min_value).abs() <= 1e-12));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s0 = FamilyParams::new(h, h, 0.0, h, h).unwrap();
        let scan = phi_scan(&s0, 0.4, 360).unwrap();
        assert_eq!(scan.minima.len(), 360);
    }
}
