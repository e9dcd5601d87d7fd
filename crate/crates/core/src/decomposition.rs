//! Pure-state decompositions of mixed states and the dense density matrices
//! used to check them.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Result, TangleError};
use crate::state::{three_tangle, PureState3Q};

const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// Dense 8x8 density operator, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    data: [Complex64; 64],
}

impl DensityMatrix {
    pub fn zeros() -> Self {
        Self {
            data: [Complex64::new(0.0, 0.0); 64],
        }
    }

    /// `|psi><psi|`.
    pub fn pure(state: &PureState3Q) -> Self {
        let mut m = Self::zeros();
        m.add_projector(1.0, state.amplitudes());
        m
    }

    /// Adds `weight |v><v|` for a (not necessarily normalized) vector.
    pub fn add_projector(&mut self, weight: f64, v: &[Complex64; 8]) {
        for r in 0..8 {
            let vr = v[r] * weight;
            for c in 0..8 {
                self.data[8 * r + c] += vr * v[c].conj();
            }
        }
    }

    /// `sum_j w_j |psi_j><psi_j|`.
    pub fn mixture<'a, I>(members: I) -> Self
    where
        I: IntoIterator<Item = (f64, &'a PureState3Q)>,
    {
        let mut m = Self::zeros();
        for (w, s) in members {
            m.add_projector(w, s.amplitudes());
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..8).map(|i| self.data[9 * i]).sum()
    }

    /// Frobenius norm of `self - other`.
    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn as_slice(&self) -> &[Complex64; 64] {
        &self.data
    }
}

impl Index<(usize, usize)> for DensityMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[8 * r + c]
    }
}

impl IndexMut<(usize, usize)> for DensityMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[8 * r + c]
    }
}

/// One member of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Member {
    pub weight: f64,
    pub state: PureState3Q,
}

/// A weighted ensemble of normalized pure states whose weights sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    members: Vec<Member>,
}

impl Decomposition {
    pub fn new(members: Vec<Member>) -> Result<Self> {
        if members.is_empty() {
            return Err(TangleError::InvalidDecomposition("no members".into()));
        }
        if let Some(m) = members
            .iter()
            .find(|m| !(0.0..=1.0 + WEIGHT_SUM_TOLERANCE).contains(&m.weight))
        {
            return Err(TangleError::InvalidDecomposition(format!(
                "weight {} outside [0, 1]",
                m.weight
            )));
        }
        let total: f64 = members.iter().map(|m| m.weight).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(TangleError::InvalidDecomposition(format!(
                "weights sum to {total}"
            )));
        }
        Ok(Self { members })
    }

    /// Builds from `(weight, state)` pairs, dropping members of zero weight.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, PureState3Q)>,
    {
        Self::new(
            pairs
                .into_iter()
                .filter(|(w, _)| *w != 0.0)
                .map(|(weight, state)| Member { weight, state })
                .collect(),
        )
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.weight).collect()
    }

    pub fn member_tangles(&self) -> Vec<f64> {
        self.members.iter().map(|m| three_tangle(&m.state)).collect()
    }

    /// `sum_j w_j tau_3(psi_j)`.
    pub fn average_tangle(&self) -> f64 {
        self.members
            .iter()
            .map(|m| m.weight * three_tangle(&m.state))
            .sum()
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        DensityMatrix::mixture(self.members.iter().map(|m| (m.weight, &m.state)))
    }

    /// Frobenius distance between the reconstructed mixture and `target`.
    pub fn residual(&self, target: &DensityMatrix) -> f64 {
        self.density_matrix().frobenius_distance(target)
    }
}
