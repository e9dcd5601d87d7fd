//! Exact convex-roof three-tangle for rank-2 mixtures of a generalized GHZ
//! state `a|000> + b|111>` and a generalized W state
//! `c|001> + d|010> + f|100>`, together with a numerical convex-roof
//! optimizer used to cross-check the closed form.

pub mod bisect;
pub mod curve;
pub mod decomposition;
pub mod error;
pub mod family;
pub mod oracle;
pub mod roof;
pub mod state;

pub use decomposition::{Decomposition, DensityMatrix, Member};
pub use error::{Result, TangleError};
pub use family::{FamilyKind, FamilyParams};
pub use roof::{
    family_density, inflection_point, optimal_decomposition, p_one, p_one_unconstrained, p_zero,
    roof_value, solve_coefficients, t_curve, t_second, t_third, OptimalDecomposition, RoofRegion,
    Thresholds,
};
pub use state::{apply_local_unitary, three_tangle, LocalUnitary, PureState3Q};
