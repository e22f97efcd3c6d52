//! Default tolerances shared by the crate.

/// Scalar identities (norm multiplicativity, unit norms).
pub const SCALAR: f64 = 1e-12;
/// Algebra assembled from O(n³) floating point operations.
pub const ALGEBRA: f64 = 1e-9;
/// Entry threshold of the Bruhat pivot search, relative to `‖G‖_F`.
pub const BRUHAT_PIVOT: f64 = 1e-10;
/// Pivot threshold of Gauss–Jordan inversion, relative to `‖G‖_F`.
pub const INVERSE_PIVOT: f64 = 1e-12;
/// Symplecticity check for inputs of `Ad_g`.
pub const AD_SYMPLECTIC: f64 = 1e-8;
/// Membership check for the `RU` argument of the dressing action.
pub const RU_MEMBERSHIP: f64 = 1e-10;
/// Coefficients below this are dropped from multivectors.
pub const PRUNE: f64 = 1e-14;
/// "Equals zero" for multivector coefficients.
pub const MULTIVECTOR_ZERO: f64 = 1e-12;
/// Chart denominators below this are treated as the chart boundary.
pub const CHART: f64 = 1e-10;
/// Singular value cutoff of [`crate::hp1geom`] ranks, relative to the largest.
pub const RANK: f64 = 1e-9;
/// Singular value cutoff of finite-difference leaf ranks, relative to the largest.
pub const FD_RANK: f64 = 1e-7;
/// Term cutoff of the truncated exponential series.
pub const EXP_TERM: f64 = 1e-13;
