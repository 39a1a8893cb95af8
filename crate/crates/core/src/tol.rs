//! Numerical tolerances shared across the crate.

/// Absolute slack for algebraic identities on matrices of dimension ≤ 16.
pub const NUM: f64 = 1e-12;

/// Hermiticity tolerance, max-entry norm of `M - M†`.
pub const HERM: f64 = 1e-10;

/// Unit-trace tolerance for density matrices.
pub const TRACE: f64 = 1e-10;

/// Eigenvalue slack for positivity verdicts.
pub const PSD: f64 = 1e-9;

/// Margin separating witness verdicts from eigensolver noise.
pub const WITNESS: f64 = 1e-9;

/// Relative reconstruction tolerance of the Hermitian eigensolver.
pub const EIG: f64 = 1e-10;
