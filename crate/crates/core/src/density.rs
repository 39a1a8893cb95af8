//! Validated quantum states.

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, Subsystem};
use crate::tol;

/// A `d × d` Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::shape("density matrix must be square"));
        }
        if !matrix.is_hermitian(tol::HERM) {
            return Err(Error::domain("density matrix must be Hermitian"));
        }
        let tr = matrix.trace();
        if (tr - 1.0).norm() > tol::TRACE {
            return Err(Error::domain(format!("density matrix trace is {tr}, expected 1")));
        }
        let min = linalg::min_eigenvalue(&matrix)?;
        if min < -tol::PSD {
            return Err(Error::domain(format!("density matrix has negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix without validation, for intermediate values and
    /// boundary studies outside the physical region.
    pub fn new_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    /// Maximally mixed state `𝟙/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(d).scale(1.0 / d as f64) }
    }

    /// Projector onto a normalized ket.
    pub fn pure(ket: &[num_complex::Complex64]) -> Result<Self> {
        let n = linalg::vec_norm(ket);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::domain("ket must be non-zero"));
        }
        let v: Vec<_> = ket.iter().map(|z| z / n).collect();
        Ok(Self { matrix: ComplexMatrix::outer(&v, &v) })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        linalg::min_eigenvalue(&self.matrix)
    }

    /// Whether the wrapped matrix satisfies every density-matrix invariant.
    pub fn is_valid(&self) -> bool {
        Self::new(self.matrix.clone()).is_ok()
    }
}

/// A state on `ℂ^d ⊗ ℂ^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteState {
    local_dim: usize,
    rho: DensityMatrix,
}

impl BipartiteState {
    pub fn new(local_dim: usize, rho: DensityMatrix) -> Result<Self> {
        if local_dim == 0 || rho.dim() != local_dim * local_dim {
            return Err(Error::shape(format!(
                "a {}-dimensional state has no {local_dim}x{local_dim} structure",
                rho.dim()
            )));
        }
        Ok(Self { local_dim, rho })
    }

    /// Validates the matrix as a density matrix with `d ⊗ d` structure.
    pub fn from_matrix(local_dim: usize, matrix: ComplexMatrix) -> Result<Self> {
        Self::new(local_dim, DensityMatrix::new(matrix)?)
    }

    pub fn from_matrix_unchecked(local_dim: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), local_dim * local_dim);
        Self { local_dim, rho: DensityMatrix::new_unchecked(matrix) }
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::shape("product state factors must have equal dimension"));
        }
        Ok(Self {
            local_dim: a.dim(),
            rho: DensityMatrix::new_unchecked(linalg::tensor(a.matrix(), b.matrix())),
        })
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.rho.matrix()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.rho.into_matrix()
    }
}

/// Partial transpose of a bipartite state on the chosen subsystem.
pub fn partial_transpose(rho: &BipartiteState, subsystem: Subsystem) -> Result<ComplexMatrix> {
    linalg::partial_transpose_matrix(rho.matrix(), rho.local_dim, rho.local_dim, subsystem)
}

/// Reduced state after tracing out `subsystem`.
pub fn partial_trace(rho: &BipartiteState, subsystem: Subsystem) -> Result<DensityMatrix> {
    linalg::partial_trace_matrix(rho.matrix(), rho.local_dim, rho.local_dim, subsystem)
        .map(DensityMatrix::new_unchecked)
}
