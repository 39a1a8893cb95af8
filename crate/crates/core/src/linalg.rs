//! Dense complex matrices and the Hilbert–Schmidt geometry on them.
//!
//! [`ComplexMatrix`] stores entries row-major. Bipartite helpers assume the
//! composite index `i = d_B * i_A + i_B`, i.e. subsystem A is the major index.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// The two halves of a bipartite system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

/// A dense `rows × cols` complex matrix.
///
/// Serializes through [`MatrixJson`].
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::shape("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::domain("matrix entries must be finite"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Square real matrix from nested rows.
    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(N, N, |i, j| C64::new(rows[i][j], 0.0))
    }

    /// Square complex matrix from nested rows.
    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Self {
        Self::from_fn(N, N, |i, j| rows[i][j])
    }

    /// Diagonal matrix with the given real entries.
    pub fn diag(entries: &[f64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { C64::new(entries[i], 0.0) } else { C64::zero() })
    }

    /// The standard matrix `|j⟩⟨k|` of size `n × n` (0-based indices).
    pub fn unit(n: usize, j: usize, k: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(j, k)] = C64::new(1.0, 0.0);
        m
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: impl Into<C64>) -> Self {
        let s = s.into();
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// Matrix product, failing on incompatible shapes.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::zero() {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨v|M|v⟩`.
    pub fn expectation(&self, v: &[C64]) -> C64 {
        self.apply(v).iter().zip(v).map(|(mv, vi)| vi.conj() * mv).sum()
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol))
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = 0.5 * (self[(i, j)] + self[(j, i)].conj());
            }
        }
        out
    }

    fn assert_same_shape(&self, other: &Self) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }
}

/// Interchange form `{ "dim": d, "re": [[...]], "im": [[...]] }`, row-major.
/// Only square matrices are accepted on input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        let part = |f: fn(&C64) -> f64| (0..m.rows).map(|i| (0..m.cols).map(|j| f(&m[(i, j)])).collect()).collect();
        MatrixJson { dim: m.rows, re: part(|z| z.re), im: part(|z| z.im) }
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        (&m).into()
    }
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        let d = j.dim;
        let square = |rows: &[Vec<f64>]| rows.len() == d && rows.iter().all(|r| r.len() == d);
        if !square(&j.re) || !square(&j.im) {
            return Err(Error::shape(format!("matrix JSON must hold {d}x{d} arrays for re and im")));
        }
        let data = j.re.iter().flatten().zip(j.im.iter().flatten()).map(|(&re, &im)| C64::new(re, im)).collect();
        ComplexMatrix::new(d, d, data)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        self.assert_same_shape(rhs);
        self.data.iter_mut().zip(&rhs.data).for_each(|(a, b)| *a += b);
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        self.assert_same_shape(rhs);
        self.data.iter_mut().zip(&rhs.data).for_each(|(a, b)| *a -= b);
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale(-1.0)
    }
}

fn require_same_square(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if !a.is_square() || !b.is_square() || a.rows != b.rows {
        return Err(Error::shape(format!(
            "expected square matrices of equal size, got {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(())
}

/// Hilbert–Schmidt inner product `Tr(a† b)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    require_same_square(a, b)?;
    Ok(a.data.iter().zip(&b.data).map(|(x, y)| x.conj() * y).sum())
}

/// Hilbert–Schmidt norm `√Tr(a† a)`.
pub fn hs_norm(a: &ComplexMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::shape("Hilbert-Schmidt norm needs a square matrix"));
    }
    Ok(a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
}

/// `Tr(a b)` computed without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    if a.cols != b.rows || a.rows != b.cols {
        return Err(Error::shape("trace of product needs transposed shapes"));
    }
    let mut acc = C64::zero();
    for i in 0..a.rows {
        for k in 0..a.cols {
            acc += a.data[i * a.cols + k] * b.data[k * b.cols + i];
        }
    }
    Ok(acc)
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows, b.cols);
    ComplexMatrix::from_fn(a.rows * br, a.cols * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

/// Kronecker product of two vectors.
pub fn tensor_vec(u: &[C64], v: &[C64]) -> Vec<C64> {
    u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
}

fn check_bipartite(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<()> {
    if dim_a == 0 || dim_b == 0 || !m.is_square() || m.rows != dim_a * dim_b {
        return Err(Error::shape(format!(
            "a {}x{} matrix has no {dim_a}x{dim_b} block structure",
            m.rows, m.cols
        )));
    }
    Ok(())
}

/// Partial transpose on `subsystem` of a `dim_a · dim_b` square matrix.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    subsystem: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartite(m, dim_a, dim_b)?;
    let n = m.rows;
    Ok(ComplexMatrix::from_fn(n, n, |row, col| {
        let (ia, ib) = (row / dim_b, row % dim_b);
        let (ja, jb) = (col / dim_b, col % dim_b);
        let (sr, sc) = match subsystem {
            Subsystem::A => ((ja * dim_b + ib), (ia * dim_b + jb)),
            Subsystem::B => ((ia * dim_b + jb), (ja * dim_b + ib)),
        };
        m[(sr, sc)]
    }))
}

/// Traces out `subsystem` of a `dim_a · dim_b` square matrix.
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    subsystem: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartite(m, dim_a, dim_b)?;
    Ok(match subsystem {
        Subsystem::B => ComplexMatrix::from_fn(dim_a, dim_a, |i, j| {
            (0..dim_b).map(|k| m[(i * dim_b + k, j * dim_b + k)]).sum()
        }),
        Subsystem::A => ComplexMatrix::from_fn(dim_b, dim_b, |i, j| {
            (0..dim_a).map(|k| m[(k * dim_b + i, k * dim_b + j)]).sum()
        }),
    })
}

/// Spectrum of a Hermitian matrix, eigenvalues descending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.rows).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.vectors.rows;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..self.values.len()).map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)].conj()).sum()
        })
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Inputs that deviate from Hermiticity by more than [`tol::HERM`] are
/// rejected; within tolerance the Hermitian part is decomposed.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::shape("eigendecomposition needs a square matrix"));
    }
    if !a.is_hermitian(tol::HERM * a.max_abs().max(1.0)) {
        return Err(Error::contract("matrix is not Hermitian"));
    }
    Ok(eigen_unchecked(&a.hermitian_part()))
}

fn eigen_unchecked(h: &ComplexMatrix) -> HermitianEigen {
    let n = h.rows;
    let m = DMatrix::from_row_slice(n, n, &h.data);
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, c| eig.eigenvectors[(i, order[c])]);
    HermitianEigen { values, vectors }
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    hermitian_eigen(a).map(|e| *e.values.last().expect("non-empty spectrum"))
}

/// Largest eigenpair of a Hermitian matrix (no tolerance check).
pub(crate) fn top_eigenpair(h: &ComplexMatrix) -> (f64, Vec<C64>) {
    let e = eigen_unchecked(&h.hermitian_part());
    (e.values[0], e.vector(0))
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_round_trip() {
        let m = ComplexMatrix::from_rows([[C64::new(1.0, 0.0), C64::new(0.0, -0.5)], [C64::new(0.0, 0.5), C64::new(2.0, 0.0)]]);
        let j = MatrixJson::from(&m);
        assert_eq!(j.dim, 2);
        assert_eq!(j.re, vec![vec![1.0, 0.0], vec![0.0, 2.0]]);
        assert_eq!(j.im, vec![vec![0.0, -0.5], vec![0.5, 0.0]]);
        assert_eq!(ComplexMatrix::try_from(j).unwrap(), m);
        let ragged = MatrixJson { dim: 2, re: vec![vec![1.0], vec![0.0, 1.0]], im: vec![vec![0.0; 2]; 2] };
        assert!(matches!(ComplexMatrix::try_from(ragged), Err(Error::Shape(_))));
    }

    fn sigma(k: usize) -> ComplexMatrix {
        let i = C64::i();
        let o = C64::zero();
        let one = C64::new(1.0, 0.0);
        match k {
            1 => ComplexMatrix::from_rows([[o, one], [one, o]]),
            2 => ComplexMatrix::from_rows([[o, -i], [i, o]]),
            3 => ComplexMatrix::from_rows([[one, o], [o, -one]]),
            _ => ComplexMatrix::identity(2),
        }
    }

    #[test]
    fn hs_inner_examples() {
        let id = ComplexMatrix::identity(2);
        assert!((hs_inner(&id, &id).unwrap() - 2.0).norm() < tol::NUM);
        assert!(hs_inner(&sigma(1), &sigma(2)).unwrap().norm() < tol::NUM);
        assert!(matches!(hs_inner(&id, &ComplexMatrix::identity(3)), Err(Error::Shape(_))));
    }

    #[test]
    fn hs_norm_of_zero() {
        assert_eq!(hs_norm(&ComplexMatrix::zeros(3, 3)).unwrap(), 0.0);
        assert!(hs_norm(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn tensor_examples() {
        let id2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&id2, &id2), ComplexMatrix::identity(4));
        let zz = tensor(&sigma(3), &sigma(3));
        assert_eq!(zz, ComplexMatrix::diag(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn bell_projector_from_unit_sum() {
        // (1/2) Σ_{j,k} |j⟩⟨k| ⊗ |j⟩⟨k| for two qubits
        let mut p = ComplexMatrix::zeros(4, 4);
        for j in 0..2 {
            for k in 0..2 {
                p += &tensor(&ComplexMatrix::unit(2, j, k), &ComplexMatrix::unit(2, j, k)).scale(0.5);
            }
        }
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((p[(i, j)] - 0.5).norm() < tol::NUM);
        }
        let nonzero = p.as_slice().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 4);
        let pt = partial_transpose_matrix(&p, 2, 2, Subsystem::B).unwrap();
        assert!((min_eigenvalue(&pt).unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_of_product() {
        let a = ComplexMatrix::diag(&[0.25, 0.75]);
        let b = ComplexMatrix::from_real_rows([[0.5, 0.2, 0.0], [0.2, 0.3, 0.1], [0.0, 0.1, 0.2]]);
        let ab = tensor(&a, &b);
        assert!(partial_trace_matrix(&ab, 2, 3, Subsystem::B).unwrap().max_abs_diff(&a) < tol::NUM);
        assert!(partial_trace_matrix(&ab, 2, 3, Subsystem::A).unwrap().max_abs_diff(&b) < tol::NUM);
        let pt = partial_transpose_matrix(&ab, 2, 3, Subsystem::B).unwrap();
        assert!(pt.max_abs_diff(&tensor(&a, &b.transpose())) < tol::NUM);
        assert!(partial_trace_matrix(&ab, 3, 3, Subsystem::A).is_err());
    }

    #[test]
    fn eigen_examples() {
        let e = hermitian_eigen(&ComplexMatrix::diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values.len(), 3);
        for (v, want) in e.values.iter().zip([3.0, 2.0, 1.0]) {
            assert!((v - want).abs() < 1e-12);
        }
        let e = hermitian_eigen(&sigma(1)).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-12 && (e.values[1] + 1.0).abs() < 1e-12);
        assert!(e.reconstruct().max_abs_diff(&sigma(1)) < 1e-12);

        let mut not_herm = sigma(1);
        not_herm[(0, 1)] = C64::new(2.0, 0.0);
        assert!(matches!(hermitian_eigen(&not_herm), Err(Error::Contract(_))));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(ComplexMatrix::new(2, 2, vec![C64::zero(); 3]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![C64::new(f64::NAN, 0.0)]).is_err());
    }
}
