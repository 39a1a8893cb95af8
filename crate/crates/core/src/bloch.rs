//! Bloch vectors of single-qudit states and the local/correlation
//! decomposition of two-qudit states.
//!
//! For a basis `{A_i}` with `Tr A_i† A_j = N δ_ij` on the traceless part,
//! every `d × d` matrix of unit trace reads `ρ = 𝟙/d + Σ_i c_i A_i` with
//! `c_i = Tr(A_i† ρ)/N`. The raw traces `b_i = Tr(A_i† ρ)` are the
//! expectation-value components; both are exposed through [`Convention`].

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bases::{self, BasisKind, BasisLabel, OperatorBasis};
use crate::density::{partial_trace, BipartiteState, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, Subsystem};
use crate::tol;

/// Normalization of Bloch components.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    /// `c_i = Tr(A_i† ρ)/N`, the coefficients of `ρ = 𝟙/d + Σ c_i A_i`.
    #[default]
    ExpansionCoefficient,
    /// `b_i = Tr(A_i† ρ)`.
    ExpectationValue,
}

/// Components of a state on the `d² - 1` traceless elements of a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochVector {
    kind: BasisKind,
    dim: usize,
    convention: Convention,
    components: Vec<C64>,
    labels: Vec<BasisLabel>,
}

impl BlochVector {
    /// Builds a vector from raw components, ordered as the basis labels.
    pub fn new(kind: BasisKind, dim: usize, convention: Convention, components: Vec<C64>) -> Result<Self> {
        let basis = bases::basis(kind, dim)?;
        if components.len() != dim * dim - 1 {
            return Err(Error::shape(format!(
                "a {kind} Bloch vector for d = {dim} has {} components, got {}",
                dim * dim - 1,
                components.len()
            )));
        }
        Ok(Self { kind, dim, convention, components, labels: basis.labels()[1..].to_vec() })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, label: &BasisLabel) -> Option<C64> {
        self.labels.iter().position(|l| l == label).map(|i| self.components[i])
    }

    /// Euclidean length `|b| = √(Σ |b_i|²)`.
    pub fn norm(&self) -> f64 {
        linalg::vec_norm(&self.components)
    }

    /// The same vector under another convention.
    pub fn to_convention(&self, convention: Convention) -> Self {
        let n = self.kind.ortho_const(self.dim);
        let factor = match (self.convention, convention) {
            (a, b) if a == b => 1.0,
            (Convention::ExpansionCoefficient, Convention::ExpectationValue) => n,
            _ => 1.0 / n,
        };
        Self { convention, components: self.components.iter().map(|z| z * factor).collect(), ..self.clone() }
    }

    fn coefficients(&self) -> Vec<C64> {
        match self.convention {
            Convention::ExpansionCoefficient => self.components.clone(),
            Convention::ExpectationValue => self.to_convention(Convention::ExpansionCoefficient).components,
        }
    }
}

fn check_basis(basis: &OperatorBasis, d: usize) -> Result<()> {
    if basis.dim() != d {
        return Err(Error::shape(format!("basis dimension {} does not match state dimension {d}", basis.dim())));
    }
    Ok(())
}

/// `Tr(A_i† m)/scale` over the traceless elements.
fn project(basis: &OperatorBasis, m: &ComplexMatrix, scale: f64) -> Result<Vec<C64>> {
    basis.traceless().map(|(_, a)| linalg::hs_inner(a, m).map(|z| z / scale)).collect()
}

/// Encodes a state into the given basis.
pub fn bloch_encode(rho: &DensityMatrix, kind: BasisKind, convention: Convention) -> Result<BlochVector> {
    let basis = bases::basis(kind, rho.dim())?;
    bloch_encode_with(rho, &basis, convention)
}

/// Encodes against an explicit basis, which must match the state dimension.
pub fn bloch_encode_with(rho: &DensityMatrix, basis: &OperatorBasis, convention: Convention) -> Result<BlochVector> {
    check_basis(basis, rho.dim())?;
    let scale = match convention {
        Convention::ExpansionCoefficient => basis.ortho_const(),
        Convention::ExpectationValue => 1.0,
    };
    let components = project(basis, rho.matrix(), scale)?;
    Ok(BlochVector {
        kind: basis.kind(),
        dim: basis.dim(),
        convention,
        components,
        labels: basis.labels()[1..].to_vec(),
    })
}

/// Result of [`bloch_decode`]. Non-positive matrices are returned, not rejected.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodedState {
    pub matrix: ComplexMatrix,
    /// Smallest eigenvalue, `None` when the matrix is not Hermitian.
    pub min_eigenvalue: Option<f64>,
    pub is_physical: bool,
}

impl DecodedState {
    /// The matrix as a validated state.
    pub fn into_density(self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.matrix)
    }
}

/// `𝟙/d + Σ c_i A_i`, with a positivity verdict alongside.
pub fn bloch_decode(b: &BlochVector) -> Result<DecodedState> {
    let basis = bases::basis(b.kind, b.dim)?;
    let mut m = ComplexMatrix::identity(b.dim).scale(1.0 / b.dim as f64);
    for ((_, a), c) in basis.traceless().zip(b.coefficients()) {
        m += &a.scale(c);
    }
    let min_eigenvalue =
        if m.is_hermitian(tol::HERM) { Some(linalg::min_eigenvalue(&m)?) } else { None };
    let is_physical = min_eigenvalue.is_some_and(|e| e >= -tol::PSD);
    Ok(DecodedState { matrix: m, min_eigenvalue, is_physical })
}

/// `Tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    linalg::hs_inner(rho.matrix(), rho.matrix()).expect("square").re
}

/// Largest Bloch radius of a state under [`Convention::ExpansionCoefficient`]:
/// `√((d-1)/(dN))`, reached exactly by pure states.
pub fn radius_bound(kind: BasisKind, d: usize) -> f64 {
    ((d as f64 - 1.0) / (d as f64 * kind.ortho_const(d))).sqrt()
}

/// `Tr ρ²` from the Bloch vector: `1/d + N|c|²`.
pub fn purity_from_bloch(b: &BlochVector) -> f64 {
    let c = b.to_convention(Convention::ExpansionCoefficient);
    1.0 / b.dim as f64 + b.kind.ortho_const(b.dim) * c.norm().powi(2)
}

fn weyl_position(labels: &[BasisLabel], d: usize, n: usize, m: usize) -> usize {
    let (n, m) = ((d - n) % d, (d - m) % d);
    labels.iter().position(|l| *l == BasisLabel::Weyl { n, m }).expect("complete Weyl label set")
}

/// Largest violation of `b*_nm = e^{-2πi nm/d} b_{-n,-m}` over all labels.
///
/// Holds for the daggered components `Tr(U_nm† ρ)` of any Hermitian `ρ`, under
/// either convention.
pub fn wob_conjugacy_residual(b: &BlochVector) -> Result<f64> {
    if b.kind != BasisKind::Wob {
        return Err(Error::domain(format!("conjugacy relation needs a WOB vector, got {}", b.kind)));
    }
    Ok(conjugacy_residual(b.dim, &b.labels, &b.components, -1))
}

/// Undaggered Weyl components `Tr(U_nm ρ)` over the traceless labels.
pub fn wob_undaggered_components(rho: &DensityMatrix) -> Result<Vec<C64>> {
    let basis = bases::wob_basis(rho.dim())?;
    basis.traceless().map(|(_, u)| linalg::trace_product(u, rho.matrix())).collect()
}

/// Largest violation of `b*_nm = e^{+2πi nm/d} b_{-n,-m}` for undaggered components.
pub fn wob_undaggered_conjugacy_residual(d: usize, components: &[C64]) -> Result<f64> {
    let basis = bases::wob_basis(d)?;
    if components.len() != d * d - 1 {
        return Err(Error::shape("one component per traceless Weyl operator expected"));
    }
    Ok(conjugacy_residual(d, &basis.labels()[1..], components, 1))
}

fn conjugacy_residual(d: usize, labels: &[BasisLabel], comps: &[C64], sign: i64) -> f64 {
    labels
        .iter()
        .zip(comps)
        .map(|(label, b)| {
            let BasisLabel::Weyl { n, m } = *label else { unreachable!("Weyl labels") };
            let partner = comps[weyl_position(labels, d, n, m)];
            let phase = bases::root_phase(d, sign * (n * m) as i64);
            (b.conj() - phase * partner).norm()
        })
        .fold(0.0, f64::max)
}

/// `ρ = 𝟙⊗𝟙/d² + (1/d) Σ n_i A_i⊗𝟙 + (1/d) Σ m_i 𝟙⊗A_i + Σ c_ij A_i⊗A_j`.
///
/// `n` and `m` are the expansion-coefficient Bloch vectors of the reduced
/// states, so a product state has `c = n mᵀ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteBlochDecomposition {
    pub kind: BasisKind,
    pub dim: usize,
    pub local_a: Vec<C64>,
    pub local_b: Vec<C64>,
    /// `(d²-1) × (d²-1)`, `c_ij = Tr((A_i†⊗A_j†) ρ)/N²`.
    pub correlation: ComplexMatrix,
}

impl BipartiteBlochDecomposition {
    pub fn labels(&self) -> Result<Vec<BasisLabel>> {
        Ok(bases::basis(self.kind, self.dim)?.labels()[1..].to_vec())
    }

    pub fn reconstruct(&self) -> Result<ComplexMatrix> {
        let basis = bases::basis(self.kind, self.dim)?;
        let d = self.dim;
        let id = ComplexMatrix::identity(d);
        let mut out = ComplexMatrix::identity(d * d).scale(1.0 / (d * d) as f64);
        let traceless: Vec<&ComplexMatrix> = basis.traceless().map(|(_, a)| a).collect();
        let inv_d = 1.0 / d as f64;
        for (i, a) in traceless.iter().enumerate() {
            out += &linalg::tensor(a, &id).scale(self.local_a[i] * inv_d);
            out += &linalg::tensor(&id, a).scale(self.local_b[i] * inv_d);
            for (j, b) in traceless.iter().enumerate() {
                let c = self.correlation[(i, j)];
                if c != C64::new(0.0, 0.0) {
                    out += &linalg::tensor(a, b).scale(c);
                }
            }
        }
        Ok(out)
    }
}

/// Local Bloch vectors and correlation matrix of a two-qudit state.
pub fn bipartite_decompose(rho: &BipartiteState, kind: BasisKind) -> Result<BipartiteBlochDecomposition> {
    let d = rho.local_dim();
    let basis = bases::basis(kind, d)?;
    let n = basis.ortho_const();
    let rho_a = partial_trace(rho, Subsystem::B)?;
    let rho_b = partial_trace(rho, Subsystem::A)?;
    let local_a = project(&basis, rho_a.matrix(), n)?;
    let local_b = project(&basis, rho_b.matrix(), n)?;

    let k = d * d - 1;
    let traceless: Vec<&ComplexMatrix> = basis.traceless().map(|(_, a)| a).collect();
    let mut correlation = ComplexMatrix::zeros(k, k);
    let r = rho.matrix();
    for (i, a) in traceless.iter().enumerate() {
        for (j, b) in traceless.iter().enumerate() {
            // Tr((A⊗B)† ρ) without materializing the tensor product
            let mut acc = C64::new(0.0, 0.0);
            for ar in 0..d {
                for ac in 0..d {
                    let x = a[(ar, ac)];
                    if x == C64::new(0.0, 0.0) {
                        continue;
                    }
                    for br in 0..d {
                        for bc in 0..d {
                            let y = b[(br, bc)];
                            if y != C64::new(0.0, 0.0) {
                                acc += (x * y).conj() * r[(ar * d + br, ac * d + bc)];
                            }
                        }
                    }
                }
            }
            correlation[(i, j)] = acc / (n * n);
        }
    }
    Ok(BipartiteBlochDecomposition { kind, dim: d, local_a, local_b, correlation })
}
