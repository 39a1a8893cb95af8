//! Bell states, isotropic states, Weyl Bell projectors, the two-parameter
//! qubit and qutrit families, and the composite operators `Λ, T, U, U₁, U₂, Σ`.
//!
//! Bipartite indices are `d·i_A + i_B`; standard-basis kets are 0-based.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::bases::{self, BasisLabel};
use crate::density::BipartiteState;
use crate::error::{Error, Result};
use crate::linalg::{self, tensor, ComplexMatrix};
use crate::random::haar_ket;

/// Slack on the linear parameter constraints.
pub const PLANE_EPS: f64 = 1e-12;

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::domain(format!("local dimension must be at least 2, got {d}")));
    }
    Ok(())
}

/// `|φ₊⟩ = (1/√d) Σ_j |j⟩⊗|j⟩`.
pub fn bell_ket(d: usize) -> Result<Vec<C64>> {
    check_dim(d)?;
    let mut v = vec![C64::new(0.0, 0.0); d * d];
    let amp = 1.0 / (d as f64).sqrt();
    for j in 0..d {
        v[j * d + j] = C64::new(amp, 0.0);
    }
    Ok(v)
}

/// `|φ₊⟩⟨φ₊|`.
pub fn bell_state(d: usize) -> Result<BipartiteState> {
    let v = bell_ket(d)?;
    Ok(BipartiteState::from_matrix_unchecked(d, ComplexMatrix::outer(&v, &v)))
}

/// Named two-qudit operators assembled from basis elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CompositeTag {
    /// `Σ Λ_s⊗Λ_s - Σ Λ_a⊗Λ_a + Σ Λ^l⊗Λ^l`.
    Lambda,
    /// `Σ_{(L,M)≠(0,0)} T_LM⊗T_LM`.
    T,
    /// `Σ_{(l,m)≠(0,0)} U_lm⊗U_{-l,m}`.
    U,
    /// Qutrit part of `U` with `m ≠ 0`.
    U1,
    /// Qutrit part of `U` with `m = 0`.
    U2,
    /// `σ₁⊗σ₁ - σ₂⊗σ₂ + σ₃⊗σ₃`.
    Sigma,
}

impl fmt::Display for CompositeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompositeTag::Lambda => "Lambda",
            CompositeTag::T => "T",
            CompositeTag::U => "U",
            CompositeTag::U1 => "U1",
            CompositeTag::U2 => "U2",
            CompositeTag::Sigma => "Sigma",
        })
    }
}

impl FromStr for CompositeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "lambda" => CompositeTag::Lambda,
            "t" => CompositeTag::T,
            "u" => CompositeTag::U,
            "u1" => CompositeTag::U1,
            "u2" => CompositeTag::U2,
            "sigma" => CompositeTag::Sigma,
            other => return Err(Error::domain(format!("unknown composite operator '{other}'"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositeOperator {
    pub tag: CompositeTag,
    pub dim: usize,
    /// `d² × d²`.
    pub matrix: ComplexMatrix,
}

fn weyl_pair_sum(d: usize, keep: impl Fn(usize, usize) -> bool) -> Result<ComplexMatrix> {
    let b = bases::wob_basis(d)?;
    let mut out = ComplexMatrix::zeros(d * d, d * d);
    for l in 0..d {
        for m in 0..d {
            if (l, m) == (0, 0) || !keep(l, m) {
                continue;
            }
            let a = b.get(&BasisLabel::Weyl { n: l, m }).expect("label");
            let c = b.get(&BasisLabel::Weyl { n: (d - l) % d, m }).expect("label");
            out += &tensor(a, c);
        }
    }
    Ok(out)
}

pub fn composite_operator(tag: CompositeTag, d: usize) -> Result<CompositeOperator> {
    check_dim(d)?;
    let matrix = match tag {
        CompositeTag::Lambda | CompositeTag::Sigma => {
            if tag == CompositeTag::Sigma && d != 2 {
                return Err(Error::domain(format!("Sigma is defined for d = 2 only, got {d}")));
            }
            let b = bases::ggb_basis(d)?;
            let mut out = ComplexMatrix::zeros(d * d, d * d);
            for (label, a) in b.traceless() {
                let t = tensor(a, a);
                match label {
                    BasisLabel::Antisymmetric { .. } => out -= &t,
                    _ => out += &t,
                }
            }
            out
        }
        CompositeTag::T => {
            let b = bases::pob_basis(d)?;
            let mut out = ComplexMatrix::zeros(d * d, d * d);
            for (_, t) in b.traceless() {
                out += &tensor(t, t);
            }
            out
        }
        CompositeTag::U => weyl_pair_sum(d, |_, _| true)?,
        CompositeTag::U1 | CompositeTag::U2 => {
            if d != 3 {
                return Err(Error::domain(format!("{tag} is defined for d = 3 only, got {d}")));
            }
            let want_m0 = tag == CompositeTag::U2;
            weyl_pair_sum(d, |_, m| (m == 0) == want_m0)?
        }
    };
    Ok(CompositeOperator { tag, dim: d, matrix })
}

/// Physical range `[-1/(d²-1), 1]` of the isotropic parameter.
pub fn isotropic_alpha_range(d: usize) -> (f64, f64) {
    (-1.0 / ((d * d) as f64 - 1.0), 1.0)
}

/// `α|φ₊⟩⟨φ₊| + (1-α)𝟙/d²` with α validated against the physical range.
pub fn isotropic_state(d: usize, alpha: f64) -> Result<BipartiteState> {
    check_dim(d)?;
    let (lo, hi) = isotropic_alpha_range(d);
    if !alpha.is_finite() || alpha < lo - PLANE_EPS || alpha > hi + PLANE_EPS {
        return Err(Error::domain(format!("isotropic alpha = {alpha} outside [{lo}, {hi}] for d = {d}")));
    }
    isotropic_state_unchecked(d, alpha)
}

/// As [`isotropic_state`] for any finite α, physical or not.
pub fn isotropic_state_unchecked(d: usize, alpha: f64) -> Result<BipartiteState> {
    let bell = bell_state(d)?.into_matrix();
    let mut m = bell.scale(alpha);
    m += &ComplexMatrix::identity(d * d).scale((1.0 - alpha) / (d * d) as f64);
    Ok(BipartiteState::from_matrix_unchecked(d, m))
}

fn check_weyl_index(d: usize, x: usize, name: &str) -> Result<()> {
    if x >= d {
        return Err(Error::domain(format!("Weyl index {name} = {x} out of range 0..{d}")));
    }
    Ok(())
}

/// `P_nk = (U_nk⊗𝟙)|φ₊⟩⟨φ₊|(U_nk†⊗𝟙)`.
pub fn weyl_bell_projector(d: usize, n: usize, k: usize) -> Result<BipartiteState> {
    check_dim(d)?;
    check_weyl_index(d, n, "n")?;
    check_weyl_index(d, k, "k")?;
    let u = tensor(&bases::weyl(d, n, k), &ComplexMatrix::identity(d));
    let v = u.apply(&bell_ket(d)?);
    Ok(BipartiteState::from_matrix_unchecked(d, ComplexMatrix::outer(&v, &v)))
}

/// `P_nk` from its Weyl form `(1/d²) Σ_{l,m} e^{2πi(kl-nm)/d} U_lm⊗U_{-l,m}`.
pub fn weyl_bell_projector_bloch(d: usize, n: usize, k: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    check_weyl_index(d, n, "n")?;
    check_weyl_index(d, k, "k")?;
    let b = bases::wob_basis(d)?;
    let mut out = ComplexMatrix::zeros(d * d, d * d);
    for l in 0..d {
        for m in 0..d {
            let phase = bases::root_phase(d, (k * l) as i64 - (n * m) as i64);
            let a = b.get(&BasisLabel::Weyl { n: l, m }).expect("label");
            let c = b.get(&BasisLabel::Weyl { n: (d - l) % d, m }).expect("label");
            out += &tensor(a, c).scale(phase / (d * d) as f64);
        }
    }
    Ok(out)
}

/// Which of the linear constraints an `(α, β)` point satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneStatus {
    pub physical: bool,
    /// Inside the PPT region; meaningful only when `physical`.
    pub ppt: bool,
}

/// Qubit family: physical iff `α ≤ 1-β`, `α ≥ β/3 - 1/3`, `α ≤ β + 1`;
/// PPT iff additionally `α ≤ β/3 + 1/3` and `α ≥ -β - 1`.
pub fn qubit_plane_status(alpha: f64, beta: f64) -> PlaneStatus {
    let e = PLANE_EPS;
    let physical = alpha <= 1.0 - beta + e && alpha >= beta / 3.0 - 1.0 / 3.0 - e && alpha <= beta + 1.0 + e;
    let ppt = alpha <= beta / 3.0 + 1.0 / 3.0 + e && alpha >= -beta - 1.0 - e;
    PlaneStatus { physical, ppt }
}

/// Qutrit family: physical iff `α ≤ 7β/2 + 1`, `α ≤ 1-β`, `α ≥ β/8 - 1/8`;
/// PPT iff additionally `α ≤ β/8 + 1/4`, `α ≥ 5β/4 - 1/2`, `α ≥ -β - 1/2`.
pub fn qutrit_plane_status(alpha: f64, beta: f64) -> PlaneStatus {
    let e = PLANE_EPS;
    let physical =
        alpha <= 3.5 * beta + 1.0 + e && alpha <= 1.0 - beta + e && alpha >= beta / 8.0 - 1.0 / 8.0 - e;
    let ppt = alpha <= beta / 8.0 + 0.25 + e && alpha >= 1.25 * beta - 0.5 - e && alpha >= -beta - 0.5 - e;
    PlaneStatus { physical, ppt }
}

fn check_plane(name: &str, alpha: f64, beta: f64, status: PlaneStatus) -> Result<()> {
    if !alpha.is_finite() || !beta.is_finite() || !status.physical {
        return Err(Error::domain(format!("({alpha}, {beta}) is not a physical {name} state")));
    }
    Ok(())
}

/// `(1-α-β)/4 𝟙 + α φ₊ + (β/2)(ψ₊ + ψ₋)`, validated.
pub fn two_param_qubit(alpha: f64, beta: f64) -> Result<BipartiteState> {
    check_plane("two-parameter qubit", alpha, beta, qubit_plane_status(alpha, beta))?;
    Ok(two_param_qubit_unchecked(alpha, beta))
}

pub fn two_param_qubit_unchecked(alpha: f64, beta: f64) -> BipartiteState {
    let mut m = ComplexMatrix::identity(4).scale((1.0 - alpha - beta) / 4.0);
    m += &bell_state(2).expect("d = 2").into_matrix().scale(alpha);
    // ψ₊ + ψ₋ = |01⟩⟨01| + |10⟩⟨10|
    m += &ComplexMatrix::diag(&[0.0, beta / 2.0, beta / 2.0, 0.0]);
    BipartiteState::from_matrix_unchecked(2, m)
}

/// `σ₁⊗σ₁ - σ₂⊗σ₂` and `σ₃⊗σ₃`.
pub fn qubit_plane_operators() -> (ComplexMatrix, ComplexMatrix) {
    let b = bases::ggb_basis(2).expect("d = 2");
    let (s1, s2, s3) = (b.element(1), b.element(2), b.element(3));
    (&tensor(s1, s1) - &tensor(s2, s2), tensor(s3, s3))
}

/// Pauli form `¼(𝟙 + α(σ₁⊗σ₁ - σ₂⊗σ₂) + (α-β) σ₃⊗σ₃)`.
pub fn two_param_qubit_pauli(alpha: f64, beta: f64) -> ComplexMatrix {
    let (x, z) = qubit_plane_operators();
    let mut m = ComplexMatrix::identity(4);
    m += &x.scale(alpha);
    m += &z.scale(alpha - beta);
    m.scale(0.25)
}

/// `(1-α-β)/9 𝟙 + α P₀₀ + (β/2)(P₁₀ + P₂₀)`, validated.
pub fn two_param_qutrit(alpha: f64, beta: f64) -> Result<BipartiteState> {
    check_plane("two-parameter qutrit", alpha, beta, qutrit_plane_status(alpha, beta))?;
    Ok(two_param_qutrit_unchecked(alpha, beta))
}

pub fn two_param_qutrit_unchecked(alpha: f64, beta: f64) -> BipartiteState {
    let p = |n| weyl_bell_projector(3, n, 0).expect("valid index").into_matrix();
    let mut m = ComplexMatrix::identity(9).scale((1.0 - alpha - beta) / 9.0);
    m += &p(0).scale(alpha);
    m += &(&p(1) + &p(2)).scale(beta / 2.0);
    BipartiteState::from_matrix_unchecked(3, m)
}

/// Weyl form `(1/9)(𝟙 + (α - β/2) U₁ + (α + β) U₂)`.
pub fn two_param_qutrit_weyl(alpha: f64, beta: f64) -> ComplexMatrix {
    let u1 = composite_operator(CompositeTag::U1, 3).expect("d = 3").matrix;
    let u2 = composite_operator(CompositeTag::U2, 3).expect("d = 3").matrix;
    let mut m = ComplexMatrix::identity(9);
    m += &u1.scale(alpha - beta / 2.0);
    m += &u2.scale(alpha + beta);
    m.scale(1.0 / 9.0)
}

/// Haar-random pure product ket `|a⟩⊗|b⟩`.
pub fn random_product_ket<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<C64> {
    let a = haar_ket(d, rng);
    let b = haar_ket(d, rng);
    linalg::tensor_vec(&a, &b)
}

/// Convex mixture of `mixture_count` Haar-random pure product states with
/// flat-Dirichlet weights. A test utility, not a uniform measure on the
/// separable set.
pub fn sample_separable(d: usize, seed: u64, mixture_count: usize) -> Result<BipartiteState> {
    sample_separable_with(d, mixture_count, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn sample_separable_with<R: Rng + ?Sized>(d: usize, mixture_count: usize, rng: &mut R) -> Result<BipartiteState> {
    check_dim(d)?;
    if mixture_count == 0 {
        return Err(Error::domain("mixture_count must be at least 1"));
    }
    let weights: Vec<f64> = (0..mixture_count).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = weights.iter().sum();
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for w in weights {
        let v = random_product_ket(d, rng);
        m += &ComplexMatrix::outer(&v, &v).scale(w / total);
    }
    Ok(BipartiteState::from_matrix_unchecked(d, m))
}

/// Pieces of `B = (1/d) Σ_j |j⟩⟨j|⊗|j⟩⟨j|` after inserting the Gell-Mann
/// expansion of `|j⟩⟨j|`: `B = (1/d)(B₁ + B₂ + B₃ + B₄ + 𝟙⊗𝟙/d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GgbDiagonalTerms {
    pub dim: usize,
    /// Equal-index products `Λ^m⊗Λ^m`.
    pub b1: ComplexMatrix,
    /// Mixed products `Λ^m⊗Λ^p`, `m ≠ p`.
    pub b2: ComplexMatrix,
    /// `Λ^m⊗𝟙` terms.
    pub b3: ComplexMatrix,
    /// `𝟙⊗Λ^m` terms.
    pub b4: ComplexMatrix,
}

impl GgbDiagonalTerms {
    pub fn assembled(&self) -> ComplexMatrix {
        let d = self.dim;
        let mut sum = &(&self.b1 + &self.b2) + &(&self.b3 + &self.b4);
        sum += &ComplexMatrix::identity(d * d).scale(1.0 / d as f64);
        sum.scale(1.0 / d as f64)
    }
}

/// Builds the four partial sums term by term, with `Λ^0 = 0`.
pub fn ggb_diagonal_terms(d: usize) -> Result<GgbDiagonalTerms> {
    check_dim(d)?;
    let basis = bases::ggb_basis(d)?;
    let zero = ComplexMatrix::zeros(d, d);
    let lam = |l: usize| -> &ComplexMatrix {
        if l == 0 {
            &zero
        } else {
            basis.get(&BasisLabel::Diagonal { l }).expect("diagonal label")
        }
    };
    let id = ComplexMatrix::identity(d);
    let dd = d * d;
    let (mut b1, mut b2, mut b3, mut b4) =
        (ComplexMatrix::zeros(dd, dd), ComplexMatrix::zeros(dd, dd), ComplexMatrix::zeros(dd, dd), ComplexMatrix::zeros(dd, dd));
    let inv_d = 1.0 / d as f64;
    for j in 1..=d {
        let jf = j as f64;
        let tail = 0..d - j;
        let p = |n: usize| ((j + n) * (j + n + 1)) as f64;

        b1 += &tensor(lam(j - 1), lam(j - 1)).scale((jf - 1.0) / (2.0 * jf));
        for n in tail.clone() {
            b1 += &tensor(lam(j + n), lam(j + n)).scale(1.0 / (2.0 * p(n)));
        }

        for l in tail.clone() {
            let c = ((jf - 1.0) / (4.0 * jf * p(l))).sqrt();
            b2 -= &tensor(lam(j - 1), lam(j + l)).scale(c);
            b2 -= &tensor(lam(j + l), lam(j - 1)).scale(c);
        }
        for n in tail.clone() {
            for l in tail.clone().filter(|&l| l != n) {
                b2 += &tensor(lam(j + n), lam(j + l)).scale(1.0 / (2.0 * (p(n) * p(l)).sqrt()));
            }
        }

        let head = -((jf - 1.0) / (2.0 * jf)).sqrt();
        b3 += &tensor(lam(j - 1), &id).scale(head * inv_d);
        b4 += &tensor(&id, lam(j - 1)).scale(head * inv_d);
        for n in tail.clone() {
            let c = inv_d / (2.0 * p(n)).sqrt();
            b3 += &tensor(lam(j + n), &id).scale(c);
            b4 += &tensor(&id, lam(j + n)).scale(c);
        }
    }
    Ok(GgbDiagonalTerms { dim: d, b1, b2, b3, b4 })
}
