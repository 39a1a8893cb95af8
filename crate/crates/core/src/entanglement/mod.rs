//! Entanglement detection and the Hilbert–Schmidt measure.
//!
//! An operator `A` is a witness for `ρ` when `⟨ρ, A⟩ < 0` while
//! `⟨σ, A⟩ ≥ 0` on every separable `σ`. For a separable `ρ₀` nearest to `ρ`,
//! `C̃ = (ρ₀ - ρ - ⟨ρ₀, ρ₀ - ρ⟩𝟙)/‖ρ₀ - ρ‖` is the optimal witness, and its
//! violation `min_σ ⟨σ, C̃⟩ - ⟨ρ, C̃⟩` equals the distance `‖ρ₀ - ρ‖`.

mod gilbert;
mod measure;
mod plane;
mod seesaw;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::density::{partial_transpose, BipartiteState, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{self, hs_inner, hs_norm, ComplexMatrix, Subsystem};
use crate::states::{self, CompositeTag};
use crate::tol;

pub use gilbert::{nearest_separable_numeric, GilbertConfig, GilbertResult};
pub use measure::{
    hs_measure_isotropic, hs_measure_qubit_plane, hs_measure_qutrit_plane, isotropic_distance,
    isotropic_optimal_witness, isotropic_threshold, HSMeasureResult, WitnessForm,
};
pub use plane::{PlaneFamily, RegionLabel};

/// Outcome of the PPT test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PptVerdict {
    pub is_ppt: bool,
    /// Smallest eigenvalue of the partial transpose on `B`.
    pub min_eigenvalue: f64,
}

pub fn ppt_verdict(rho: &BipartiteState) -> Result<PptVerdict> {
    let pt = partial_transpose(rho, Subsystem::B)?;
    let min_eigenvalue = linalg::min_eigenvalue(&pt)?;
    Ok(PptVerdict { is_ppt: min_eigenvalue >= -tol::PSD, min_eigenvalue })
}

/// `C̃ = (ρ̃ - ρ - ⟨ρ̃, ρ̃ - ρ⟩𝟙)/‖ρ̃ - ρ‖`, so `⟨ρ̃, C̃⟩ = 0` and `⟨ρ, C̃⟩ = -‖ρ̃ - ρ‖`.
pub fn witness_candidate(rho_tilde: &DensityMatrix, rho_ent: &DensityMatrix) -> Result<ComplexMatrix> {
    if rho_tilde.dim() != rho_ent.dim() {
        return Err(Error::shape("witness candidate needs states of equal dimension"));
    }
    let diff = rho_tilde.matrix() - rho_ent.matrix();
    let norm = hs_norm(&diff)?;
    if norm <= tol::NUM {
        return Err(Error::domain("states coincide; the witness candidate is undefined"));
    }
    let shift = hs_inner(rho_tilde.matrix(), &diff)?.re;
    let mut c = diff;
    c -= &ComplexMatrix::identity(rho_ent.dim()).scale(shift);
    Ok(c.scale(1.0 / norm))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessMethod {
    /// `a(𝟙 + c₁(σ₁⊗σ₁ - σ₂⊗σ₂) + c₂ σ₃⊗σ₃)`, `a > 0`, `|c_i| ≤ 1`.
    LemmaQubit,
    /// `a(2𝟙 + c₁U₁ + c₂U₂)`, `a > 0`, `|c_i| ≤ 1`.
    LemmaQutrit,
    /// `x𝟙 + y|φ₊⟩⟨φ₊|` in any dimension, with the exact separable minimum
    /// `x + min(y, 0)/d`.
    BellFidelity,
    /// Product-state search; can refute but never certify.
    SeesawNumeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Witness,
    NotWitness,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    #[serde(skip)]
    pub operator: ComplexMatrix,
    /// `⟨ρ_ent, A⟩`.
    pub ent_expectation: f64,
    /// Certified lower bound on `min_σ ⟨σ, A⟩` for lemma and fidelity methods,
    /// product-search minimum otherwise.
    pub sep_min_estimate: f64,
    pub verdict: Verdict,
    pub method: WitnessMethod,
    /// Method actually used for `sep_min_estimate`, when the requested form did not match.
    pub fallback: Option<WitnessMethod>,
}

/// Seesaw settings used when a witness has to be searched numerically.
pub const SEESAW_RESTARTS: usize = 8;
const SEESAW_SEED: u64 = 0x5eed_0002;

/// Coefficients of `a` on an orthogonal operator family, and the residual.
fn fit(a: &ComplexMatrix, ops: &[(&ComplexMatrix, f64)]) -> Result<(Vec<f64>, f64)> {
    let mut coeffs = Vec::with_capacity(ops.len());
    let mut rebuilt = ComplexMatrix::zeros(a.rows(), a.cols());
    for (op, norm_sq) in ops {
        let c = hs_inner(op, a)?.re / norm_sq;
        rebuilt += &op.scale(c);
        coeffs.push(c);
    }
    Ok((coeffs, rebuilt.max_abs_diff(a)))
}

/// Certified separable minimum for the lemma forms, or `None` if `a` does not match.
fn lemma_bound(a: &ComplexMatrix, d: usize, method: WitnessMethod) -> Result<Option<f64>> {
    let fit_tol = tol::HERM * a.max_abs().max(1.0);
    match method {
        WitnessMethod::LemmaQubit if d == 2 => {
            let id = ComplexMatrix::identity(4);
            let (x, z) = states::qubit_plane_operators();
            let (c, res) = fit(a, &[(&id, 4.0), (&x, 8.0), (&z, 4.0)])?;
            if res > fit_tol || c[0] <= 0.0 {
                return Ok(None);
            }
            let (c1, c2) = (c[1] / c[0], c[2] / c[0]);
            let worst = c1.abs().max(c2.abs());
            Ok((worst <= 1.0 + tol::NUM).then(|| c[0] * (1.0 - worst)))
        }
        WitnessMethod::LemmaQutrit if d == 3 => {
            let id = ComplexMatrix::identity(9);
            let u1 = states::composite_operator(CompositeTag::U1, 3)?.matrix;
            let u2 = states::composite_operator(CompositeTag::U2, 3)?.matrix;
            let (c, res) = fit(a, &[(&id, 9.0), (&u1, 54.0), (&u2, 18.0)])?;
            // a(2𝟙 + ...) has identity coefficient 2a
            let scale = c[0] / 2.0;
            if res > fit_tol || scale <= 0.0 {
                return Ok(None);
            }
            let (c1, c2) = (c[1] / scale, c[2] / scale);
            let worst = c1.abs().max(c2.abs());
            Ok((worst <= 1.0 + tol::NUM).then_some(2.0 * scale * (1.0 - worst)))
        }
        WitnessMethod::BellFidelity => {
            let n = (d * d) as f64;
            let p = states::bell_state(d)?.into_matrix();
            let tr = a.trace().re;
            let fid = hs_inner(&p, a)?.re;
            let y = (n * fid - tr) / (n - 1.0);
            let x = (tr - y) / n;
            let mut rebuilt = ComplexMatrix::identity(d * d).scale(x);
            rebuilt += &p.scale(y);
            if rebuilt.max_abs_diff(a) > fit_tol {
                return Ok(None);
            }
            Ok(Some(x + y.min(0.0) / d as f64))
        }
        _ => Ok(None),
    }
}

/// Checks the two witness conditions for `a` against `rho_ent`.
pub fn verify_witness(a: &ComplexMatrix, rho_ent: &BipartiteState, method: WitnessMethod) -> Result<WitnessReport> {
    if a.rows() != rho_ent.matrix().rows() || !a.is_square() {
        return Err(Error::shape("witness and state dimensions differ"));
    }
    if !a.is_hermitian(tol::HERM * a.max_abs().max(1.0)) {
        return Err(Error::contract("witness operator must be Hermitian"));
    }
    let d = rho_ent.local_dim();
    let ent = hs_inner(rho_ent.matrix(), a)?.re;
    let detects = ent < -tol::WITNESS;

    let certified = if method == WitnessMethod::SeesawNumeric { None } else { lemma_bound(a, d, method)? };
    let (sep_min, verdict, fallback) = match certified {
        Some(bound) => {
            let ok = detects && bound >= -tol::WITNESS;
            (bound, if ok { Verdict::Witness } else { Verdict::NotWitness }, None)
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(SEESAW_SEED);
            let found = seesaw::minimize(a, d, SEESAW_RESTARTS, &mut rng).value;
            let verdict = if found < -tol::WITNESS || !detects { Verdict::NotWitness } else { Verdict::Inconclusive };
            let fallback = (method != WitnessMethod::SeesawNumeric).then_some(WitnessMethod::SeesawNumeric);
            (found, verdict, fallback)
        }
    };
    Ok(WitnessReport { operator: a.clone(), ent_expectation: ent, sep_min_estimate: sep_min, verdict, method, fallback })
}
