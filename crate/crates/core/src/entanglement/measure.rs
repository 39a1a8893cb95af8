//! Closed-form Hilbert–Schmidt measure for the isotropic and two-parameter families.

use serde::{Deserialize, Serialize};

use super::plane::{PlaneFamily, RegionLabel};
use super::{lemma_bound, WitnessMethod};
use crate::bases;
use crate::density::{BipartiteState, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{hs_inner, ComplexMatrix};
use crate::states::{self, composite_operator, CompositeTag, PLANE_EPS};

/// Nearest separable state, optimal witness and its violation.
#[derive(Clone, Debug, PartialEq)]
pub struct HSMeasureResult {
    pub distance: f64,
    pub nearest_separable: DensityMatrix,
    pub witness: ComplexMatrix,
    /// `min_σ ⟨σ, A⟩ - ⟨ρ, A⟩` with the separable minimum certified by the
    /// witness structure; equals `distance`.
    pub max_violation: f64,
}

/// Basis representation used to assemble the isotropic witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessForm {
    /// `𝟙 - d|φ₊⟩⟨φ₊|` scaled.
    Projector,
    Lambda,
    T,
    U,
}

/// `α = 1/(d+1)`, where the isotropic state stops being PPT.
pub fn isotropic_threshold(d: usize) -> f64 {
    1.0 / (d as f64 + 1.0)
}

/// `(√(d²-1)/d)(α - 1/(d+1))` above the threshold, zero below.
pub fn isotropic_distance(d: usize, alpha: f64) -> f64 {
    let n = (d * d) as f64;
    ((n - 1.0).sqrt() / d as f64 * (alpha - isotropic_threshold(d))).max(0.0)
}

/// `A_opt = (𝟙 - d|φ₊⟩⟨φ₊|)/√(d²-1)`, built in the requested representation.
pub fn isotropic_optimal_witness(d: usize, form: WitnessForm) -> Result<ComplexMatrix> {
    bases::check_dim(d)?;
    let df = d as f64;
    let root = (df * df - 1.0).sqrt();
    let id = ComplexMatrix::identity(d * d);
    if form == WitnessForm::Projector {
        let p = states::bell_state(d)?.into_matrix();
        return Ok((&id - &p.scale(df)).scale(1.0 / root));
    }
    // Λ = 2T = 2U/d
    let (tag, to_lambda) = match form {
        WitnessForm::Lambda => (CompositeTag::Lambda, 1.0),
        WitnessForm::T => (CompositeTag::T, 2.0),
        _ => (CompositeTag::U, 2.0 / df),
    };
    let lambda = composite_operator(tag, d)?.matrix.scale(to_lambda);
    let mut a = id.scale(((df - 1.0) / (df + 1.0)).sqrt() / df);
    a -= &lambda.scale(1.0 / (2.0 * root));
    Ok(a)
}

fn violation(witness: &ComplexMatrix, rho: &BipartiteState, method: WitnessMethod) -> Result<f64> {
    let d = rho.local_dim();
    let sep = lemma_bound(witness, d, method)?.ok_or_else(|| Error::contract("closed-form witness lost its lemma form"))?;
    Ok(sep - hs_inner(rho.matrix(), witness)?.re)
}

/// HS measure of an entangled isotropic state, `1/(d+1) < α ≤ 1`.
pub fn hs_measure_isotropic(d: usize, alpha: f64) -> Result<HSMeasureResult> {
    bases::check_dim(d)?;
    let thr = isotropic_threshold(d);
    if !(alpha > thr + PLANE_EPS && alpha <= 1.0 + PLANE_EPS) {
        return Err(Error::domain(format!("isotropic α = {alpha} is not in the entangled range ({thr}, 1]")));
    }
    let rho = states::isotropic_state_unchecked(d, alpha)?;
    let nearest = states::isotropic_state_unchecked(d, thr)?.into_matrix();
    let witness = isotropic_optimal_witness(d, WitnessForm::Projector)?;
    let max_violation = violation(&witness, &rho, WitnessMethod::BellFidelity)?;
    Ok(HSMeasureResult {
        distance: isotropic_distance(d, alpha),
        nearest_separable: DensityMatrix::new_unchecked(nearest),
        witness,
        max_violation,
    })
}

fn hs_measure_plane(fam: PlaneFamily, alpha: f64, beta: f64) -> Result<(RegionLabel, Option<HSMeasureResult>)> {
    let region = fam.classify(alpha, beta);
    if !region.is_entangled() {
        return Ok((region, None));
    }
    let (a0, b0) = fam.nearest_point(region, alpha, beta).expect("entangled region");
    let rho = fam.state_unchecked(alpha, beta);
    let witness = fam.closed_witness(region)?;
    let method = match fam {
        PlaneFamily::Qubit => WitnessMethod::LemmaQubit,
        PlaneFamily::Qutrit => WitnessMethod::LemmaQutrit,
    };
    let max_violation = violation(&witness, &rho, method)?;
    let result = HSMeasureResult {
        distance: fam.closed_distance(alpha, beta),
        nearest_separable: DensityMatrix::new_unchecked(fam.state_unchecked(a0, b0).into_matrix()),
        witness,
        max_violation,
    };
    Ok((region, Some(result)))
}

/// Region and, for entangled points, the HS measure of the qubit family.
pub fn hs_measure_qubit_plane(alpha: f64, beta: f64) -> Result<(RegionLabel, Option<HSMeasureResult>)> {
    hs_measure_plane(PlaneFamily::Qubit, alpha, beta)
}

/// Region and, for entangled points, the HS measure of the qutrit family.
pub fn hs_measure_qutrit_plane(alpha: f64, beta: f64) -> Result<(RegionLabel, Option<HSMeasureResult>)> {
    hs_measure_plane(PlaneFamily::Qutrit, alpha, beta)
}
