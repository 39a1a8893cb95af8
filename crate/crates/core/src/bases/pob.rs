//! Polarization operators `T_LM`.
//!
//! With `s = (d-1)/2` and `m_k = s - k` for the 0-based standard index `k`,
//! `T_LM = √((2L+1)/(2s+1)) Σ_{k,l} C^{s m_k}_{s m_l, L M} |k⟩⟨l|`.

use num_complex::Complex64 as C64;

use super::cg::{clebsch_gordan, CgKey};
use super::{check_dim, check_index, BasisKind, BasisLabel, Expansion};
use crate::error::Result;
use crate::linalg::ComplexMatrix;

/// Twice the magnetic quantum number of standard index `k`.
fn two_m(d: usize, k: usize) -> i32 {
    d as i32 - 1 - 2 * k as i32
}

/// Matrix entry `(T_LM)_{kl}`; real in the Condon–Shortley convention.
fn entry(d: usize, l_rank: u32, m: i32, k: usize, l: usize) -> f64 {
    let two_s = d as i32 - 1;
    let two_l = 2 * l_rank as i32;
    let key = CgKey::new(two_s, two_m(d, l), two_l, 2 * m, two_s, two_m(d, k));
    let cg = clebsch_gordan(&key).expect("polarization keys are valid by construction");
    ((two_l + 1) as f64 / d as f64).sqrt() * cg
}

fn operator(d: usize, l_rank: u32, m: i32) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |k, l| C64::new(entry(d, l_rank, m, k, l), 0.0))
}

pub(super) fn elements(d: usize) -> Vec<(BasisLabel, ComplexMatrix)> {
    let mut out = Vec::with_capacity(d * d);
    for l in 0..d as u32 {
        for m in -(l as i32)..=l as i32 {
            out.push((BasisLabel::Polarization { l, m }, operator(d, l, m)));
        }
    }
    out
}

/// Expansion of `|i⟩⟨j|` (0-based) into polarization operators.
///
/// `|i⟩⟨j| = Σ_L √((2L+1)/(2s+1)) C^{s m_i}_{s m_j, L M} T_LM` with `M = m_i - m_j`.
pub fn expand_standard_pob(d: usize, i: usize, j: usize) -> Result<Expansion> {
    check_dim(d)?;
    check_index(d, i, "i")?;
    check_index(d, j, "j")?;
    let m = (two_m(d, i) - two_m(d, j)) / 2;
    let terms = (m.unsigned_abs()..d as u32)
        .map(|l| (BasisLabel::Polarization { l, m }, C64::new(entry(d, l, m, i, j), 0.0)))
        .filter(|(_, c)| c.re != 0.0)
        .collect();
    Ok(Expansion { kind: BasisKind::Pob, dim: d, terms })
}
