//! Generalized Gell-Mann matrices.

use num_complex::Complex64 as C64;

use super::{check_dim, check_index, BasisKind, BasisLabel, Expansion};
use crate::error::Result;
use crate::linalg::ComplexMatrix;

/// `Λ_s^{jk} = |j⟩⟨k| + |k⟩⟨j|`, 1-based, `j < k`.
fn symmetric(d: usize, j: usize, k: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    m[(j - 1, k - 1)] = C64::new(1.0, 0.0);
    m[(k - 1, j - 1)] = C64::new(1.0, 0.0);
    m
}

/// `Λ_a^{jk} = -i|j⟩⟨k| + i|k⟩⟨j|`, 1-based, `j < k`.
fn antisymmetric(d: usize, j: usize, k: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    m[(j - 1, k - 1)] = C64::new(0.0, -1.0);
    m[(k - 1, j - 1)] = C64::new(0.0, 1.0);
    m
}

/// Diagonal entry `n` (1-based) of `Λ^l`.
fn diagonal_entry(l: usize, n: usize) -> f64 {
    let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
    if n <= l {
        norm
    } else if n == l + 1 {
        -(l as f64) * norm
    } else {
        0.0
    }
}

/// `Λ^l = √(2/(l(l+1))) (Σ_{j≤l} |j⟩⟨j| - l |l+1⟩⟨l+1|)`.
fn diagonal(d: usize, l: usize) -> ComplexMatrix {
    let entries: Vec<f64> = (1..=d).map(|n| diagonal_entry(l, n)).collect();
    ComplexMatrix::diag(&entries)
}

fn pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=d).flat_map(move |j| (j + 1..=d).map(move |k| (j, k)))
}

pub(super) fn elements(d: usize) -> Vec<(BasisLabel, ComplexMatrix)> {
    let mut out = Vec::with_capacity(d * d);
    out.push((BasisLabel::Identity, ComplexMatrix::identity(d)));
    out.extend(pairs(d).map(|(j, k)| (BasisLabel::Symmetric { j, k }, symmetric(d, j, k))));
    out.extend(pairs(d).map(|(j, k)| (BasisLabel::Antisymmetric { j, k }, antisymmetric(d, j, k))));
    out.extend((1..d).map(|l| (BasisLabel::Diagonal { l }, diagonal(d, l))));
    out
}

/// Expansion of `|j⟩⟨k|` (0-based) into Gell-Mann matrices.
///
/// Off-diagonal: `½(Λ_s^{jk} ± iΛ_a^{jk})`. Diagonal:
/// `|n⟩⟨n| = 𝟙/d + ½ Σ_l (Λ^l)_{nn} Λ^l`, where only `l ≥ n - 1` contribute.
pub fn expand_standard_ggb(d: usize, j: usize, k: usize) -> Result<Expansion> {
    check_dim(d)?;
    check_index(d, j, "j")?;
    check_index(d, k, "k")?;
    let (j, k) = (j + 1, k + 1);
    let half = C64::new(0.5, 0.0);
    let terms = if j < k {
        vec![(BasisLabel::Symmetric { j, k }, half), (BasisLabel::Antisymmetric { j, k }, C64::new(0.0, 0.5))]
    } else if j > k {
        vec![
            (BasisLabel::Symmetric { j: k, k: j }, half),
            (BasisLabel::Antisymmetric { j: k, k: j }, C64::new(0.0, -0.5)),
        ]
    } else {
        let mut t = vec![(BasisLabel::Identity, C64::new(1.0 / d as f64, 0.0))];
        t.extend(
            (j.max(2) - 1..d).map(|l| (BasisLabel::Diagonal { l }, C64::new(0.5 * diagonal_entry(l, j), 0.0))),
        );
        t
    };
    Ok(Expansion { kind: BasisKind::Ggb, dim: d, terms })
}
