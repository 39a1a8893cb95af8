//! Weyl operators `U_nm = Σ_k e^{2πi kn/d} |k⟩⟨k+m|`, indices mod `d`.

use num_complex::Complex64 as C64;

use super::{check_dim, check_index, BasisKind, BasisLabel, Expansion};
use crate::error::Result;
use crate::linalg::ComplexMatrix;

/// `e^{2πi x/d}`, with `x` reduced mod `d` first so the argument stays small.
pub(crate) fn omega_pow(d: usize, x: i64) -> C64 {
    let r = x.rem_euclid(d as i64);
    match (4 * r).checked_rem(d as i64) {
        // exact values on the real and imaginary axes
        Some(0) => [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)]
            [(4 * r / d as i64) as usize],
        _ => C64::from_polar(1.0, std::f64::consts::TAU * r as f64 / d as f64),
    }
}

pub(crate) fn weyl(d: usize, n: usize, m: usize) -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        u[(k, (k + m) % d)] = omega_pow(d, (k * n) as i64);
    }
    u
}

pub(super) fn elements(d: usize) -> Vec<(BasisLabel, ComplexMatrix)> {
    (0..d)
        .flat_map(|n| (0..d).map(move |m| (n, m)))
        .map(|(n, m)| (BasisLabel::Weyl { n, m }, weyl(d, n, m)))
        .collect()
}

fn neg(d: usize, x: usize) -> usize {
    (d - x % d) % d
}

/// `U_nm U_lk = e^{2πi ml/d} U_{n+l, m+k}`.
pub fn weyl_product(d: usize, (n, m): (usize, usize), (l, k): (usize, usize)) -> (C64, (usize, usize)) {
    (omega_pow(d, (m * l) as i64), ((n + l) % d, (m + k) % d))
}

/// `U_nm† = e^{2πi nm/d} U_{-n,-m}`.
pub fn weyl_dagger(d: usize, (n, m): (usize, usize)) -> (C64, (usize, usize)) {
    (omega_pow(d, (n * m) as i64), (neg(d, n), neg(d, m)))
}

/// Expansion of `|j⟩⟨k|` (0-based): `(1/d) Σ_l e^{-2πi lj/d} U_{l, k-j}`.
pub fn expand_standard_wob(d: usize, j: usize, k: usize) -> Result<Expansion> {
    check_dim(d)?;
    check_index(d, j, "j")?;
    check_index(d, k, "k")?;
    let m = (k + d - j) % d;
    let terms = (0..d)
        .map(|l| (BasisLabel::Weyl { n: l, m }, omega_pow(d, -((l * j) as i64)) / d as f64))
        .collect();
    Ok(Expansion { kind: BasisKind::Wob, dim: d, terms })
}
