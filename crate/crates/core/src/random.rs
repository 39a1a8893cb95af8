//! Random states for tests and sampling paths. All samplers take an explicit RNG.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::density::DensityMatrix;
use crate::linalg::{self, ComplexMatrix};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector in `ℂ^d`.
pub fn haar_ket<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..d).map(|_| gaussian(rng)).collect();
        let n = linalg::vec_norm(&v);
        if n > 1e-300 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

/// Ginibre matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |_, _| gaussian(rng))
}

/// `GG†/Tr GG†` for a square Ginibre `G`: full-rank with probability one.
pub fn ginibre_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(d, rng);
    let w = &g * &g.dagger();
    let tr = w.trace().re;
    let mut m = w.scale(1.0 / tr);
    m = m.hermitian_part();
    DensityMatrix::new_unchecked(m)
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    ginibre(d, rng).hermitian_part()
}
