//! Alternating optimization of `⟨a⊗b| H |a⊗b⟩` over unit product vectors.

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::linalg::{self, top_eigenpair, ComplexMatrix};
use crate::random::haar_ket;

const MAX_SWEEPS: usize = 200;
const SWEEP_TOL: f64 = 1e-15;

/// A product vector and its expectation value.
#[derive(Clone, Debug)]
pub(crate) struct ProductPoint {
    pub value: f64,
    pub a: Vec<C64>,
    pub b: Vec<C64>,
}

impl ProductPoint {
    pub fn ket(&self) -> Vec<C64> {
        linalg::tensor_vec(&self.a, &self.b)
    }
}

/// `⟨b|H|b⟩_B`, an operator on the first factor.
fn contract_b(h: &ComplexMatrix, d: usize, b: &[C64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..d {
            for l in 0..d {
                acc += b[k].conj() * h[(i * d + k, j * d + l)] * b[l];
            }
        }
        acc
    })
}

/// `⟨a|H|a⟩_A`, an operator on the second factor.
fn contract_a(h: &ComplexMatrix, d: usize, a: &[C64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |k, l| {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += a[i].conj() * h[(i * d + k, j * d + l)] * a[j];
            }
        }
        acc
    })
}

/// Local ascent from `b`; every sweep is a non-decreasing step.
fn ascend(h: &ComplexMatrix, d: usize, mut b: Vec<C64>) -> ProductPoint {
    let mut last = f64::NEG_INFINITY;
    let mut a = vec![C64::new(0.0, 0.0); d];
    for _ in 0..MAX_SWEEPS {
        let (_, na) = top_eigenpair(&contract_b(h, d, &b));
        a = na;
        let (value, nb) = top_eigenpair(&contract_a(h, d, &a));
        b = nb;
        if value - last <= SWEEP_TOL * value.abs().max(1.0) {
            last = value;
            break;
        }
        last = value;
    }
    ProductPoint { value: last, a, b }
}

/// Leading Schmidt vector of the second factor of the top eigenvector of `h`.
fn spectral_start(h: &ComplexMatrix, d: usize) -> Vec<C64> {
    let (_, psi) = top_eigenpair(h);
    // ψ_{ik} = M_{ik} ≈ s u_i b_k with b the top eigenvector of Mᵀ M̄
    let m = ComplexMatrix::from_fn(d, d, |i, k| psi[i * d + k]);
    top_eigenpair(&(&m.transpose() * &m.conj())).1
}

/// Approximate maximum of `⟨a⊗b|H|a⊗b⟩`. The result is a lower bound on the
/// true maximum: nonconvex, so restarts only make a miss unlikely.
pub(crate) fn maximize<R: Rng + ?Sized>(
    h: &ComplexMatrix,
    d: usize,
    restarts: usize,
    warm: Option<&[C64]>,
    rng: &mut R,
) -> ProductPoint {
    let mut starts = vec![spectral_start(h, d)];
    if let Some(b) = warm {
        starts.push(b.to_vec());
    }
    starts.extend((0..restarts).map(|_| haar_ket(d, rng)));
    starts
        .into_iter()
        .map(|b| ascend(h, d, b))
        .max_by(|x, y| x.value.total_cmp(&y.value))
        .expect("at least one start")
}

/// Approximate minimum of `⟨a⊗b|H|a⊗b⟩`, an upper bound on the true minimum.
pub(crate) fn minimize<R: Rng + ?Sized>(h: &ComplexMatrix, d: usize, restarts: usize, rng: &mut R) -> ProductPoint {
    let mut p = maximize(&-h, d, restarts, None, rng);
    p.value = -p.value;
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::bell_state;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bell_fidelity_of_product_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for d in 2..=4 {
            let p = bell_state(d).unwrap().into_matrix();
            let best = maximize(&p, d, 3, None, &mut rng);
            assert!((best.value - 1.0 / d as f64).abs() < 1e-12);
            let ket = best.ket();
            assert!((p.expectation(&ket).re - best.value).abs() < 1e-12);
            let worst = minimize(&p, d, 3, &mut rng);
            assert!(worst.value.abs() < 1e-12);
        }
    }

    #[test]
    fn product_operator_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = ComplexMatrix::diag(&[1.0, -2.0, 0.5]);
        let b = ComplexMatrix::diag(&[3.0, 1.0, -1.0]);
        let h = linalg::tensor(&a, &b);
        assert!((maximize(&h, 3, 5, None, &mut rng).value - 3.0).abs() < 1e-12);
        assert!((minimize(&h, 3, 5, &mut rng).value + 6.0).abs() < 1e-12);
    }
}
