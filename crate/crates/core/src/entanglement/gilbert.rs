//! Numerical nearest separable state by a fully corrective Gilbert
//! (Frank–Wolfe) iteration over pure product states.
//!
//! The iterate is always an explicit convex combination of product states, so
//! the reported distance is a certified upper bound on the HS measure.

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::seesaw;
use crate::density::{BipartiteState, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GilbertConfig {
    pub max_iterations: usize,
    /// Stop once `max_σ ⟨v, σ - ρ_k⟩ ≤ tolerance · ‖v‖` with `v = ρ - ρ_k`.
    pub tolerance: f64,
    /// Random restarts of the product-state search, besides the warm and spectral starts.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for GilbertConfig {
    fn default() -> Self {
        Self { max_iterations: 5000, tolerance: 1e-6, restarts: 5, seed: 0x5eed_0001 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GilbertResult {
    pub rho0: DensityMatrix,
    /// `‖ρ - ρ₀‖`, an upper bound on the distance to the separable set.
    /// Values at or below `tolerance` mean separable to working accuracy.
    pub distance: f64,
    /// `‖v‖ - gap/‖v‖`; a lower bound whenever the last product search was exact.
    pub lower_bound: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Product states carrying the final mixture.
    pub support: usize,
}

struct Atom {
    ket: Vec<C64>,
    weight: f64,
    /// `⟨ψ|ρ|ψ⟩`.
    target: f64,
}

fn overlap_sq(u: &[C64], v: &[C64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum::<C64>().norm_sqr()
}

fn mixture(atoms: &[Atom], n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for a in atoms {
        for i in 0..n {
            let x = a.ket[i] * a.weight;
            for j in 0..n {
                m[(i, j)] += x * a.ket[j].conj();
            }
        }
    }
    m
}

/// Pairwise steps on the simplex of current atoms for
/// `f(w) = ‖ρ - Σ w_i σ_i‖² = const - 2 cᵀw + wᵀGw`.
fn correct(atoms: &mut Vec<Atom>, gram: &mut Vec<Vec<f64>>) {
    let k = atoms.len();
    let mut w: Vec<f64> = atoms.iter().map(|a| a.weight).collect();
    let mut grad: Vec<f64> =
        (0..k).map(|i| 2.0 * ((0..k).map(|j| gram[i][j] * w[j]).sum::<f64>() - atoms[i].target)).collect();
    for _ in 0..50 * k.max(4) {
        let toward = (0..k).min_by(|&x, &y| grad[x].total_cmp(&grad[y])).expect("non-empty");
        let away = (0..k).filter(|&i| w[i] > 0.0).max_by(|&x, &y| grad[x].total_cmp(&grad[y])).expect("non-empty");
        let slope = grad[toward] - grad[away];
        if toward == away || slope > -1e-15 {
            break;
        }
        let curv = 2.0 * (gram[toward][toward] + gram[away][away] - 2.0 * gram[toward][away]);
        let mut step = if curv > 0.0 { (-slope / curv).min(w[away]) } else { w[away] };
        if w[away] - step <= 1e-300 {
            step = w[away];
        }
        w[toward] += step;
        w[away] -= step;
        // ∇ moves by 2·step·(G e_toward - G e_away)
        for (i, g) in grad.iter_mut().enumerate() {
            *g += 2.0 * step * (gram[i][toward] - gram[i][away]);
        }
    }
    for (a, x) in atoms.iter_mut().zip(&w) {
        a.weight = *x;
    }
    let keep: Vec<bool> = atoms.iter().map(|a| a.weight > 0.0).collect();
    let mut idx = 0;
    atoms.retain(|_| {
        idx += 1;
        keep[idx - 1]
    });
    let rows: Vec<Vec<f64>> = gram
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(row, _)| row.iter().zip(&keep).filter(|(_, &k)| k).map(|(x, _)| *x).collect())
        .collect();
    *gram = rows;
}

fn hs(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x.conj() * y).re).sum()
}

/// Approximates the separable state closest to `rho` in HS norm.
pub fn nearest_separable_numeric(rho: &BipartiteState, config: &GilbertConfig) -> Result<GilbertResult> {
    if config.max_iterations == 0 || config.tolerance.is_nan() || config.tolerance <= 0.0 {
        return Err(Error::domain("Gilbert iteration needs max_iterations ≥ 1 and a positive tolerance"));
    }
    let d = rho.local_dim();
    let n = d * d;
    let target = rho.matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    // start from 𝟙/d², the uniform mixture of the standard product basis
    let mut atoms: Vec<Atom> = (0..n)
        .map(|i| {
            let mut ket = vec![C64::new(0.0, 0.0); n];
            ket[i] = C64::new(1.0, 0.0);
            Atom { target: target[(i, i)].re, ket, weight: 1.0 / n as f64 }
        })
        .collect();
    let mut gram: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();

    let mut warm: Option<Vec<C64>> = None;
    let mut current = mixture(&atoms, n);
    let mut v = target - &current;
    let mut dist = hs(&v, &v).sqrt();
    let mut lower = 0.0;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < config.max_iterations {
        iterations += 1;
        // below the tolerance the state is separable to working accuracy
        if dist <= config.tolerance {
            converged = true;
            lower = 0.0;
            break;
        }
        let best = seesaw::maximize(&v, d, config.restarts, warm.as_deref(), &mut rng);
        let gap = best.value - hs(&v, &current);
        lower = (dist - gap / dist).max(0.0);
        if gap <= config.tolerance * dist {
            converged = true;
            break;
        }
        warm = Some(best.b.clone());
        let ket = best.ket();
        let row: Vec<f64> = atoms.iter().map(|a| overlap_sq(&a.ket, &ket)).collect();
        for (g, x) in gram.iter_mut().zip(&row) {
            g.push(*x);
        }
        let mut last = row;
        last.push(1.0);
        gram.push(last);
        atoms.push(Atom { target: target.expectation(&ket).re, ket, weight: 0.0 });
        correct(&mut atoms, &mut gram);

        current = mixture(&atoms, n);
        v = target - &current;
        let next = hs(&v, &v).sqrt();
        debug_assert!(next <= dist + 1e-12, "distance increased: {dist} -> {next}");
        dist = next.min(dist);
    }

    let total: f64 = atoms.iter().map(|a| a.weight).sum();
    let rho0 = DensityMatrix::new_unchecked(current.scale(1.0 / total));
    Ok(GilbertResult { rho0, distance: dist, lower_bound: lower, iterations, converged, support: atoms.len() })
}
