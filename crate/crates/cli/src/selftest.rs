use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quditbloch::bases::{self, BasisKind};
use quditbloch::bloch::{self, Convention};
use quditbloch::error::Result;
use quditbloch::linalg::hs_inner;
use quditbloch::random::ginibre_state;

use crate::CliError;

const STATES_PER_CASE: usize = 50;

struct Row {
    suite: String,
    worst: f64,
    limit: f64,
}

fn orthogonality(kind: BasisKind) -> Result<Row> {
    let mut worst: f64 = 0.0;
    for d in 2..=8 {
        let b = bases::basis(kind, d)?;
        for i in 0..b.len() {
            for j in 0..b.len() {
                let g = hs_inner(b.element(i), b.element(j))?;
                let want = if i == j { b.norm_sqr(i) } else { 0.0 };
                worst = worst.max((g.re - want).abs().max(g.im.abs()));
            }
        }
    }
    Ok(Row { suite: format!("orthogonality {kind} d=2..8"), worst, limit: 1e-12 })
}

fn round_trip(kind: BasisKind, seed: u64) -> Result<Row> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for d in 2..=5 {
        for _ in 0..STATES_PER_CASE {
            let rho = ginibre_state(d, &mut rng);
            let b = bloch::bloch_encode(&rho, kind, Convention::ExpansionCoefficient)?;
            let back = bloch::bloch_decode(&b)?;
            let purity = (bloch::purity_from_bloch(&b) - bloch::purity(&rho)).abs();
            worst = worst.max(back.matrix.max_abs_diff(rho.matrix())).max(purity);
        }
    }
    Ok(Row { suite: format!("round trip {kind} d=2..5"), worst, limit: 1e-10 })
}

/// The table and whether every row passed.
pub fn run(seed: u64) -> std::result::Result<(Vec<u8>, bool), CliError> {
    let mut rows = Vec::new();
    for kind in BasisKind::ALL {
        rows.push(orthogonality(kind)?);
    }
    for kind in BasisKind::ALL {
        rows.push(round_trip(kind, seed)?);
    }
    let width = rows.iter().map(|r| r.suite.len()).max().unwrap_or(0);
    let mut text = format!("{:<width$}  status  max error  limit\n", "suite");
    let mut ok = true;
    for r in &rows {
        let pass = r.worst <= r.limit;
        ok &= pass;
        let status = if pass { "PASS" } else { "FAIL" };
        text.push_str(&format!("{:<width$}  {status:<6}  {:.2e}   {:.0e}\n", r.suite, r.worst, r.limit));
    }
    Ok((text.into_bytes(), ok))
}
