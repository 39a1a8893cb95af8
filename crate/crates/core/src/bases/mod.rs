//! Orthogonal operator bases for `d × d` matrices.
//!
//! Three families are provided:
//!
//! * generalized Gell-Mann matrices ([`BasisKind::Ggb`]), Hermitian, `Tr A†B = 2δ`;
//! * polarization operators ([`BasisKind::Pob`]), built from Clebsch–Gordan
//!   coefficients, orthonormal and in general not Hermitian;
//! * Weyl operators ([`BasisKind::Wob`]), unitary, `Tr U†V = d δ`.
//!
//! Element 0 of every basis is proportional to the identity. Constructed
//! bases are cached per `(kind, d)` and shared behind an [`Arc`].

mod cg;
mod ggb;
mod pob;
mod wob;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

pub use cg::{clebsch_gordan, CgKey};
pub use ggb::expand_standard_ggb;
pub use pob::expand_standard_pob;
pub use wob::{expand_standard_wob, weyl_dagger, weyl_product};
pub(crate) use wob::weyl;

/// Which operator basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Ggb,
    Pob,
    Wob,
}

impl BasisKind {
    pub const ALL: [BasisKind; 3] = [BasisKind::Ggb, BasisKind::Pob, BasisKind::Wob];

    /// The orthogonality constant `N` of `Tr A_i† A_j = N δ_ij` for the
    /// traceless elements.
    pub fn ortho_const(self, d: usize) -> f64 {
        match self {
            BasisKind::Ggb => 2.0,
            BasisKind::Pob => 1.0,
            BasisKind::Wob => d as f64,
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::Ggb => "ggb",
            BasisKind::Pob => "pob",
            BasisKind::Wob => "wob",
        })
    }
}

impl FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ggb" => Ok(BasisKind::Ggb),
            "pob" => Ok(BasisKind::Pob),
            "wob" => Ok(BasisKind::Wob),
            other => Err(Error::domain(format!("unknown basis kind '{other}'"))),
        }
    }
}

/// Index tuple naming a basis element.
///
/// Gell-Mann labels use 1-based indices `1 ≤ j < k ≤ d` and `1 ≤ l ≤ d-1`;
/// Weyl labels are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Identity,
    Symmetric { j: usize, k: usize },
    Antisymmetric { j: usize, k: usize },
    Diagonal { l: usize },
    Polarization { l: u32, m: i32 },
    Weyl { n: usize, m: usize },
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisLabel::Identity => write!(f, "I"),
            BasisLabel::Symmetric { j, k } => write!(f, "s({j},{k})"),
            BasisLabel::Antisymmetric { j, k } => write!(f, "a({j},{k})"),
            BasisLabel::Diagonal { l } => write!(f, "d({l})"),
            BasisLabel::Polarization { l, m } => write!(f, "T({l},{m})"),
            BasisLabel::Weyl { n, m } => write!(f, "U({n},{m})"),
        }
    }
}

impl Serialize for BasisLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An ordered set of `d²` matrices spanning the `d × d` matrices.
#[derive(Clone, Debug)]
pub struct OperatorBasis {
    kind: BasisKind,
    dim: usize,
    elements: Vec<ComplexMatrix>,
    labels: Vec<BasisLabel>,
    index: HashMap<BasisLabel, usize>,
}

impl OperatorBasis {
    fn from_parts(kind: BasisKind, dim: usize, parts: Vec<(BasisLabel, ComplexMatrix)>) -> Self {
        debug_assert_eq!(parts.len(), dim * dim);
        let (labels, elements): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
        let index = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        Self { kind, dim, elements, labels, index }
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ComplexMatrix {
        &self.elements[i]
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// Orthogonality constant `N` shared by the traceless elements.
    pub fn ortho_const(&self) -> f64 {
        self.kind.ortho_const(self.dim)
    }

    /// `Tr A_i† A_i`. Equals `N` except for the Gell-Mann identity, whose
    /// squared norm is `d`.
    pub fn norm_sqr(&self, i: usize) -> f64 {
        match (self.kind, i) {
            (BasisKind::Ggb, 0) => self.dim as f64,
            _ => self.ortho_const(),
        }
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn get(&self, label: &BasisLabel) -> Option<&ComplexMatrix> {
        self.index_of(label).map(|i| &self.elements[i])
    }

    /// Non-identity elements with their labels.
    pub fn traceless(&self) -> impl Iterator<Item = (&BasisLabel, &ComplexMatrix)> {
        self.labels.iter().zip(&self.elements).skip(1)
    }
}

pub(crate) fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::domain(format!("basis dimension must be at least 2, got {d}")));
    }
    Ok(())
}

type Cache = RwLock<HashMap<(BasisKind, usize), Arc<OperatorBasis>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The basis of the given kind for `d`-dimensional systems, cached.
pub fn basis(kind: BasisKind, d: usize) -> Result<Arc<OperatorBasis>> {
    check_dim(d)?;
    if let Some(b) = cache().read().expect("basis cache poisoned").get(&(kind, d)) {
        return Ok(Arc::clone(b));
    }
    // built outside the lock; concurrent first calls build equal values
    let built = Arc::new(build(kind, d));
    let mut map = cache().write().expect("basis cache poisoned");
    Ok(Arc::clone(map.entry((kind, d)).or_insert(built)))
}

/// Builds a basis without consulting the cache.
pub fn build(kind: BasisKind, d: usize) -> OperatorBasis {
    let parts = match kind {
        BasisKind::Ggb => ggb::elements(d),
        BasisKind::Pob => pob::elements(d),
        BasisKind::Wob => wob::elements(d),
    };
    OperatorBasis::from_parts(kind, d, parts)
}

pub fn ggb_basis(d: usize) -> Result<Arc<OperatorBasis>> {
    basis(BasisKind::Ggb, d)
}

pub fn pob_basis(d: usize) -> Result<Arc<OperatorBasis>> {
    basis(BasisKind::Pob, d)
}

pub fn wob_basis(d: usize) -> Result<Arc<OperatorBasis>> {
    basis(BasisKind::Wob, d)
}

/// Coefficients of a matrix on the elements of one basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub kind: BasisKind,
    pub dim: usize,
    pub terms: Vec<(BasisLabel, C64)>,
}

impl Expansion {
    pub fn coefficient(&self, label: &BasisLabel) -> C64 {
        self.terms.iter().filter(|(l, _)| l == label).map(|(_, c)| *c).sum()
    }

    /// `Σ coeff · element`.
    pub fn reconstruct(&self) -> Result<ComplexMatrix> {
        let b = basis(self.kind, self.dim)?;
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (label, c) in &self.terms {
            let m = b
                .get(label)
                .ok_or_else(|| Error::domain(format!("label {label} is not in the {} basis", self.kind)))?;
            out += &m.scale(*c);
        }
        Ok(out)
    }
}

fn check_index(d: usize, i: usize, name: &str) -> Result<()> {
    if i >= d {
        return Err(Error::domain(format!("index {name} = {i} out of range 0..{d}")));
    }
    Ok(())
}

/// Expansion of `|j⟩⟨k|` (0-based indices) into the chosen basis.
pub fn expand_standard(kind: BasisKind, d: usize, j: usize, k: usize) -> Result<Expansion> {
    match kind {
        BasisKind::Ggb => expand_standard_ggb(d, j, k),
        BasisKind::Pob => expand_standard_pob(d, j, k),
        BasisKind::Wob => expand_standard_wob(d, j, k),
    }
}

/// `e^{2πi x/d}`, exact on the real and imaginary axes.
pub fn root_phase(d: usize, x: i64) -> C64 {
    wob::omega_pow(d, x)
}

/// `Σ_{n=0}^{d-1} e^{2πi n x / d}`.
pub fn root_of_unity_sum(d: usize, x: i64) -> C64 {
    (0..d as i64).map(|n| root_phase(d, n * x)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hs_inner, tensor};
    use crate::tol;

    fn max_gram_error(b: &OperatorBasis) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..b.len() {
            for j in 0..b.len() {
                let g = hs_inner(b.element(i), b.element(j)).unwrap();
                let want = if i == j { b.norm_sqr(i) } else { 0.0 };
                worst = worst.max((g - want).norm());
            }
        }
        worst
    }

    #[test]
    fn orthogonality_all_kinds() {
        for d in 2..=8 {
            for kind in BasisKind::ALL {
                let b = basis(kind, d).unwrap();
                assert_eq!(b.len(), d * d);
                assert!(max_gram_error(&b) <= 1e-12, "{kind} d={d}");
                for (_, m) in b.traceless() {
                    assert!(m.trace().norm() <= tol::NUM);
                }
            }
        }
    }

    #[test]
    fn identity_element_first() {
        for d in 2..=5 {
            let id = ComplexMatrix::identity(d);
            assert!(ggb_basis(d).unwrap().element(0).max_abs_diff(&id) < tol::NUM);
            assert!(wob_basis(d).unwrap().element(0).max_abs_diff(&id) < tol::NUM);
            let t00 = id.scale(1.0 / (d as f64).sqrt());
            assert!(pob_basis(d).unwrap().element(0).max_abs_diff(&t00) < tol::NUM);
        }
    }

    #[test]
    fn element_symmetries() {
        for d in 2..=6 {
            for (_, m) in ggb_basis(d).unwrap().traceless() {
                assert!(m.is_hermitian(tol::NUM));
            }
            for m in wob_basis(d).unwrap().elements() {
                assert!((&m.dagger() * m).max_abs_diff(&ComplexMatrix::identity(d)) < tol::NUM);
            }
            let pob = pob_basis(d).unwrap();
            for (label, m) in pob.traceless() {
                let BasisLabel::Polarization { l, m: mm } = *label else { unreachable!() };
                let partner = pob.get(&BasisLabel::Polarization { l, m: -mm }).unwrap();
                let sign = if mm % 2 == 0 { 1.0 } else { -1.0 };
                assert!(m.dagger().max_abs_diff(&partner.scale(sign)) < tol::NUM);
            }
        }
    }

    #[test]
    fn completeness() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for d in 2..=5 {
            let m = ComplexMatrix::from_fn(d, d, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            for kind in BasisKind::ALL {
                let b = basis(kind, d).unwrap();
                let mut sum = ComplexMatrix::zeros(d, d);
                for i in 0..b.len() {
                    let c = hs_inner(b.element(i), &m).unwrap() / b.norm_sqr(i);
                    sum += &b.element(i).scale(c);
                }
                assert!(sum.max_abs_diff(&m) < 1e-10);
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        for d in 1..=16usize {
            for x in -3 * d as i64..=3 * d as i64 {
                let want = if x.rem_euclid(d as i64) == 0 { d as f64 } else { 0.0 };
                assert!((root_of_unity_sum(d, x) - want).norm() < 1e-12, "d={d} x={x}");
            }
        }
    }

    #[test]
    fn qubit_bases_are_pauli() {
        let o = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::i();
        let s1 = ComplexMatrix::from_rows([[o, one], [one, o]]);
        let s2 = ComplexMatrix::from_rows([[o, -i], [i, o]]);
        let s3 = ComplexMatrix::from_rows([[one, o], [o, -one]]);
        let id = ComplexMatrix::identity(2);
        let sp = ComplexMatrix::unit(2, 0, 1);
        let sm = ComplexMatrix::unit(2, 1, 0);
        let r = 0.5f64.sqrt();

        let check = |b: &OperatorBasis, want: [&ComplexMatrix; 4]| {
            for (m, w) in b.elements().iter().zip(want) {
                assert!(m.max_abs_diff(w) < tol::NUM, "{m:?} vs {w:?}");
            }
        };
        check(&ggb_basis(2).unwrap(), [&id, &s1, &s2, &s3]);
        check(&wob_basis(2).unwrap(), [&id, &s1, &s3, &s2.scale(i)]);
        // POB order is T00, T1-1, T10, T11
        check(&pob_basis(2).unwrap(), [&id.scale(r), &sm, &s3.scale(r), &sp.scale(-1.0)]);
        let _ = tensor(&id, &id);
    }

    #[test]
    fn dimension_errors() {
        for kind in BasisKind::ALL {
            assert!(matches!(basis(kind, 1), Err(Error::Domain(_))));
            assert!(matches!(basis(kind, 0), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn cache_is_shared() {
        let a = basis(BasisKind::Pob, 4).unwrap();
        let b = basis(BasisKind::Pob, 4).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let handles: Vec<_> = (0..8).map(|_| std::thread::spawn(|| basis(BasisKind::Wob, 7).unwrap())).collect();
        let got: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(got.windows(2).all(|w| w[0].elements() == w[1].elements()));
    }

    #[test]
    fn labels_parse_back_to_kind() {
        assert_eq!("WOB".parse::<BasisKind>().unwrap(), BasisKind::Wob);
        assert!("foo".parse::<BasisKind>().is_err());
        assert_eq!(BasisLabel::Polarization { l: 1, m: -1 }.to_string(), "T(1,-1)");
    }
}
