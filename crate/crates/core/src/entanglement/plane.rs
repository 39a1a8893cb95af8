//! Region structure and closed forms for the two-parameter qubit and qutrit families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::density::BipartiteState;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{
    self, composite_operator, qubit_plane_status, qutrit_plane_status, CompositeTag, PlaneStatus, PLANE_EPS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    Unphysical,
    /// PPT, hence separable for these families. Boundary points belong here.
    Separable,
    EntangledRegionI,
    EntangledRegionII,
}

impl RegionLabel {
    pub fn is_entangled(self) -> bool {
        matches!(self, RegionLabel::EntangledRegionI | RegionLabel::EntangledRegionII)
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionLabel::Unphysical => "Unphysical",
            RegionLabel::Separable => "Separable",
            RegionLabel::EntangledRegionI => "EntangledRegionI",
            RegionLabel::EntangledRegionII => "EntangledRegionII",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaneFamily {
    Qubit,
    Qutrit,
}

impl FromStr for PlaneFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qubit" | "qubit2p" => Ok(PlaneFamily::Qubit),
            "qutrit" | "qutrit2p" => Ok(PlaneFamily::Qutrit),
            other => Err(Error::domain(format!("unknown two-parameter family '{other}'"))),
        }
    }
}

impl PlaneFamily {
    pub fn local_dim(self) -> usize {
        match self {
            PlaneFamily::Qubit => 2,
            PlaneFamily::Qutrit => 3,
        }
    }

    pub fn status(self, alpha: f64, beta: f64) -> PlaneStatus {
        match self {
            PlaneFamily::Qubit => qubit_plane_status(alpha, beta),
            PlaneFamily::Qutrit => qutrit_plane_status(alpha, beta),
        }
    }

    /// The state at `(α, β)` without a positivity check.
    pub fn state_unchecked(self, alpha: f64, beta: f64) -> BipartiteState {
        match self {
            PlaneFamily::Qubit => states::two_param_qubit_unchecked(alpha, beta),
            PlaneFamily::Qutrit => states::two_param_qutrit_unchecked(alpha, beta),
        }
    }

    pub fn state(self, alpha: f64, beta: f64) -> Result<BipartiteState> {
        match self {
            PlaneFamily::Qubit => states::two_param_qubit(alpha, beta),
            PlaneFamily::Qutrit => states::two_param_qutrit(alpha, beta),
        }
    }

    /// Signed excess over the Region I boundary; positive inside Region I.
    fn excess_i(self, alpha: f64, beta: f64) -> f64 {
        match self {
            PlaneFamily::Qubit => alpha - beta / 3.0 - 1.0 / 3.0,
            PlaneFamily::Qutrit => alpha - beta / 8.0 - 0.25,
        }
    }

    /// Signed excess over the Region II boundary; positive inside Region II.
    fn excess_ii(self, alpha: f64, beta: f64) -> f64 {
        match self {
            PlaneFamily::Qubit => -beta - 1.0 - alpha,
            PlaneFamily::Qutrit => 1.25 * beta - 0.5 - alpha,
        }
    }

    pub fn classify(self, alpha: f64, beta: f64) -> RegionLabel {
        if !alpha.is_finite() || !beta.is_finite() || !self.status(alpha, beta).physical {
            RegionLabel::Unphysical
        } else if self.excess_i(alpha, beta) > PLANE_EPS {
            RegionLabel::EntangledRegionI
        } else if self.excess_ii(alpha, beta) > PLANE_EPS {
            RegionLabel::EntangledRegionII
        } else {
            RegionLabel::Separable
        }
    }

    /// Nearest separable point in the plane, for an entangled region.
    pub fn nearest_point(self, region: RegionLabel, alpha: f64, beta: f64) -> Option<(f64, f64)> {
        match (self, region) {
            (PlaneFamily::Qubit, RegionLabel::EntangledRegionI) => Some((1.0 / 3.0 + beta / 3.0, beta)),
            (PlaneFamily::Qubit, RegionLabel::EntangledRegionII) => {
                Some(((-1.0 + 2.0 * alpha - beta) / 3.0, (-2.0 - 2.0 * alpha + beta) / 3.0))
            }
            (PlaneFamily::Qutrit, RegionLabel::EntangledRegionI) => Some((0.25 + beta / 8.0, beta)),
            (PlaneFamily::Qutrit, RegionLabel::EntangledRegionII) => {
                Some(((-2.0 + 20.0 * alpha + 5.0 * beta) / 24.0, (2.0 + 4.0 * alpha + beta) / 6.0))
            }
            _ => None,
        }
    }

    /// Closed-form HS distance to the separable set, zero outside the entangled regions.
    pub fn closed_distance(self, alpha: f64, beta: f64) -> f64 {
        let s3 = 3f64.sqrt();
        let s2 = 2f64.sqrt();
        match (self, self.classify(alpha, beta)) {
            (PlaneFamily::Qubit, RegionLabel::EntangledRegionI) => s3 / 2.0 * (alpha - 1.0 / 3.0 - beta / 3.0),
            (PlaneFamily::Qubit, RegionLabel::EntangledRegionII) => (-alpha - 1.0 - beta) / (2.0 * s3),
            (PlaneFamily::Qutrit, RegionLabel::EntangledRegionI) => 2.0 * s2 / 3.0 * (alpha - 0.25 - beta / 8.0),
            (PlaneFamily::Qutrit, RegionLabel::EntangledRegionII) => (-4.0 * alpha - 2.0 + 5.0 * beta) / (6.0 * s2),
            _ => 0.0,
        }
    }

    /// Closed-form optimal witness of an entangled region; constant across the region.
    pub fn closed_witness(self, region: RegionLabel) -> Result<ComplexMatrix> {
        let d = self.local_dim();
        let id = ComplexMatrix::identity(d * d);
        let s3 = 3f64.sqrt();
        let s2 = 2f64.sqrt();
        let m = match (self, region) {
            (PlaneFamily::Qubit, RegionLabel::EntangledRegionI) => {
                let sigma = composite_operator(CompositeTag::Sigma, 2)?.matrix;
                (&id - &sigma).scale(1.0 / (2.0 * s3))
            }
            (PlaneFamily::Qubit, RegionLabel::EntangledRegionII) => {
                let (x, z) = states::qubit_plane_operators();
                (&(&id + &x) - &z).scale(1.0 / (2.0 * s3))
            }
            (PlaneFamily::Qutrit, RegionLabel::EntangledRegionI) => {
                let u = composite_operator(CompositeTag::U, 3)?.matrix;
                (&id.scale(2.0) - &u).scale(1.0 / (6.0 * s2))
            }
            (PlaneFamily::Qutrit, RegionLabel::EntangledRegionII) => {
                let u1 = composite_operator(CompositeTag::U1, 3)?.matrix;
                let u2 = composite_operator(CompositeTag::U2, 3)?.matrix;
                (&(&id.scale(2.0) + &u1) - &u2).scale(1.0 / (6.0 * s2))
            }
            (_, other) => return Err(Error::domain(format!("no witness for region {other}"))),
        };
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hs_inner, hs_norm};

    #[test]
    fn classification_examples() {
        use RegionLabel::*;
        let q = PlaneFamily::Qubit;
        assert_eq!(q.classify(0.9, 0.0), EntangledRegionI);
        assert_eq!(q.classify(-0.9, 0.0), Unphysical);
        assert_eq!(q.classify(-0.8, -1.6), EntangledRegionII);
        assert_eq!(q.classify(0.0, 0.0), Separable);
        assert_eq!(q.classify(1.0 / 3.0, 0.0), Separable);
        assert_eq!(q.classify(1.0, 0.0), EntangledRegionI);
        let t = PlaneFamily::Qutrit;
        assert_eq!(t.classify(0.9, 0.0), EntangledRegionI);
        assert_eq!(t.classify(0.1, 0.8), EntangledRegionII);
        assert_eq!(t.classify(-0.4, 0.9), Unphysical);
        assert_eq!(t.classify(0.25, 0.0), Separable);
        assert_eq!(t.classify(f64::NAN, 0.0), Unphysical);
    }

    #[test]
    fn nearest_points_are_on_the_boundary_and_orthogonal() {
        let cases = [
            (PlaneFamily::Qubit, 0.8, 0.1),
            (PlaneFamily::Qubit, -0.8, -1.6),
            (PlaneFamily::Qutrit, 0.7, 0.1),
            (PlaneFamily::Qutrit, 0.1, 0.8),
        ];
        for (fam, a, b) in cases {
            let region = fam.classify(a, b);
            assert!(region.is_entangled());
            let (a0, b0) = fam.nearest_point(region, a, b).unwrap();
            assert_eq!(fam.classify(a0, b0), RegionLabel::Separable);
            let rho = fam.state_unchecked(a, b).into_matrix();
            let rho0 = fam.state_unchecked(a0, b0).into_matrix();
            let diff = &rho0 - &rho;
            assert!((hs_norm(&diff).unwrap() - fam.closed_distance(a, b)).abs() < 1e-12);
            // the in-plane boundary direction is orthogonal to ρ₀ - ρ
            let (a1, b1) = fam.nearest_point(region, a + 0.01, b + 0.02).unwrap();
            let along = &fam.state_unchecked(a1, b1).into_matrix() - &rho0;
            assert!(hs_inner(&along, &diff).unwrap().re.abs() < 1e-12);
        }
    }

    #[test]
    fn closed_witness_annihilates_nearest_point() {
        use RegionLabel::*;
        for (fam, region, a, b) in [
            (PlaneFamily::Qubit, EntangledRegionI, 0.8, 0.1),
            (PlaneFamily::Qubit, EntangledRegionII, -0.8, -1.6),
            (PlaneFamily::Qutrit, EntangledRegionI, 0.7, 0.1),
            (PlaneFamily::Qutrit, EntangledRegionII, 0.1, 0.8),
        ] {
            let w = fam.closed_witness(region).unwrap();
            let (a0, b0) = fam.nearest_point(region, a, b).unwrap();
            let rho0 = fam.state_unchecked(a0, b0).into_matrix();
            assert!(hs_inner(&rho0, &w).unwrap().norm() < 1e-12);
            let rho = fam.state_unchecked(a, b).into_matrix();
            assert!((hs_inner(&rho, &w).unwrap().re + fam.closed_distance(a, b)).abs() < 1e-12);
        }
        assert!(PlaneFamily::Qubit.closed_witness(Separable).is_err());
    }
}
