use std::fs;

use num_complex::Complex64 as C64;
use serde::Serialize;

use quditbloch::bases::{self, BasisKind};
use quditbloch::bloch::{self, Convention};
use quditbloch::density::{BipartiteState, DensityMatrix};
use quditbloch::entanglement::{
    self, hs_measure_isotropic, isotropic_threshold, nearest_separable_numeric, GilbertConfig, HSMeasureResult,
    PlaneFamily, RegionLabel,
};
use quditbloch::error::Error;
use quditbloch::linalg::{self, ComplexMatrix, MatrixJson};
use quditbloch::states;
use quditbloch::tol;

use crate::output::{format_float, to_csv, to_json};
use crate::{CliError, ConventionArg, DecomposeArgs, Format, MakeArgs, MeasureArgs, MeasureFamily, StateFamily};

fn required<T>(value: Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {what}")))
}

#[derive(Serialize)]
struct LabeledMatrix {
    label: String,
    #[serde(flatten)]
    matrix: MatrixJson,
}

#[derive(Serialize)]
struct BasisDump {
    kind: BasisKind,
    dim: usize,
    ortho_const: f64,
    elements: Vec<LabeledMatrix>,
}

pub fn basis_dump(kind: BasisKind, dim: usize, format: Format) -> Result<Vec<u8>, CliError> {
    let b = bases::basis(kind, dim)?;
    match format {
        Format::Json => to_json(&BasisDump {
            kind,
            dim,
            ortho_const: b.ortho_const(),
            elements: b
                .labels()
                .iter()
                .zip(b.elements())
                .map(|(l, m)| LabeledMatrix { label: l.to_string(), matrix: m.into() })
                .collect(),
        }),
        Format::Csv => {
            let mut rows = Vec::new();
            for (label, m) in b.labels().iter().zip(b.elements()) {
                for i in 0..dim {
                    for j in 0..dim {
                        let z = m[(i, j)];
                        rows.push(vec![label.to_string(), i.to_string(), j.to_string(), format_float(z.re), format_float(z.im)]);
                    }
                }
            }
            to_csv(&["label", "row", "col", "re", "im"], rows)
        }
    }
}

#[derive(Serialize)]
struct StateJson {
    family: &'static str,
    local_dim: usize,
    #[serde(flatten)]
    matrix: MatrixJson,
}

pub fn state_make(args: &MakeArgs) -> Result<Vec<u8>, CliError> {
    let (family, state) = match args.family {
        StateFamily::Bell => ("bell", states::bell_state(required(args.dim, "dim", "bell")?)?),
        StateFamily::Isotropic => (
            "isotropic",
            states::isotropic_state(required(args.dim, "dim", "isotropic")?, required(args.alpha, "alpha", "isotropic")?)?,
        ),
        StateFamily::Qubit2p => (
            "qubit2p",
            states::two_param_qubit(required(args.alpha, "alpha", "qubit2p")?, required(args.beta, "beta", "qubit2p")?)?,
        ),
        StateFamily::Qutrit2p => (
            "qutrit2p",
            states::two_param_qutrit(required(args.alpha, "alpha", "qutrit2p")?, required(args.beta, "beta", "qutrit2p")?)?,
        ),
        StateFamily::Weylproj => (
            "weylproj",
            states::weyl_bell_projector(
                required(args.dim, "dim", "weylproj")?,
                required(args.n, "n", "weylproj")?,
                required(args.k, "k", "weylproj")?,
            )?,
        ),
    };
    to_json(&StateJson { family, local_dim: state.local_dim(), matrix: state.matrix().into() })
}

/// A state file: the matrix schema plus an optional `local_dim`.
#[derive(serde::Deserialize)]
struct StateFile {
    #[serde(flatten)]
    matrix: MatrixJson,
    local_dim: Option<usize>,
}

fn read_state(path: &std::path::Path) -> Result<(ComplexMatrix, Option<usize>), CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input { path: path.to_path_buf(), message: e.to_string() })?;
    let m = ComplexMatrix::try_from(file.matrix)?;
    if !m.is_hermitian(tol::HERM) {
        return Err(Error::Contract(format!("{}: state is not Hermitian", path.display())).into());
    }
    if (m.trace() - C64::new(1.0, 0.0)).norm() > tol::TRACE {
        return Err(Error::Domain(format!("{}: state trace is not 1", path.display())).into());
    }
    Ok((m, file.local_dim))
}

#[derive(Serialize)]
struct Decomposition {
    kind: BasisKind,
    dim: usize,
    convention: Convention,
    labels: Vec<String>,
    re: Vec<f64>,
    im: Vec<f64>,
    radius: f64,
    radius_bound: f64,
    purity: f64,
    is_physical: bool,
}

#[derive(Serialize)]
struct Components {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Components {
    fn new(v: &[C64]) -> Self {
        Components { re: v.iter().map(|z| z.re).collect(), im: v.iter().map(|z| z.im).collect() }
    }
}

#[derive(Serialize)]
struct BipartiteDecomposition {
    kind: BasisKind,
    local_dim: usize,
    labels: Vec<String>,
    local_a: Components,
    local_b: Components,
    correlation: MatrixJson,
    is_physical: bool,
}

pub fn decompose(args: &DecomposeArgs) -> Result<Vec<u8>, CliError> {
    let (m, local_dim) = read_state(&args.input)?;
    let min_eig = linalg::min_eigenvalue(&m)?;
    let is_physical = min_eig >= -tol::PSD;
    let convention = match args.convention {
        ConventionArg::Coeff => Convention::ExpansionCoefficient,
        ConventionArg::Expval => Convention::ExpectationValue,
    };
    let d = m.rows();
    let rho = DensityMatrix::new_unchecked(m);
    if args.bipartite {
        let local = match local_dim {
            Some(l) => l,
            None => {
                let l = (d as f64).sqrt().round() as usize;
                if l * l != d {
                    return Err(Error::Shape(format!("dimension {d} is not a square; give local_dim")).into());
                }
                l
            }
        };
        let state = BipartiteState::from_matrix_unchecked(local, rho.into_matrix());
        let dec = bloch::bipartite_decompose(&state, args.kind)?;
        return to_json(&BipartiteDecomposition {
            kind: args.kind,
            local_dim: local,
            labels: dec.labels()?.iter().map(|l| l.to_string()).collect(),
            local_a: Components::new(&dec.local_a),
            local_b: Components::new(&dec.local_b),
            correlation: (&dec.correlation).into(),
            is_physical,
        });
    }
    let b = bloch::bloch_encode(&rho, args.kind, convention)?;
    to_json(&Decomposition {
        kind: args.kind,
        dim: d,
        convention,
        labels: b.labels().iter().map(|l| l.to_string()).collect(),
        re: b.components().iter().map(|z| z.re).collect(),
        im: b.components().iter().map(|z| z.im).collect(),
        radius: b.norm(),
        radius_bound: match convention {
            Convention::ExpansionCoefficient => bloch::radius_bound(args.kind, d),
            Convention::ExpectationValue => bloch::radius_bound(args.kind, d) * args.kind.ortho_const(d),
        },
        purity: bloch::purity(&rho),
        is_physical,
    })
}

#[derive(Serialize)]
struct MeasureReport {
    family: &'static str,
    local_dim: usize,
    region: RegionLabel,
    #[serde(rename = "D")]
    distance: f64,
    /// Maximal violation of the optimal witness; absent when not entangled.
    #[serde(rename = "B")]
    violation: Option<f64>,
    rho0: MatrixJson,
    witness: Option<MatrixJson>,
    ppt_min_eigenvalue: f64,
    #[serde(rename = "oracle_D", skip_serializing_if = "Option::is_none")]
    oracle_distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleInfo>,
}

#[derive(Serialize)]
struct OracleInfo {
    lower_bound: f64,
    iterations: usize,
    converged: bool,
    support: usize,
}

pub fn measure(args: &MeasureArgs, seed: u64) -> Result<Vec<u8>, CliError> {
    let (family, state, region, result) = match args.family {
        MeasureFamily::Isotropic => {
            let d = required(args.dim, "dim", "isotropic")?;
            let state = states::isotropic_state(d, args.alpha)?;
            if args.alpha > isotropic_threshold(d) + states::PLANE_EPS {
                ("isotropic", state, RegionLabel::EntangledRegionI, Some(hs_measure_isotropic(d, args.alpha)?))
            } else {
                ("isotropic", state, RegionLabel::Separable, None)
            }
        }
        MeasureFamily::Qubit2p | MeasureFamily::Qutrit2p => {
            let (name, fam) = match args.family {
                MeasureFamily::Qubit2p => ("qubit2p", PlaneFamily::Qubit),
                _ => ("qutrit2p", PlaneFamily::Qutrit),
            };
            let beta = required(args.beta, "beta", name)?;
            let state = fam.state(args.alpha, beta)?;
            let (region, result) = match fam {
                PlaneFamily::Qubit => entanglement::hs_measure_qubit_plane(args.alpha, beta)?,
                PlaneFamily::Qutrit => entanglement::hs_measure_qutrit_plane(args.alpha, beta)?,
            };
            (name, state, region, result)
        }
    };
    let ppt = entanglement::ppt_verdict(&state)?;
    let (oracle_distance, oracle) = if args.oracle {
        let config = GilbertConfig { seed, ..GilbertConfig::default() };
        let r = nearest_separable_numeric(&state, &config)?;
        let info = OracleInfo { lower_bound: r.lower_bound, iterations: r.iterations, converged: r.converged, support: r.support };
        (Some(r.distance), Some(info))
    } else {
        (None, None)
    };
    let (distance, violation, rho0, witness) = match result {
        Some(HSMeasureResult { distance, nearest_separable, witness, max_violation }) => {
            (distance, Some(max_violation), nearest_separable.matrix().into(), Some((&witness).into()))
        }
        // a separable state is its own nearest separable state
        None => (0.0, None, state.matrix().into(), None),
    };
    to_json(&MeasureReport {
        family,
        local_dim: state.local_dim(),
        region,
        distance,
        violation,
        rho0,
        witness,
        ppt_min_eigenvalue: ppt.min_eigenvalue,
        oracle_distance,
        oracle,
    })
}
