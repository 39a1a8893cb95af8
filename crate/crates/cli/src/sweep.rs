//! Parameter-plane sweeps for the two-parameter families.

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use quditbloch::density::{partial_transpose, BipartiteState};
use quditbloch::entanglement::{PlaneFamily, RegionLabel};
use quditbloch::error::{Error, Result};
use quditbloch::linalg::{self, Subsystem};

use crate::output::{format_float, to_csv, to_json};
use crate::{CliError, Format, PlaneArg, SweepArgs};

/// `steps` equally spaced values from `min` to `max`, both included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub fn value(&self, i: usize) -> f64 {
        let t = i as f64 / (self.steps - 1) as f64;
        self.min * (1.0 - t) + self.max * t
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.steps < 2 || self.min >= self.max || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::Domain(format!("{name} range needs finite min < max and at least 2 steps")));
        }
        Ok(())
    }
}

pub fn parse_range(s: &str) -> std::result::Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [min, max, steps] = parts.as_slice() else {
        return Err(format!("expected MIN:MAX:STEPS, got '{s}'"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}"));
    let steps = steps.trim().parse::<usize>().map_err(|e| format!("'{steps}': {e}"))?;
    Ok(Range { min: num(min)?, max: num(max)?, steps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepColumn {
    Region,
    /// HS measure `D`.
    #[value(name = "D", alias = "hs_measure")]
    HsMeasure,
    #[value(name = "min_eig", alias = "min_eigenvalue")]
    MinEigenvalue,
    #[value(name = "ppt_min_eig", alias = "ppt_min_eigenvalue")]
    PptMinEigenvalue,
}

impl SweepColumn {
    const ALL: [SweepColumn; 4] =
        [SweepColumn::Region, SweepColumn::HsMeasure, SweepColumn::MinEigenvalue, SweepColumn::PptMinEigenvalue];

    fn header(self) -> &'static str {
        match self {
            SweepColumn::Region => "region",
            SweepColumn::HsMeasure => "D",
            SweepColumn::MinEigenvalue => "min_eig",
            SweepColumn::PptMinEigenvalue => "ppt_min_eig",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub family: PlaneFamily,
    pub alpha: Range,
    pub beta: Range,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub beta: f64,
    pub region: RegionLabel,
    /// `None` for separable and unphysical points.
    #[serde(rename = "D")]
    pub distance: Option<f64>,
    pub min_eig: f64,
    pub ppt_min_eig: f64,
}

fn evaluate(family: PlaneFamily, alpha: f64, beta: f64) -> Result<SweepRow> {
    let region = family.classify(alpha, beta);
    let state: BipartiteState = family.state_unchecked(alpha, beta);
    let min_eig = linalg::min_eigenvalue(state.matrix())?;
    let ppt_min_eig = linalg::min_eigenvalue(&partial_transpose(&state, Subsystem::B)?)?;
    let distance = region.is_entangled().then(|| family.closed_distance(alpha, beta));
    Ok(SweepRow { alpha, beta, region, distance, min_eig, ppt_min_eig })
}

/// One row per grid point, `β` in the outer loop and `α` in the inner one.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.alpha.validate("alpha")?;
    spec.beta.validate("beta")?;
    let n = spec.alpha.steps;
    (0..n * spec.beta.steps)
        .into_par_iter()
        .map(|idx| evaluate(spec.family, spec.alpha.value(idx % n), spec.beta.value(idx / n)))
        .collect()
}

#[derive(Serialize)]
struct SweepJson {
    family: &'static str,
    columns: Vec<&'static str>,
    rows: Vec<serde_json::Map<String, serde_json::Value>>,
}

pub(crate) fn sweep_command(args: &SweepArgs) -> std::result::Result<Vec<u8>, CliError> {
    let (name, family) = match args.family {
        PlaneArg::Qubit2p => ("qubit2p", PlaneFamily::Qubit),
        PlaneArg::Qutrit2p => ("qutrit2p", PlaneFamily::Qutrit),
    };
    let rows = run_sweep(&SweepSpec { family, alpha: args.alpha, beta: args.beta })?;
    let columns: Vec<SweepColumn> = if args.outputs.is_empty() {
        SweepColumn::ALL.to_vec()
    } else {
        SweepColumn::ALL.into_iter().filter(|c| args.outputs.contains(c)).collect()
    };
    let mut header = vec!["alpha", "beta"];
    header.extend(columns.iter().map(|c| c.header()));
    match args.format {
        Format::Csv => to_csv(
            &header,
            rows.iter().map(|r| {
                let mut rec = vec![format_float(r.alpha), format_float(r.beta)];
                for c in &columns {
                    rec.push(match c {
                        SweepColumn::Region => r.region.to_string(),
                        SweepColumn::HsMeasure => r.distance.map(format_float).unwrap_or_default(),
                        SweepColumn::MinEigenvalue => format_float(r.min_eig),
                        SweepColumn::PptMinEigenvalue => format_float(r.ppt_min_eig),
                    });
                }
                rec
            }),
        ),
        Format::Json => {
            let json_rows = rows
                .iter()
                .map(|r| {
                    let mut m = serde_json::Map::new();
                    m.insert("alpha".into(), r.alpha.into());
                    m.insert("beta".into(), r.beta.into());
                    for c in &columns {
                        let v = match c {
                            SweepColumn::Region => r.region.to_string().into(),
                            SweepColumn::HsMeasure => r.distance.map_or(serde_json::Value::Null, Into::into),
                            SweepColumn::MinEigenvalue => r.min_eig.into(),
                            SweepColumn::PptMinEigenvalue => r.ppt_min_eig.into(),
                        };
                        m.insert(c.header().into(), v);
                    }
                    m
                })
                .collect();
            to_json(&SweepJson { family: name, columns: header, rows: json_rows })
        }
    }
}
