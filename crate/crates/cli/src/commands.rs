use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use torelli_core::johnson::{
    lemma42_scalar, phi_pipeline, psi_image, psi_pipeline, psi_scalar, BPConfiguration,
    TrulyNestedFamily,
};
use torelli_core::reptheory::{decompose_with_cap, weyl_dimension, IrrepLabel, Partition};
use torelli_core::tensor::{Shape, Tensor};
use torelli_core::BigUint;

use crate::report::{partition, rational};
use crate::CliError;

pub fn dims(partition: &str, g: usize) -> Result<BigUint, CliError> {
    let p: Partition = partition.parse()?;
    Ok(weyl_dimension(&IrrepLabel::new(p, g)?))
}

/// Decomposition of a shape, optionally restricted to one weight band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposeOutput {
    pub shape: String,
    pub genus: usize,
    pub weight: Option<u32>,
    /// Sorted heaviest first.
    pub entries: Vec<(Partition, u64, BigUint)>,
    pub total_dimension: BigUint,
}

pub fn decompose(
    shape: &str,
    g: usize,
    weight: Option<u32>,
    term_cap: u64,
) -> Result<DecomposeOutput, CliError> {
    let shape: Shape = shape.parse()?;
    let full = decompose_with_cap(&shape, g, term_cap)?;
    if !full.dimension_matches() {
        return Err(CliError::Domain(format!(
            "decomposition of {shape} at g = {g} does not account for the full dimension"
        )));
    }
    let r = weight.map_or_else(|| full.clone(), |w| full.band(w));
    let entries = r
        .sorted_entries()
        .into_iter()
        .map(|(p, m)| {
            let d = weyl_dimension(&IrrepLabel::new(p.clone(), g)?);
            Ok((p.clone(), m, d))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(DecomposeOutput {
        shape: shape.to_string(),
        genus: g,
        weight,
        entries,
        total_dimension: r.total_dimension(),
    })
}

impl DecomposeOutput {
    /// One `λ:multiplicity` line per irreducible.
    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|(p, m, _)| format!("{p}:{m}\n"))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "shape": self.shape,
            "genus": self.genus,
            "weight": self.weight,
            "entries": self.entries.iter().map(|(p, m, d)| json!({
                "partition": partition(p),
                "multiplicity": m,
                "dimension": d.to_string(),
            })).collect::<Vec<_>>(),
            "total_dimension": self.total_dimension.to_string(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    /// The image `ψₙ` itself.
    None,
    /// `Φₙ`: into `∧^{n+2}H`.
    Phi,
    /// `Ψₙ`: into `∧ⁿH`.
    Psi,
    /// Traceless projection, single pairs only.
    P,
}

/// Summary of a cycle's image under a pipeline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleSummary {
    pub configuration: String,
    pub pipeline: Pipeline,
    pub shape: String,
    pub terms: usize,
    /// Monomial count per weight band.
    pub histogram: BTreeMap<u32, usize>,
    /// For nested families under `phi`/`psi`: the expected direction and
    /// the exact scalar relating it to the output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proportional: Option<Proportionality>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Proportionality {
    pub direction: String,
    pub scalar: Value,
}

pub fn cycle(
    config: &BPConfiguration,
    pipeline: Pipeline,
    show_terms: bool,
) -> Result<CycleSummary, CliError> {
    let n = config.len();
    let image = psi_image(config)?;
    let out: Tensor = match pipeline {
        Pipeline::None => image,
        Pipeline::Phi => phi_pipeline(n, &image)?,
        Pipeline::Psi => psi_pipeline(n, &image)?,
        Pipeline::P if n == 1 => image.traceless_project_p()?,
        Pipeline::P => {
            return Err(CliError::Domain(format!(
                "pipeline p acts on ∧³H and needs exactly one pair, got {n}"
            )))
        }
    };
    let proportional = match (pipeline, TrulyNestedFamily::new(config.clone())) {
        (Pipeline::Phi, Ok(f)) => Some(lemma42_scalar(&f)?),
        (Pipeline::Psi, Ok(f)) => Some(psi_scalar(&f)?),
        _ => None,
    }
    .map(|cert| Proportionality {
        direction: cert.direction.to_string(),
        scalar: rational(&cert.scalar),
    });
    Ok(CycleSummary {
        configuration: config.to_string(),
        pipeline,
        shape: out.shape().to_string(),
        terms: out.len(),
        histogram: out.band_histogram(),
        proportional,
        tensor: show_terms.then(|| out.to_string()),
    })
}

impl CycleSummary {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let pipeline = serde_json::to_value(self.pipeline).expect("enum serializes");
        let bands: Vec<String> = self
            .histogram
            .iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect();
        writeln!(s, "configuration  {}", self.configuration).unwrap();
        writeln!(
            s,
            "pipeline       {}",
            pipeline.as_str().unwrap_or_default()
        )
        .unwrap();
        writeln!(s, "shape          {}", self.shape).unwrap();
        writeln!(s, "terms          {}", self.terms).unwrap();
        writeln!(s, "weight bands   {}", bands.join(" ")).unwrap();
        if let Some(p) = &self.proportional {
            writeln!(
                s,
                "proportional   {} · ({})",
                p.scalar.as_str().unwrap_or_default(),
                p.direction
            )
            .unwrap();
        }
        if let Some(t) = &self.tensor {
            writeln!(s, "tensor         {t}").unwrap();
        }
        s
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("summaries serialize")
    }
}
