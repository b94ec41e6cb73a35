use littlewood_core::{project, FloatModeReport, Instance, Scale, VerificationReport};
use serde::{Deserialize, Serialize};

use super::vector_strings;
use crate::error::Result;

pub const REPORT_SCHEMA: &str = "littlewood-report/1";

const HEADER: &str = "# littlewood verification report, schema littlewood-report/1\n";

/// On-disk form of a [`VerificationReport`], with the projection used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema: String,
    pub mode: String,
    pub norm: String,
    pub n: usize,
    pub dimension: usize,
    pub p_exact: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_projected: Option<String>,
    pub bound: String,
    pub k: u64,
    pub delta: u8,
    pub chain_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<ProjectionSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionSection {
    pub direction: Vec<String>,
    /// `s` itself, or `sqrt:<s²>` when `s` is a square root.
    pub scale: String,
    pub coefficients: Vec<String>,
    pub target_value: String,
}

pub(crate) fn scale_string(scale: &Scale) -> String {
    match scale {
        Scale::Rational(s) => s.to_string(),
        Scale::SqrtRational(sq) => format!("sqrt:{}", sq),
    }
}

pub fn report_to_string(instance: &Instance, report: &VerificationReport) -> Result<String> {
    let projected = project(instance)?;
    let file = ReportFile {
        schema: REPORT_SCHEMA.to_owned(),
        mode: "exact".to_owned(),
        norm: instance.norm().to_string(),
        n: instance.n(),
        dimension: instance.dim(),
        p_exact: report.p_exact.to_string(),
        p_projected: Some(report.p_projected.to_string()),
        bound: report.bound.to_string(),
        k: report.k,
        delta: report.delta.value(),
        chain_holds: report.chain_holds,
        tight: Some(report.tight),
        perturbed: Some(report.perturbed),
        norm_estimate: None,
        projection: Some(ProjectionSection {
            direction: vector_strings(&projected.witness.direction),
            scale: scale_string(&projected.scale),
            coefficients: projected.coefficients.iter().map(ToString::to_string).collect(),
            target_value: projected.target_value.to_string(),
        }),
    };
    Ok(format!("{HEADER}{}", toml::to_string(&file)?))
}

pub fn float_report_to_string(instance: &Instance, report: &FloatModeReport) -> Result<String> {
    let n = instance.n() as u64;
    let file = ReportFile {
        schema: REPORT_SCHEMA.to_owned(),
        mode: "float".to_owned(),
        norm: instance.norm().to_string(),
        n: instance.n(),
        dimension: instance.dim(),
        p_exact: report.p_exact.to_string(),
        p_projected: None,
        bound: report.bound.to_string(),
        k: report.k,
        delta: littlewood_core::delta(n, report.k).value(),
        chain_holds: report.holds,
        tight: None,
        perturbed: None,
        norm_estimate: Some(report.norm_estimate),
        projection: None,
    };
    Ok(format!("{HEADER}{}", toml::to_string(&file)?))
}
