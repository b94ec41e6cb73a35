use std::path::{Path, PathBuf};
use std::time::Duration;

use littlewood_core::{FloatModeReport, Instance, RVector, Rational, VerificationReport};
use serde::Serialize;

use super::config::Mode;
use crate::error::{Error, Result};
use crate::formats::{instance_to_string, write_string, InstanceFile};

pub const CAMPAIGN_REPORT_SCHEMA: &str = "littlewood-campaign-report/1";

/// What a single campaign instance produced.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Exact(VerificationReport),
    Float(FloatModeReport),
    /// `max_x P(Σ εᵢvᵢ = x)` against `C(n, ⌊n/2⌋) / 2ⁿ`.
    Uniform { argmax: RVector, probability: Rational, bound: Rational },
}

impl Outcome {
    pub fn p_exact(&self) -> &Rational {
        match self {
            Outcome::Exact(r) => &r.p_exact,
            Outcome::Float(r) => &r.p_exact,
            Outcome::Uniform { probability, .. } => probability,
        }
    }

    pub fn bound(&self) -> &Rational {
        match self {
            Outcome::Exact(r) => &r.bound,
            Outcome::Float(r) => &r.bound,
            Outcome::Uniform { bound, .. } => bound,
        }
    }

    /// The inequality under test holds.
    pub fn holds(&self) -> bool {
        match self {
            Outcome::Exact(r) => r.chain_holds,
            Outcome::Float(r) => r.holds,
            Outcome::Uniform { probability, bound, .. } => probability <= bound,
        }
    }

    pub fn tight(&self) -> bool {
        self.p_exact() == self.bound()
    }

    pub(crate) fn is_violation(&self, mode: Mode) -> bool {
        !self.holds() || (mode == Mode::Extremal && !self.tight())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub index: u64,
    pub instance: Instance,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceError {
    pub index: u64,
    pub message: String,
    pub capacity: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignReport {
    pub mode: Mode,
    pub seed: u64,
    pub instances: u64,
    pub tight: u64,
    pub perturbed: u64,
    pub violations: Vec<Violation>,
    pub errors: Vec<InstanceError>,
    /// Largest `p_exact / bound` over non-tight instances, with its index.
    pub max_ratio: Option<(u64, Rational)>,
    /// Not written to the report file, which must not depend on timing.
    pub wall_time: Duration,
}

impl CampaignReport {
    pub(crate) fn empty(mode: Mode, seed: u64) -> Self {
        CampaignReport {
            mode,
            seed,
            instances: 0,
            tight: 0,
            perturbed: 0,
            violations: Vec::new(),
            errors: Vec::new(),
            max_ratio: None,
            wall_time: Duration::ZERO,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn status(&self) -> &'static str {
        if self.is_verified() {
            "verified"
        } else {
            "violations"
        }
    }

    /// 0 verified, 1 violation found, 3 capacity exceeded, 2 other invalid input.
    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            1
        } else if self.errors.iter().any(|e| e.capacity) {
            3
        } else if !self.errors.is_empty() {
            2
        } else {
            0
        }
    }

    pub(crate) fn record(&mut self, index: u64, instance: Instance, result: littlewood_core::Result<Outcome>) {
        self.instances += 1;
        let outcome = match result {
            Ok(o) => o,
            Err(e) => {
                let capacity = matches!(e, littlewood_core::Error::Capacity { .. });
                self.errors.push(InstanceError { index, message: e.to_string(), capacity });
                return;
            }
        };
        if outcome.tight() {
            self.tight += 1;
        } else if outcome.bound().is_positive() {
            let ratio = outcome.p_exact() / outcome.bound();
            if self.max_ratio.as_ref().is_none_or(|(_, best)| &ratio > best) {
                self.max_ratio = Some((index, ratio));
            }
        }
        if matches!(&outcome, Outcome::Exact(r) if r.perturbed) {
            self.perturbed += 1;
        }
        if outcome.is_violation(self.mode) {
            self.violations.push(Violation { index, instance, outcome });
        }
    }

    pub(crate) fn record_generation_error(&mut self, index: u64, error: &Error) {
        self.instances += 1;
        let capacity = error.exit_code() == 3;
        self.errors.push(InstanceError { index, message: error.to_string(), capacity });
    }

    /// Deterministic TOML rendering; identical campaigns give identical bytes.
    pub fn to_file_string(&self) -> Result<String> {
        let file = ReportFile {
            schema: CAMPAIGN_REPORT_SCHEMA,
            mode: self.mode.name(),
            seed: self.seed,
            status: self.status(),
            instances: self.instances,
            tight: self.tight,
            perturbed: self.perturbed,
            violation_count: self.violations.len() as u64,
            error_count: self.errors.len() as u64,
            max_ratio: self.max_ratio.as_ref().map(|(_, r)| r.to_string()),
            max_ratio_index: self.max_ratio.as_ref().map(|(i, _)| *i),
            violations: self.violations.iter().map(ViolationEntry::new).collect(),
            errors: self
                .errors
                .iter()
                .map(|e| ErrorEntry { index: e.index, message: e.message.clone() })
                .collect(),
        };
        Ok(format!(
            "# littlewood campaign report, schema {CAMPAIGN_REPORT_SCHEMA}\n{}",
            toml::to_string(&file)?
        ))
    }

    /// Writes one replayable instance file per violation into `dir`.
    pub fn write_replay_files(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        if self.violations.is_empty() {
            return Ok(Vec::new());
        }
        std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.to_owned(), source })?;
        let mut written = Vec::new();
        for v in &self.violations {
            let path = dir.join(format!("violation-{:08}.toml", v.index));
            write_string(&path, &instance_to_string(&v.instance)?)?;
            written.push(path);
        }
        Ok(written)
    }
}

#[derive(Serialize)]
struct ReportFile {
    schema: &'static str,
    mode: &'static str,
    seed: u64,
    status: &'static str,
    instances: u64,
    tight: u64,
    perturbed: u64,
    violation_count: u64,
    error_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_ratio: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_ratio_index: Option<u64>,
    violations: Vec<ViolationEntry>,
    errors: Vec<ErrorEntry>,
}

#[derive(Serialize)]
struct ViolationEntry {
    index: u64,
    kind: &'static str,
    p_exact: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_projected: Option<String>,
    bound: String,
    holds: bool,
    tight: bool,
    instance: InstanceFile,
}

impl ViolationEntry {
    fn new(v: &Violation) -> Self {
        let (kind, p_projected) = match &v.outcome {
            Outcome::Exact(r) => ("exact", Some(r.p_projected.to_string())),
            Outcome::Float(_) => ("float", None),
            Outcome::Uniform { .. } => ("uniform", None),
        };
        ViolationEntry {
            index: v.index,
            kind,
            p_exact: v.outcome.p_exact().to_string(),
            p_projected,
            bound: v.outcome.bound().to_string(),
            holds: v.outcome.holds(),
            tight: v.outcome.tight(),
            instance: InstanceFile::from_instance(&v.instance),
        }
    }
}

#[derive(Serialize)]
struct ErrorEntry {
    index: u64,
    message: String,
}
