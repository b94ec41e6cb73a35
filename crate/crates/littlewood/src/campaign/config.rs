use std::ops::RangeInclusive;

use littlewood_core::concentration::{MITM_LIMIT, NAIVE_LIMIT};
use littlewood_core::{NormSpec, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::{check_schema, parse_rational};

pub const CONFIG_SCHEMA: &str = "littlewood-campaign/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every multiset of grid points in the unit ball, every reachable target.
    ExhaustiveGrid,
    /// Seeded random instances; half the targets are reachable sums.
    Random,
    /// The equality configurations `vᵢ = c·e₁`, which must be tight.
    Extremal,
    /// `max_x P(Σ εᵢvᵢ = x)` against the uniform bound, ℓ2 unit-ball vectors.
    UniformKleitman,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::ExhaustiveGrid => "exhaustive-grid",
            Mode::Random => "random",
            Mode::Extremal => "extremal",
            Mode::UniformKleitman => "uniform-kleitman",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub mode: Mode,
    pub n_range: RangeInclusive<usize>,
    pub d_range: RangeInclusive<usize>,
    pub norms: Vec<NormSpec>,
    /// Coordinate values for exhaustive-grid mode.
    pub grid: Vec<Rational>,
    /// Sampling grid `{-g, …, g} / g` for random modes.
    pub grid_denominator: u64,
    pub seed: u64,
    /// Maximum number of instances; `None` runs the whole stream.
    pub budget: Option<u64>,
    pub workers: usize,
}

/// On-disk form of a [`CampaignConfig`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub schema: String,
    pub mode: Mode,
    pub n_min: usize,
    pub n_max: usize,
    #[serde(default = "default_dim")]
    pub d_min: usize,
    #[serde(default = "default_dim")]
    pub d_max: usize,
    #[serde(default)]
    pub norms: Vec<String>,
    #[serde(default)]
    pub grid: Vec<String>,
    #[serde(default = "default_denominator")]
    pub grid_denominator: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default = "default_workers")]
    pub workers: usize,
}

fn default_dim() -> usize {
    2
}

fn default_denominator() -> u64 {
    4
}

fn default_workers() -> usize {
    1
}

const HEADER: &str = "# littlewood campaign config, schema littlewood-campaign/1\n\
# mode: exhaustive-grid | random | extremal | uniform-kleitman\n";

impl CampaignConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &ConfigFile) -> Result<Self> {
        check_schema(&file.schema, CONFIG_SCHEMA)?;
        let norms = file.norms.iter().map(|s| s.parse::<NormSpec>()).collect::<Result<Vec<_>, _>>()?;
        let grid = file.grid.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let config = CampaignConfig {
            mode: file.mode,
            n_range: file.n_min..=file.n_max,
            d_range: file.d_min..=file.d_max,
            norms,
            grid,
            grid_denominator: file.grid_denominator,
            seed: file.seed,
            budget: file.budget,
            workers: file.workers,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn to_file(&self) -> ConfigFile {
        ConfigFile {
            schema: CONFIG_SCHEMA.to_owned(),
            mode: self.mode,
            n_min: *self.n_range.start(),
            n_max: *self.n_range.end(),
            d_min: *self.d_range.start(),
            d_max: *self.d_range.end(),
            norms: self.norms.iter().map(ToString::to_string).collect(),
            grid: self.grid.iter().map(ToString::to_string).collect(),
            grid_denominator: self.grid_denominator,
            seed: self.seed,
            budget: self.budget,
            workers: self.workers,
        }
    }

    pub fn to_file_string(&self) -> Result<String> {
        Ok(format!("{HEADER}{}", toml::to_string(&self.to_file())?))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        let (n_min, n_max) = (*self.n_range.start(), *self.n_range.end());
        let (d_min, d_max) = (*self.d_range.start(), *self.d_range.end());
        if n_min == 0 || n_min > n_max {
            return bad(format!("need 1 <= n_min <= n_max, got {}..={}", n_min, n_max));
        }
        if d_min == 0 || d_min > d_max {
            return bad(format!("need 1 <= d_min <= d_max, got {}..={}", d_min, d_max));
        }
        let limit = if self.mode == Mode::UniformKleitman { NAIVE_LIMIT } else { MITM_LIMIT };
        if n_max > limit {
            return Err(littlewood_core::Error::Capacity { n: n_max, limit, what: "campaign instances" }.into());
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        if self.grid_denominator == 0 {
            return bad("grid_denominator must be at least 1".into());
        }
        match self.mode {
            Mode::UniformKleitman => {
                if self.norms.iter().any(|n| n != &NormSpec::L2) {
                    return bad("uniform-kleitman mode uses l2 vectors only".into());
                }
            }
            _ if self.norms.is_empty() => return bad("at least one norm is required".into()),
            _ => {}
        }
        if self.mode == Mode::ExhaustiveGrid {
            if self.grid.is_empty() {
                return bad("exhaustive-grid mode needs a coordinate grid".into());
            }
            if self.norms.iter().any(|n| !n.is_exact()) {
                return bad("exhaustive-grid mode needs exact-mode norms".into());
            }
        }
        if matches!(self.mode, Mode::Random | Mode::UniformKleitman) && self.budget.is_none() {
            return bad(format!("{} mode needs an instance budget", self.mode.name()));
        }
        for norm in &self.norms {
            if let Some(d) = norm.dim() {
                if d < d_min || d > d_max {
                    return bad(format!("norm {} has dimension {} outside {}..={}", norm, d, d_min, d_max));
                }
            }
        }
        Ok(())
    }

    /// Norms applicable in dimension `d`.
    pub(crate) fn norms_for(&self, d: usize) -> Vec<NormSpec> {
        let norms = if self.mode == Mode::UniformKleitman { vec![NormSpec::L2] } else { self.norms.clone() };
        norms.into_iter().filter(|n| n.dim().is_none_or(|nd| nd == d)).collect()
    }
}
