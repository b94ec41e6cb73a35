//! Verification campaigns: instance streams, a worker pool, and reports.

mod config;
mod generate;
mod report;
mod run;

pub use config::{CampaignConfig, ConfigFile, Mode, CONFIG_SCHEMA};
pub use generate::{gen_extremal, gen_random, unit_ball_points, MAX_DRAWS};
pub use report::{CampaignReport, InstanceError, Outcome, Violation, CAMPAIGN_REPORT_SCHEMA};
pub use run::{evaluate, run_campaign};
