//! Text file formats. Every file is TOML with a `schema` key naming its
//! kind and version; all rationals are strings in `p/q` (or `p`) form.

mod instance;
mod report;

use std::path::Path;

use littlewood_core::{RVector, Rational};

use crate::error::{Error, Result};

pub use instance::{instance_to_string, parse_instance, read_instance, InstanceFile, INSTANCE_SCHEMA};
pub use report::{float_report_to_string, report_to_string, ReportFile, REPORT_SCHEMA};

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    Ok(s.parse::<Rational>()?)
}

pub(crate) fn parse_vector(coords: &[String]) -> Result<RVector> {
    let parsed = coords.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
    Ok(RVector::new(parsed)?)
}

pub(crate) fn vector_strings(v: &RVector) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub(crate) fn check_schema(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Format(format!("expected schema {:?}, found {:?}", expected, found)));
    }
    Ok(())
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_owned(), source })
}

pub fn write_string(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io { path: path.to_owned(), source })
}
