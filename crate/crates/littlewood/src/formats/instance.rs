use std::path::Path;

use littlewood_core::{Instance, NormSpec};
use serde::{Deserialize, Serialize};

use super::{check_schema, parse_vector, read_to_string, vector_strings};
use crate::error::{Error, Result};

pub const INSTANCE_SCHEMA: &str = "littlewood-instance/1";

const HEADER: &str = "# littlewood instance file, schema littlewood-instance/1\n\
# norm: l1 | l2 | linf | lp:<p> | poly:[f1;f2;...]; rationals as \"p/q\"\n";

/// On-disk form of an [`Instance`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema: String,
    pub dimension: usize,
    pub norm: String,
    pub vectors: Vec<Vec<String>>,
    pub target: Vec<String>,
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        InstanceFile {
            schema: INSTANCE_SCHEMA.to_owned(),
            dimension: instance.dim(),
            norm: instance.norm().to_string(),
            vectors: instance.vectors().iter().map(vector_strings).collect(),
            target: vector_strings(instance.target()),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        check_schema(&self.schema, INSTANCE_SCHEMA)?;
        let norm: NormSpec = self.norm.parse()?;
        let target = parse_vector(&self.target)?;
        if target.dim() != self.dimension {
            return Err(Error::Format(format!(
                "target has dimension {}, file declares {}",
                target.dim(),
                self.dimension
            )));
        }
        let vectors = self.vectors.iter().map(|v| parse_vector(v)).collect::<Result<Vec<_>>>()?;
        Ok(Instance::new(vectors, target, norm)?)
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = toml::from_str(text)?;
    file.to_instance()
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read_to_string(path)?)
}

pub fn instance_to_string(instance: &Instance) -> Result<String> {
    let body = toml::to_string(&InstanceFile::from_instance(instance))?;
    Ok(format!("{HEADER}{body}"))
}
