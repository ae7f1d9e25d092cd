use std::fmt;
use std::str::FromStr;

use crate::coxeter::{GroupModel, DEFAULT_SIZE_BOUND};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Dot,
    #[default]
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "json" => Ok(OutputFormat::Json),
            "dot" => Ok(OutputFormat::Dot),
            "text" => Ok(OutputFormat::Text),
            _ => Err(Error::Config(format!("unknown output format {s:?}; expected json, dot or text"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Dot => "dot",
            OutputFormat::Text => "text",
        })
    }
}

/// Settings shared by every command. Defaults: field `Q`, seed 0,
/// compositions up to size 6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub group: GroupModel,
    pub field: FieldSpec,
    pub seed: u64,
    pub max_group_size: usize,
    pub max_n: usize,
    pub output: OutputFormat,
    /// Random `(u, v, Y)` triples per group in the twist sweep.
    pub random_triples: usize,
    /// Corrupts one module in the relations sweep, as a negative control.
    pub inject_corruption: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group: GroupModel::A(3),
            field: FieldSpec::Rational,
            seed: 0,
            max_group_size: DEFAULT_SIZE_BOUND,
            max_n: 6,
            output: OutputFormat::Text,
            random_triples: 50,
            inject_corruption: false,
        }
    }
}

impl RunConfig {
    pub fn parse(group: &str, field: &str, seed: u64) -> Result<Self> {
        Ok(RunConfig { group: group.parse()?, field: field.parse()?, seed, ..Default::default() })
    }

    pub fn with_field(&self, field: FieldSpec) -> Self {
        RunConfig { field, ..self.clone() }
    }

    pub fn with_group(&self, group: GroupModel) -> Self {
        RunConfig { group, ..self.clone() }
    }
}
