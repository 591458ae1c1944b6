//! Job files: a group, a representation, ramification data and run options.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::group::{FiniteGroup, GroupSpec};
use crate::pipeline::{EdgeSign, Problem};
use crate::ramdata::{RawRamData, WeightMode};
use crate::rep::{OneDimRep, RepSpec};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub group: GroupSpec,
    /// Defaults to the trivial representation.
    #[serde(default)]
    pub rep: Option<RepSpec>,
    pub ram: RawRamData,
    #[serde(default)]
    pub options: JobOptions,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    pub mode: Option<WeightMode>,
    pub degree: Option<usize>,
    pub primes: Option<Vec<u64>>,
    pub jobs: Option<usize>,
    pub output: Option<PathBuf>,
    #[serde(rename = "edgeSign")]
    pub edge_sign: Option<EdgeSign>,
}

/// A JSON syntax or schema error, with the path of the offending field.
#[derive(Debug, Clone, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ParseError {
    pub path: String,
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            ParseError {
                path: if path.is_empty() { ".".into() } else { path },
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })
    }

    pub fn group(&self) -> Result<FiniteGroup, Error> {
        Ok(FiniteGroup::build(&self.group)?)
    }

    pub fn rep(&self, group: &FiniteGroup) -> Result<OneDimRep, Error> {
        match &self.rep {
            Some(spec) => Ok(OneDimRep::from_spec(group, spec)?),
            None => Ok(OneDimRep::trivial(group)),
        }
    }

    /// Builds and validates the problem.
    pub fn problem(&self) -> Result<Problem, Error> {
        let group = self.group()?;
        let rep = self.rep(&group)?;
        Problem::new(group, rep, &self.ram)
    }

    /// Job option, falling back to the mode stored with the data.
    pub fn mode(&self) -> WeightMode {
        self.options.mode.unwrap_or(self.ram.mode)
    }
}
