//! Problem files: a variety, named polynomials and a list of tasks, in TOML.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub variety: VarietySpec,
    #[serde(default)]
    pub polynomials: BTreeMap<String, String>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum VarietySpec {
    /// The cyclic quotient surface `σ = cone((0,1), (p,-q))`; `p = 1, q = 0`
    /// is the plane.
    Surface { p: i64, q: i64 },
    General {
        sigma_rays: Vec<Vec<i64>>,
        semigroup_generators: Vec<Vec<i64>>,
    },
    /// `C^n` with its coordinate functions.
    Affine { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    Brasselet,
    BrasseletCi,
    EuOrigin,
    EuF,
    Morse,
    Gsv,
    Milnor,
    BruceRoberts,
    Family,
    SurfaceInfo,
    Check,
}

impl TaskKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::Brasselet => "brasselet",
            TaskKind::BrasseletCi => "brasselet-ci",
            TaskKind::EuOrigin => "eu-origin",
            TaskKind::EuF => "eu-f",
            TaskKind::Morse => "morse",
            TaskKind::Gsv => "gsv",
            TaskKind::Milnor => "milnor",
            TaskKind::BruceRoberts => "bruce-roberts",
            TaskKind::Family => "family",
            TaskKind::SurfaceInfo => "surface-info",
            TaskKind::Check => "check",
        }
    }

    pub fn needs_f(self) -> bool {
        !matches!(self, TaskKind::EuOrigin | TaskKind::SurfaceInfo)
    }

    pub fn needs_g(self) -> bool {
        matches!(
            self,
            TaskKind::BrasseletCi | TaskKind::Morse | TaskKind::Gsv | TaskKind::BruceRoberts
        )
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TaskKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TaskKind::deserialize(serde::de::value::StrDeserializer::<serde::de::value::Error>::new(s))
            .map_err(|_| Error::InvalidInput(format!("unknown task kind {s:?}")))
    }
}

/// Names of entries in `[polynomials]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskInputs {
    pub f: Option<String>,
    pub g: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub kind: TaskKind,
    #[serde(default)]
    pub inputs: TaskInputs,
    pub mode: Option<String>,
    #[serde(default)]
    pub assumptions: Vec<String>,
    pub seed: Option<u64>,
    pub trials: Option<u32>,
    /// Use the prepolar formula for `brasselet-ci`.
    #[serde(default)]
    pub prepolar: bool,
    /// Euler obstruction of `X` along orbits, keyed by face id.
    pub euler_table: Option<BTreeMap<String, i64>>,
    pub family: Option<FamilySpec>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    #[serde(default)]
    pub deformations: Deformations,
    /// Pairs `[s, t]` of exact rationals written as strings.
    pub samples: Option<Vec<[String; 2]>>,
}

/// Names of the polynomials `h_j` added to `f` and `l_i` added to `g`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Deformations {
    #[serde(default)]
    pub f: Vec<String>,
    #[serde(default)]
    pub g: Vec<String>,
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    toml::from_str(text).map_err(|e| Error::InvalidInput(format!("problem file: {}", e.message())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_a_problem() {
        let p = parse_problem(
            r#"
[variety.surface]
p = 2
q = 1

[polynomials]
f = "z2^2 - z1^3"
g = "z1 - z3^2"

[[tasks]]
kind = "morse"
inputs = { f = "f", g = "g" }
seed = 7
"#,
        )
        .unwrap();
        assert_eq!(p.variety, VarietySpec::Surface { p: 2, q: 1 });
        assert_eq!(p.tasks[0].kind, TaskKind::Morse);
        assert_eq!(p.tasks[0].inputs.g.as_deref(), Some("g"));
        assert_eq!("bruce-roberts".parse::<TaskKind>().unwrap(), TaskKind::BruceRoberts);
        assert!(parse_problem("[variety.cone]\nx = 1\n").is_err());
    }
}
