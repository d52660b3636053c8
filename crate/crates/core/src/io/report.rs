//! Report structures and their JSON and text renderings.

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::io::problem::{TaskKind, VarietySpec};
use crate::io::run::Detail;
use crate::lattice::{JsonInt, LatticePoint};
use crate::nondegeneracy::HeuristicReport;
use crate::toric_surface::{Orbit, PrepolarVerdict, SurfaceData};
use crate::volume::VolumeConvention;

pub const TOOL: &str = "toric-newton";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub variety: VarietyInfo,
    pub tasks: Vec<TaskOutcome>,
}

impl Report {
    pub fn new(variety: VarietyInfo, tasks: Vec<TaskOutcome>) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            variety,
            tasks,
        }
    }

    /// Some task failed a checked hypothesis.
    pub fn hypothesis_failed(&self) -> bool {
        self.tasks.iter().any(|t| !t.hypothesis_failures.is_empty())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Indented key/value listing of the same tree as the JSON, with each
    /// task closing on its `name = value` result lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.tool, self.version));
        out.push_str("variety:\n");
        render(&to_value(&self.variety), 1, &mut out);
        for (i, task) in self.tasks.iter().enumerate() {
            out.push_str(&format!("task {}: {}\n", i + 1, task.kind));
            let mut v = to_value(task);
            if let Value::Object(m) = &mut v {
                m.shift_remove("kind");
                m.shift_remove("results");
            }
            render(&v, 1, &mut out);
            for r in &task.results {
                out.push_str(&format!("{} = {}\n", r.name, r.value));
            }
        }
        out
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) => a
            .iter()
            .map(scalar)
            .collect::<Option<Vec<_>>>()
            .filter(|_| a.iter().all(|x| !x.is_object()))
            .map(|xs| format!("[{}]", xs.join(", "))),
        Value::Object(_) => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceInfo {
    pub id: usize,
    pub dim: usize,
    pub span_rays: Vec<LatticePoint>,
    /// 1-based indices of the coordinates `z_i` not vanishing on the orbit.
    pub generator_indices: Vec<usize>,
    pub smooth_orbit: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VarietyInfo {
    pub spec: VarietySpec,
    pub d: usize,
    pub ambient_dim: usize,
    pub sigma_rays: Vec<LatticePoint>,
    pub dual_rays: Vec<LatticePoint>,
    pub generators: Vec<LatticePoint>,
    pub faces: Vec<FaceInfo>,
}

/// Canonical text of the task polynomials.
#[derive(Debug, Clone, Serialize)]
pub struct TaskInputsEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub h: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub l: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedHeuristic {
    pub name: String,
    pub report: HeuristicReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceInfo {
    pub data: SurfaceData,
    pub equations: Vec<String>,
    pub orbits: Vec<Orbit>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckDetail {
    pub g_isolated: Option<bool>,
    pub prepolar: Option<PrepolarVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResultValue {
    Int(BigInt),
    Text(String),
}

impl std::fmt::Display for ResultValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResultValue::Int(v) => write!(f, "{v}"),
            ResultValue::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultLine {
    pub name: String,
    pub value: ResultValue,
}

impl ResultLine {
    pub fn int(name: &str, v: &BigInt) -> Self {
        ResultLine {
            name: name.into(),
            value: ResultValue::Int(v.clone()),
        }
    }

    pub fn text(name: &str, v: &str) -> Self {
        ResultLine {
            name: name.into(),
            value: ResultValue::Text(v.into()),
        }
    }
}

impl Serialize for ResultLine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ResultLine", 2)?;
        st.serialize_field("name", &self.name)?;
        match &self.value {
            ResultValue::Int(v) => st.serialize_field("value", &JsonInt(v))?,
            ResultValue::Text(t) => st.serialize_field("value", t)?,
        }
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TaskOutcome {
    pub kind: TaskKind,
    pub mode: VolumeConvention,
    pub seed: u64,
    pub inputs: TaskInputsEcho,
    pub assumptions: Vec<String>,
    pub nondegeneracy: Vec<NamedHeuristic>,
    pub hypothesis_failures: Vec<String>,
    pub detail: Detail,
    pub results: Vec<ResultLine>,
}

impl TaskOutcome {
    pub fn result(&self, name: &str) -> Option<&ResultValue> {
        self.results.iter().find(|r| r.name == name).map(|r| &r.value)
    }
}
