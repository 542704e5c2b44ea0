//! Manifest schema. Unknown keys are rejected everywhere.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub surface: SurfaceSpec,
    #[serde(default)]
    pub embedding: Option<Embedding>,
    pub operations: Vec<Operation>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

/// `"quintic"`, `{"preset": "quintic"}` or `{"raw": {...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SurfaceSpec {
    Name(String),
    Preset {
        preset: String,
    },
    Raw {
        raw: RawSurface,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSurface {
    pub name: String,
    /// Row-major Gram matrix.
    pub gram: Vec<Vec<i64>>,
    pub canonical: Vec<i64>,
    pub hyperplane: Vec<i64>,
    pub euler: i64,
    #[serde(default)]
    pub minimal_general_type: bool,
}

/// `Σ = k(K + sL)` or a hyperplane class given directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Embedding {
    Pencil {
        s: i64,
        k: i64,
        #[serde(rename = "L")]
        l: Vec<i64>,
    },
    Hyperplane {
        hyperplane: Vec<i64>,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Operation {
    Invariants {
        #[serde(default)]
        n: Option<usize>,
    },
    /// `M(n)` and its invariants.
    Iterate { n: usize },
    /// `M(n)`, or `M(m, n, C)` when `m` is given.
    Fibresum {
        #[serde(default)]
        m: Option<usize>,
        n: usize,
        #[serde(default)]
        gluing: Option<Vec<i64>>,
        #[serde(default)]
        include_gram: bool,
    },
    Canonical {
        #[serde(default)]
        m: Option<usize>,
        n: usize,
        #[serde(default)]
        gluing: Option<Vec<i64>>,
    },
    SwClasses {
        #[serde(default)]
        n: Option<usize>,
    },
    Mst { n: usize },
    Obstruction {
        a: u64,
        n: u64,
        #[serde(default)]
        d: Option<u64>,
        #[serde(default)]
        genus: Option<u32>,
    },
    PencilParams {
        d: u64,
        #[serde(default)]
        s0: Option<u64>,
        #[serde(default)]
        k0: Option<u64>,
    },
    Classify {
        #[serde(default)]
        n: Option<usize>,
    },
}

impl Operation {
    pub fn name(&self) -> &'static str {
        match self {
            Operation::Invariants { .. } => "invariants",
            Operation::Iterate { .. } => "iterate",
            Operation::Fibresum { .. } => "fibresum",
            Operation::Canonical { .. } => "canonical",
            Operation::SwClasses { .. } => "sw-classes",
            Operation::Mst { .. } => "mst",
            Operation::Obstruction { .. } => "obstruction",
            Operation::PencilParams { .. } => "pencil-params",
            Operation::Classify { .. } => "classify",
        }
    }
}

pub fn parse(text: &str) -> Result<Manifest, String> {
    let m: Manifest = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if let SurfaceSpec::Raw { raw } = &m.surface {
        let n = raw.gram.len();
        if raw.gram.iter().any(|r| r.len() != n) {
            return Err("surface.raw.gram must be square".into());
        }
        if raw.canonical.len() != n || raw.hyperplane.len() != n {
            return Err(format!("surface.raw vectors must have length {n}"));
        }
    }
    if m.operations.is_empty() {
        return Err("operations must not be empty".into());
    }
    Ok(m)
}
