//! Run configuration files.
//!
//! Every schema or validation failure carries the JSON pointer of the
//! offending value.

use std::collections::BTreeMap;
use std::path::Path;

use mtlab_core::curvature::report::Axis;
use mtlab_core::curvature::{Grid, Tolerances, DEFAULT_ORDER};
use mtlab_core::jet::MAX_ORDER;
use mtlab_core::surfaces::{FamilySpec, Immersion};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Verdict names accepted by `require`.
pub const VERDICT_NAMES: [&str; 5] = [
    "lagrangian",
    "marginally_trapped",
    "minimal",
    "weingarten",
    "mt_criterion",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Report,
    Mesh,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub kind: OutputKind,
    pub path: String,
}

fn default_order() -> usize {
    DEFAULT_ORDER
}

fn default_require() -> Vec<String> {
    vec!["lagrangian".into(), "marginally_trapped".into()]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: FamilySpec,
    /// Keyed by the family's parameter names.
    pub grid: BTreeMap<String, Axis>,
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Verdicts that must hold for `check` to exit 0.
    #[serde(default = "default_require")]
    pub require: Vec<String>,
    #[serde(default)]
    pub outputs: Vec<Output>,
}

/// A validated configuration with its immersion and ordered grid.
pub struct Run {
    pub config: RunConfig,
    pub immersion: Immersion,
    pub grid: Grid,
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

fn invalid(pointer: &str, message: impl Into<String>) -> CliError {
    CliError::Config {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let p = pointer(e.path());
            invalid(&p, e.into_inner().to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Checks the invariants and builds the immersion and grid.
    pub fn build(self) -> Result<Run, CliError> {
        if self.order == 0 || self.order > MAX_ORDER {
            return Err(invalid(
                "/order",
                format!("order must lie in 1..={MAX_ORDER}, got {}", self.order),
            ));
        }
        for (name, v) in [
            ("lagrangian", self.tolerances.lagrangian),
            ("mt", self.tolerances.mt),
            ("minimal", self.tolerances.minimal),
            ("weingarten", self.tolerances.weingarten),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(
                    &format!("/tolerances/{name}"),
                    format!("tolerance must be positive, got {v}"),
                ));
            }
        }
        for (k, name) in self.require.iter().enumerate() {
            if !VERDICT_NAMES.contains(&name.as_str()) {
                return Err(invalid(
                    &format!("/require/{k}"),
                    format!(
                        "unknown verdict `{name}`; expected one of {}",
                        VERDICT_NAMES.join(", ")
                    ),
                ));
            }
        }
        let immersion =
            Immersion::from_spec(&self.family).map_err(|e| invalid("/family", e.to_string()))?;
        let names = immersion.parameters().map(str::to_string);
        for key in self.grid.keys() {
            if !names.contains(key) {
                return Err(invalid(
                    &format!("/grid/{key}"),
                    format!(
                        "`{key}` is not a parameter of {}; expected {} and {}",
                        self.family.kind.name(),
                        names[0],
                        names[1]
                    ),
                ));
            }
        }
        let mut axes = Vec::with_capacity(2);
        for name in &names {
            let axis = *self
                .grid
                .get(name)
                .ok_or_else(|| invalid("/grid", format!("missing axis for parameter `{name}`")))?;
            if axis.count < 2 {
                return Err(invalid(
                    &format!("/grid/{name}/count"),
                    format!("count must be at least 2, got {}", axis.count),
                ));
            }
            if !(axis.min < axis.max) || !axis.min.is_finite() || !axis.max.is_finite() {
                return Err(invalid(
                    &format!("/grid/{name}"),
                    format!("min must be below max, got [{}, {}]", axis.min, axis.max),
                ));
            }
            axes.push(axis);
        }
        let grid = Grid::new(axes[0], axes[1]);
        Ok(Run {
            config: self,
            immersion,
            grid,
        })
    }

    /// Configured path for `kind`, or `default`.
    pub fn output_path(&self, kind: OutputKind, default: &str) -> String {
        self.outputs
            .iter()
            .find(|o| o.kind == kind)
            .map(|o| o.path.clone())
            .unwrap_or_else(|| default.to_string())
    }
}
