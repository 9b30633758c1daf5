//! The five subcommands. Each returns its exit code: 0 when every checked
//! property holds, 2 when one fails. Errors map to exit code 1 in `main`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use mtlab_core::curvature::{classify, compare, MTReport, Verdicts};
use mtlab_core::surfaces::{Chart, FamilyKind};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{OutputKind, Run, RunConfig};
use crate::error::CliError;
use crate::export::{self, Sample};

/// Largest relative closed-versus-generic discrepancy `compare` accepts.
pub const COMPARE_THRESHOLD: f64 = 1e-7;

/// Flags shared by the config-driven commands.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub order: Option<usize>,
    pub tol_mt: Option<f64>,
}

impl Overrides {
    fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("."))
    }

    fn apply(&self, mut config: RunConfig) -> RunConfig {
        if let Some(order) = self.order {
            config.order = order;
        }
        if let Some(tol) = self.tol_mt {
            config.tolerances.mt = tol;
        }
        config
    }
}

fn load(path: &Path, ov: &Overrides) -> Result<Run, CliError> {
    ov.apply(RunConfig::load(path)?).build()
}

/// Writes `contents` to `name` under `dir`; absolute names are kept.
fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)
            .map_err(|e| CliError::Io(format!("{}: {e}", parent.display())))?;
    }
    std::fs::write(&path, contents)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

pub fn verdict(v: &Verdicts, name: &str) -> Option<bool> {
    match name {
        "lagrangian" => v.lagrangian,
        "marginally_trapped" => v.marginally_trapped,
        "minimal" => v.minimal,
        "weingarten" => v.weingarten,
        "mt_criterion" => v.mt_criterion,
        _ => None,
    }
}

fn show(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undetermined",
    }
}

/// Whether every required verdict is `Some(true)`.
fn required_hold(report: &MTReport, require: &[String]) -> bool {
    require
        .iter()
        .all(|name| verdict(&report.verdicts, name) == Some(true))
}

pub fn check(config: &Path, ov: &Overrides) -> Result<i32, CliError> {
    let run = load(config, ov)?;
    let report = classify(
        &run.immersion,
        &run.grid,
        run.config.order,
        &run.config.tolerances,
    );
    let path = write(
        &ov.out_dir(),
        &run.config.output_path(OutputKind::Report, "report.json"),
        &report.to_json(),
    )?;
    for name in &run.config.require {
        println!("{name}: {}", show(verdict(&report.verdicts, name)));
    }
    println!("exceptions: {}", report.exceptions.len());
    println!("report: {}", path.display());
    Ok(if required_hold(&report, &run.config.require) {
        0
    } else {
        2
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantitySummary {
    pub quantity: &'static str,
    pub factor: f64,
    pub count: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub worst_point: [f64; 2],
    /// Whether the closed formula's hypotheses held at every point.
    pub hypotheses_hold: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointFailure {
    pub index: (usize, usize),
    pub p: [f64; 2],
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub family: String,
    pub threshold: f64,
    pub quantities: Vec<QuantitySummary>,
    pub exceptions: Vec<PointFailure>,
    pub pass: bool,
}

pub fn compare_report(run: &Run) -> CompareReport {
    let order = run.config.order;
    let results: Vec<_> = run
        .grid
        .points()
        .into_par_iter()
        .map(|(index, p)| (index, p, compare(&run.immersion, p, order)))
        .collect();
    let mut by_name: BTreeMap<&'static str, QuantitySummary> = BTreeMap::new();
    let mut exceptions = Vec::new();
    for (index, p, res) in results {
        match res {
            Ok(list) => {
                for c in list {
                    let q = by_name.entry(c.quantity).or_insert(QuantitySummary {
                        quantity: c.quantity,
                        factor: c.factor,
                        count: 0,
                        max_abs_error: 0.0,
                        max_rel_error: 0.0,
                        worst_point: p,
                        hypotheses_hold: true,
                        pass: true,
                    });
                    q.count += 1;
                    q.max_abs_error = q.max_abs_error.max(c.abs_error);
                    if c.rel_error > q.max_rel_error || c.rel_error.is_nan() {
                        q.max_rel_error = c.rel_error;
                        q.worst_point = p;
                    }
                    q.hypotheses_hold &= c.hypotheses_hold;
                }
            }
            Err(e) => exceptions.push(PointFailure {
                index,
                p,
                error: e.to_string(),
            }),
        }
    }
    let mut quantities: Vec<QuantitySummary> = by_name.into_values().collect();
    for q in &mut quantities {
        q.pass = q.hypotheses_hold && q.max_rel_error <= COMPARE_THRESHOLD;
    }
    let pass = !quantities.is_empty() && quantities.iter().all(|q| q.pass);
    CompareReport {
        family: run.immersion.kind().name().to_string(),
        threshold: COMPARE_THRESHOLD,
        quantities,
        exceptions,
        pass,
    }
}

pub fn compare_cmd(config: &Path, ov: &Overrides) -> Result<i32, CliError> {
    let run = load(config, ov)?;
    let report = compare_report(&run);
    if report.quantities.is_empty() {
        return Err(CliError::Usage(format!(
            "{} has no closed-form quantities at any grid point",
            report.family
        )));
    }
    let json =
        serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(e.to_string()))? + "\n";
    let path = write(&ov.out_dir(), "compare.json", &json)?;
    for q in &report.quantities {
        println!(
            "{}: max relative error {:.3e} (factor {}){}",
            q.quantity,
            q.max_rel_error,
            q.factor,
            if q.hypotheses_hold {
                ""
            } else {
                ", hypotheses fail"
            }
        );
    }
    println!("report: {}", path.display());
    Ok(if report.pass { 0 } else { 2 })
}

/// Point map plus the report's `G(H,H)` and `K` for every grid point.
pub fn samples(run: &Run) -> Vec<Sample> {
    let report = classify(
        &run.immersion,
        &run.grid,
        run.config.order,
        &run.config.tolerances,
    );
    let records: BTreeMap<(usize, usize), _> = report.points.iter().map(|r| (r.index, r)).collect();
    run.grid
        .points()
        .into_par_iter()
        .map(|(index, p)| Sample {
            index,
            p,
            point: run.immersion.point(p).ok(),
            mt_defect: records.get(&index).map(|r| r.mt_defect),
            gauss_curvature: records.get(&index).and_then(|r| r.gauss_curvature),
        })
        .collect()
}

pub fn mesh(config: &Path, ov: &Overrides) -> Result<i32, CliError> {
    let run = load(config, ov)?;
    let s = samples(&run);
    let shape = (run.grid.axes[0].count, run.grid.axes[1].count);
    let obj = export::obj(
        run.immersion.kind().name(),
        run.immersion.parameters(),
        shape,
        &s,
    );
    let csv = export::csv(&s);
    let dir = ov.out_dir();
    let obj_path = write(
        &dir,
        &run.config.output_path(OutputKind::Mesh, "mesh.obj"),
        &obj,
    )?;
    let csv_path = write(
        &dir,
        &run.config.output_path(OutputKind::Csv, "mesh.csv"),
        &csv,
    )?;
    println!("mesh: {}", obj_path.display());
    println!("csv: {}", csv_path.display());
    Ok(0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub value: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Verdicts>,
    /// Grid maxima of the relative defects and of `|K|`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub max: BTreeMap<String, f64>,
    pub exceptions: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub family: String,
    pub param: String,
    pub require: Vec<String>,
    pub rows: Vec<ScanRow>,
}

/// Parses `--values`: a JSON array of numbers, or of `[re, im]` pairs for `tau`.
pub fn parse_values(text: &str) -> Result<Vec<serde_json::Value>, CliError> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("--values is not JSON: {e}")))?;
    let list = v
        .as_array()
        .ok_or_else(|| CliError::Usage("--values must be a JSON array".into()))?
        .clone();
    if list.is_empty() {
        return Err(CliError::Usage("--values is empty".into()));
    }
    Ok(list)
}

fn set_param(config: &mut RunConfig, param: &str, value: &serde_json::Value) -> Result<(), String> {
    let number = |v: &serde_json::Value| v.as_f64().ok_or_else(|| format!("{v} is not a number"));
    if param == "tau" {
        config.family.tau = match value {
            serde_json::Value::Array(pair) if pair.len() == 2 => {
                [number(&pair[0])?, number(&pair[1])?]
            }
            v => [number(v)?, 0.0],
        };
    } else {
        config
            .family
            .params
            .insert(param.to_string(), number(value)?);
    }
    Ok(())
}

fn scan_row(base: &RunConfig, param: &str, value: &serde_json::Value) -> ScanRow {
    let failed = |error: String| ScanRow {
        value: value.clone(),
        verdicts: None,
        max: BTreeMap::new(),
        exceptions: 0,
        pass: false,
        error: Some(error),
    };
    let mut config = base.clone();
    if let Err(e) = set_param(&mut config, param, value) {
        return failed(e);
    }
    let run = match config.build() {
        Ok(r) => r,
        Err(e) => return failed(e.to_string()),
    };
    let report = classify(
        &run.immersion,
        &run.grid,
        run.config.order,
        &run.config.tolerances,
    );
    let max = [
        "mt_defect_rel",
        "lagrangian_defect_rel",
        "minimality",
        "gauss_curvature",
    ]
    .iter()
    .filter_map(|k| report.stats.get(*k).map(|s| (k.to_string(), s.max)))
    .collect();
    ScanRow {
        value: value.clone(),
        verdicts: Some(report.verdicts),
        max,
        exceptions: report.exceptions.len(),
        pass: required_hold(&report, &run.config.require),
        error: None,
    }
}

pub fn scan(config: &Path, param: &str, values: &str, ov: &Overrides) -> Result<i32, CliError> {
    let values = parse_values(values)?;
    let base = ov.apply(RunConfig::load(config)?);
    // validates the unscanned parts up front
    base.clone().build()?;
    let rows: Vec<ScanRow> = values.iter().map(|v| scan_row(&base, param, v)).collect();
    let report = ScanReport {
        family: base.family.kind.name().to_string(),
        param: param.to_string(),
        require: base.require.clone(),
        rows,
    };
    let json =
        serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(e.to_string()))? + "\n";
    let path = write(&ov.out_dir(), "scan.json", &json)?;
    for row in &report.rows {
        let mut line = format!("{param} = {}:", row.value);
        match (&row.verdicts, &row.error) {
            (Some(v), _) => {
                for name in crate::config::VERDICT_NAMES {
                    let _ = write!(line, " {name}={}", show(verdict(v, name)));
                }
            }
            (None, Some(e)) => {
                let _ = write!(line, " error: {e}");
            }
            (None, None) => {}
        }
        println!("{line}");
    }
    println!("report: {}", path.display());
    Ok(if report.rows.iter().all(|r| r.pass) {
        0
    } else {
        2
    })
}

/// Human-readable catalogue of family kinds and their inputs.
pub fn families_text() -> String {
    let mut out = String::new();
    for kind in FamilyKind::ALL {
        let space = kind
            .space()
            .map(|s| format!("{s:?}"))
            .unwrap_or_else(|| "EucLines | HypGeodesics".into());
        let _ = writeln!(out, "{} [{}]", kind.name(), space);
        let sphere = kind == FamilyKind::HypSphereFamily;
        let params = kind.default_parameters(if sphere {
            Chart::Polar
        } else {
            Chart::Cartesian
        });
        let polar = if kind.supports_polar() && !sphere {
            " (or R, theta with chart \"polar\")"
        } else {
            ""
        };
        let (a, b) = match kind {
            FamilyKind::GenericImmersion => ("<variables[0]>", "<variables[1]>"),
            _ => (params[0], params[1]),
        };
        let _ = writeln!(out, "  grid parameters: {a}, {b}{polar}");
        for slot in kind.slots() {
            let vars = if slot.variables.is_empty() {
                "<variables>".to_string()
            } else {
                slot.variables.join(", ")
            };
            let req = if slot.required { "" } else { ", optional" };
            let _ = writeln!(out, "  expr {}({vars}){req}", slot.name);
        }
        if !kind.structural_params().is_empty() {
            let _ = writeln!(out, "  params: {}", kind.structural_params().join(", "));
        }
    }
    out
}
