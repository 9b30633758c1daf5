//! Grid classification of a family into an [`MTReport`].
//!
//! Points are evaluated concurrently but the report is assembled in
//! row-major order, so identical inputs give bit-identical reports.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::SpaceId;
use crate::surfaces::{Immersion, Repr};

use super::{fundamental_from_jets, gauss_from_jets, CURVATURE_ORDER};

/// Inclusive sampling of one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Axis { min, max, count }
    }

    /// Requires `count >= 2` and `min < max`.
    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::DomainError(format!("axis count {} < 2", self.count)));
        }
        if !(self.min < self.max) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::DomainError(format!(
                "axis range [{}, {}] is empty",
                self.min, self.max
            )));
        }
        Ok(())
    }

    /// `count` equally spaced values with both ends included.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        if n == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (n - 1) as f64;
        (0..n)
            .map(|k| {
                if k + 1 == n {
                    self.max
                } else {
                    self.min + step * k as f64
                }
            })
            .collect()
    }

    /// Same range with `factor` times as many intervals.
    pub fn refined(&self, factor: usize) -> Self {
        Axis::new(self.min, self.max, (self.count - 1) * factor + 1)
    }
}

/// Product grid; row `i` fixes the first parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub axes: [Axis; 2],
}

impl Grid {
    pub fn new(first: Axis, second: Axis) -> Self {
        Grid {
            axes: [first, second],
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.axes[0].validate()?;
        self.axes[1].validate()
    }

    pub fn len(&self) -> usize {
        self.axes[0].count * self.axes[1].count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in row-major order with their indices.
    pub fn points(&self) -> Vec<((usize, usize), [f64; 2])> {
        let xs = self.axes[0].values();
        let ys = self.axes[1].values();
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                out.push(((i, j), [x, y]));
            }
        }
        out
    }

    pub fn refined(&self, factor: usize) -> Self {
        Grid::new(self.axes[0].refined(factor), self.axes[1].refined(factor))
    }
}

/// Verdict thresholds; all strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub lagrangian: f64,
    pub mt: f64,
    pub minimal: f64,
    pub weingarten: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            lagrangian: 1e-8,
            mt: 1e-8,
            minimal: 1e-8,
            weingarten: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("lagrangian", self.lagrangian),
            ("mt", self.mt),
            ("minimal", self.minimal),
            ("weingarten", self.weingarten),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::DomainError(format!(
                    "tolerance {name} = {v} is not positive"
                )));
            }
        }
        Ok(())
    }
}

/// Grid-wide verdicts; `None` when no point supplied the quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub lagrangian: Option<bool>,
    pub marginally_trapped: Option<bool>,
    pub minimal: Option<bool>,
    /// Hyperbolic families only.
    pub weingarten: Option<bool>,
    /// Closed-form marginally-trapped criterion of the family, if any.
    pub mt_criterion: Option<bool>,
}

/// Per-point verdicts from the generic engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointVerdicts {
    pub lagrangian: bool,
    pub marginally_trapped: bool,
    pub minimal: bool,
}

/// Measurements at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub index: (usize, usize),
    pub p: [f64; 2],
    pub mt_defect: f64,
    pub mt_defect_rel: f64,
    pub lagrangian_defect: f64,
    pub lagrangian_defect_rel: f64,
    pub minimality: f64,
    pub gauss_curvature: Option<f64>,
    /// `|sigma|` for sections, `|sigma0|` for graphs.
    pub sigma_abs: Option<f64>,
    /// The two branch residuals of the family's criterion.
    pub criterion: Option<[f64; 2]>,
    /// Principal Lagrangian angle from the closed form: `arg sigma` for
    /// sections, `arg(sigma0) / 2` for graphs.
    pub phase: Option<f64>,
    pub verdicts: PointVerdicts,
}

/// A failure confined to one point or one stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointException {
    pub index: Option<(usize, usize)>,
    pub p: Option<[f64; 2]>,
    /// `generic`, `curvature`, `closed` or `phase`.
    pub stage: String,
    pub error: String,
}

/// Maximum and mean of absolute values over the points that supplied them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub max: f64,
    pub mean: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MTReport {
    pub family: String,
    pub space: SpaceId,
    pub grid: Grid,
    pub order: usize,
    pub tolerances: Tolerances,
    /// Names of the two criterion residuals, if the family has a criterion.
    pub criterion_names: Option<[String; 2]>,
    pub stats: BTreeMap<String, Stat>,
    pub verdicts: Verdicts,
    /// Unwrapped Lagrangian angle range, when unwrapping succeeded.
    pub phase_range: Option<[f64; 2]>,
    pub points: Vec<PointRecord>,
    pub exceptions: Vec<PointException>,
}

impl MTReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Sample {
    record: Option<PointRecord>,
    exceptions: Vec<PointException>,
}

fn exception(index: (usize, usize), p: [f64; 2], stage: &str, e: &Error) -> PointException {
    PointException {
        index: Some(index),
        p: Some(p),
        stage: stage.to_string(),
        error: e.to_string(),
    }
}

fn sample(
    imm: &Immersion,
    index: (usize, usize),
    p: [f64; 2],
    order: usize,
    tol: &Tolerances,
) -> Sample {
    let mut exceptions = Vec::new();
    let jets = match imm.eval(p, order.max(CURVATURE_ORDER)) {
        Ok(j) => j,
        Err(e) => {
            return Sample {
                record: None,
                exceptions: vec![exception(index, p, "generic", &e)],
            }
        }
    };
    let fd = match fundamental_from_jets(imm.space(), &jets) {
        Ok(fd) => fd,
        Err(e) => {
            return Sample {
                record: None,
                exceptions: vec![exception(index, p, "generic", &e)],
            }
        }
    };
    let gauss_curvature = match gauss_from_jets(imm.space(), &jets) {
        Ok(k) => Some(k),
        Err(e) => {
            exceptions.push(exception(index, p, "curvature", &e));
            None
        }
    };
    let closed = match imm.repr() {
        Repr::Section(_) | Repr::Torus(_) => imm
            .section_point(p)
            .map(|s| Some((s.sigma_abs, [s.e1_residual, s.e2_residual], s.phi))),
        Repr::Graph(_) => imm.graph_point(p).map(|g| {
            Some((
                g.sigma0.norm(),
                [g.residual_minus, g.residual_plus],
                g.phase.arg(),
            ))
        }),
        _ => Ok(None),
    };
    let (sigma_abs, criterion, phase) = match closed {
        Ok(Some((s, c, ph))) => (Some(s), Some(c), Some(ph)),
        Ok(None) => (None, None, None),
        Err(e) => {
            exceptions.push(exception(index, p, "closed", &e));
            (None, None, None)
        }
    };
    let verdicts = PointVerdicts {
        lagrangian: fd.lagrangian_defect_rel <= tol.lagrangian,
        marginally_trapped: fd.mt_defect_rel <= tol.mt,
        minimal: fd.minimality <= tol.minimal,
    };
    Sample {
        record: Some(PointRecord {
            index,
            p,
            mt_defect: fd.mt_defect,
            mt_defect_rel: fd.mt_defect_rel,
            lagrangian_defect: fd.lagrangian_defect,
            lagrangian_defect_rel: fd.lagrangian_defect_rel,
            minimality: fd.minimality,
            gauss_curvature,
            sigma_abs,
            criterion,
            phase,
            verdicts,
        }),
        exceptions,
    }
}

fn criterion_names(imm: &Immersion) -> Option<[String; 2]> {
    match imm.repr() {
        Repr::Section(_) | Repr::Torus(_) => Some(["frame_nullity".into(), "mean_nullity".into()]),
        Repr::Graph(_) => Some(["residual_minus".into(), "residual_plus".into()]),
        _ => None,
    }
}

fn stat(values: impl Iterator<Item = f64>) -> Option<Stat> {
    let (mut max, mut sum, mut count) = (0.0f64, 0.0f64, 0usize);
    for v in values {
        let a = v.abs();
        // NaN propagates into max
        max = if a.is_nan() || max.is_nan() {
            f64::NAN
        } else {
            max.max(a)
        };
        sum += a;
        count += 1;
    }
    (count > 0).then(|| Stat {
        max,
        mean: sum / count as f64,
        count,
    })
}

fn all_within(values: impl Iterator<Item = f64>, tol: f64) -> Option<bool> {
    let mut seen = false;
    let mut ok = true;
    for v in values {
        seen = true;
        ok &= v.abs() <= tol;
    }
    seen.then_some(ok)
}

/// Samples `imm` over `grid` and aggregates defects, curvatures and
/// criterion residuals. Point failures are reported, never fatal.
pub fn classify(imm: &Immersion, grid: &Grid, order: usize, tol: &Tolerances) -> MTReport {
    let samples: Vec<Sample> = grid
        .points()
        .into_par_iter()
        .map(|(index, p)| sample(imm, index, p, order, tol))
        .collect();
    let mut points = Vec::with_capacity(samples.len());
    let mut exceptions = Vec::new();
    for s in samples {
        points.extend(s.record);
        exceptions.extend(s.exceptions);
    }

    let mut stats = BTreeMap::new();
    let mut put = |name: &str, st: Option<Stat>| {
        if let Some(st) = st {
            stats.insert(name.to_string(), st);
        }
    };
    put("mt_defect", stat(points.iter().map(|r| r.mt_defect)));
    put(
        "mt_defect_rel",
        stat(points.iter().map(|r| r.mt_defect_rel)),
    );
    put(
        "lagrangian_defect",
        stat(points.iter().map(|r| r.lagrangian_defect)),
    );
    put(
        "lagrangian_defect_rel",
        stat(points.iter().map(|r| r.lagrangian_defect_rel)),
    );
    put("minimality", stat(points.iter().map(|r| r.minimality)));
    put(
        "gauss_curvature",
        stat(points.iter().filter_map(|r| r.gauss_curvature)),
    );
    put("sigma_abs", stat(points.iter().filter_map(|r| r.sigma_abs)));
    let names = criterion_names(imm);
    if let Some(n) = &names {
        for k in 0..2 {
            put(
                &n[k],
                stat(points.iter().filter_map(|r| r.criterion.map(|c| c[k]))),
            );
        }
    }

    let mt_criterion = names.as_ref().and_then(|_| {
        let maxima: Vec<Option<bool>> = (0..2)
            .map(|k| {
                all_within(
                    points.iter().filter_map(|r| r.criterion.map(|c| c[k])),
                    tol.mt,
                )
            })
            .collect();
        match imm.repr() {
            // only the mean nullity decides; frame nullity is the off-diagonal II
            Repr::Section(_) | Repr::Torus(_) => maxima[1],
            // one of the two residuals vanishes on the whole grid
            _ => match (maxima[0], maxima[1]) {
                (Some(a), Some(b)) => Some(a || b),
                _ => None,
            },
        }
    });
    let verdicts = Verdicts {
        lagrangian: all_within(
            points.iter().map(|r| r.lagrangian_defect_rel),
            tol.lagrangian,
        ),
        marginally_trapped: all_within(points.iter().map(|r| r.mt_defect_rel), tol.mt),
        minimal: all_within(points.iter().map(|r| r.minimality), tol.minimal),
        weingarten: match imm.space() {
            SpaceId::HypGeodesics => all_within(
                points.iter().filter_map(|r| r.gauss_curvature),
                tol.weingarten,
            ),
            SpaceId::EucLines => None,
        },
        mt_criterion,
    };

    let phase_range = if points.iter().any(|r| r.phase.is_some()) {
        let mut field = vec![vec![None; grid.axes[1].count]; grid.axes[0].count];
        for r in &points {
            field[r.index.0][r.index.1] = r.phase;
        }
        // sections carry arg(sigma), graphs half of arg(sigma0)
        let period = match imm.repr() {
            Repr::Graph(_) => PI,
            _ => TAU,
        };
        match unwrap_phase(&field, period) {
            Ok(u) => {
                let vals = u.iter().flatten().flatten();
                let lo = vals.clone().fold(f64::INFINITY, |a, &b| a.min(b));
                let hi = vals.fold(f64::NEG_INFINITY, |a, &b| a.max(b));
                Some([lo, hi])
            }
            Err(e) => {
                let index = match e {
                    Error::PhaseUnwrap { index, .. } => Some(index),
                    _ => None,
                };
                exceptions.push(PointException {
                    index,
                    p: None,
                    stage: "phase".into(),
                    error: e.to_string(),
                });
                None
            }
        }
    } else {
        None
    };

    MTReport {
        family: imm.kind().name().to_string(),
        space: imm.space(),
        grid: *grid,
        order: order.max(CURVATURE_ORDER),
        tolerances: *tol,
        criterion_names: names,
        stats,
        verdicts,
        phase_range,
        points,
        exceptions,
    }
}

/// Continues `prev` to the representative of `angle` mod `period` nearest
/// to it.
fn continue_angle(prev: f64, angle: f64, period: f64, index: (usize, usize)) -> Result<f64> {
    let shifted = angle + period * ((prev - angle) / period).round();
    let jump = (shifted - prev).abs();
    if jump > FRAC_PI_2 {
        return Err(Error::PhaseUnwrap { index, jump });
    }
    Ok(shifted)
}

/// Unwraps a grid of principal angles defined modulo `period`. The base
/// corner keeps its principal value, the first column is unwrapped from it,
/// then each row from its first entry. Missing entries are skipped and the
/// chain resumes from the last available neighbour. Jumps above pi / 2 are
/// errors.
pub fn unwrap_phase(field: &[Vec<Option<f64>>], period: f64) -> Result<Vec<Vec<Option<f64>>>> {
    let mut out: Vec<Vec<Option<f64>>> = field.iter().map(|row| vec![None; row.len()]).collect();
    let mut column_anchor: Option<f64> = None;
    for (i, row) in field.iter().enumerate() {
        // anchor of this row, continued down the first available column
        let first = row.iter().position(|v| v.is_some());
        let Some(j0) = first else { continue };
        let a = row[j0].expect("position found a value");
        let start = match column_anchor {
            None => a,
            Some(prev) => continue_angle(prev, a, period, (i, j0))?,
        };
        column_anchor = Some(start);
        out[i][j0] = Some(start);
        let mut prev = start;
        for j in j0 + 1..row.len() {
            if let Some(v) = row[j] {
                prev = continue_angle(prev, v, period, (i, j))?;
                out[i][j] = Some(prev);
            }
        }
    }
    Ok(out)
}
