//! CSV and OBJ serialization of surface samples.
//!
//! Both writers are pure functions of the samples, so identical inputs give
//! byte-identical files. Reals use 17 significant digits.

use std::fmt::Write;

use mtlab_core::spaces::GeodesicPoint;

/// One grid sample in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub index: (usize, usize),
    pub p: [f64; 2],
    pub point: Option<GeodesicPoint>,
    pub mt_defect: Option<f64>,
    pub gauss_curvature: Option<f64>,
}

pub const CSV_HEADER: &str = "p1,p2,Re z1,Im z1,Re z2,Im z2,mt_defect,K";

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per sample; unavailable values are written as `NaN`.
pub fn csv(samples: &[Sample]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in samples {
        let z = s
            .point
            .map(|q| [q.z1.re, q.z1.im, q.z2.re, q.z2.im])
            .unwrap_or([f64::NAN; 4]);
        let fields = [
            s.p[0],
            s.p[1],
            z[0],
            z[1],
            z[2],
            z[3],
            s.mt_defect.unwrap_or(f64::NAN),
            s.gauss_curvature.unwrap_or(f64::NAN),
        ];
        let row: Vec<String> = fields.iter().map(|&x| real(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Vertex of a sample under the declared embedding `(Re z2, Im z2, p2)`.
pub fn embed(s: &Sample) -> Option<[f64; 3]> {
    s.point.map(|q| [q.z2.re, q.z2.im, s.p[1]])
}

/// Quad mesh over the grid. Samples without a point are dropped together
/// with every face touching them.
pub fn obj(
    family: &str,
    parameters: [&str; 2],
    shape: (usize, usize),
    samples: &[Sample],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# mtlab mesh of {family}");
    let _ = writeln!(
        out,
        "# embedding: vertex = (Re z2, Im z2, {}), the fiber coordinate over the second parameter",
        parameters[1]
    );
    let _ = writeln!(
        out,
        "# for tori this is the (Re eta, Im eta, theta) cylinder unrolling"
    );
    let _ = writeln!(
        out,
        "# grid: {} x {} over ({}, {}), row-major",
        shape.0, shape.1, parameters[0], parameters[1]
    );
    let mut ids = vec![None; samples.len()];
    let mut next = 1usize;
    for (k, s) in samples.iter().enumerate() {
        if let Some(v) = embed(s).filter(|v| v.iter().all(|x| x.is_finite())) {
            let _ = writeln!(out, "v {} {} {}", real(v[0]), real(v[1]), real(v[2]));
            ids[k] = Some(next);
            next += 1;
        }
    }
    let at = |i: usize, j: usize| ids[i * shape.1 + j];
    for i in 0..shape.0.saturating_sub(1) {
        for j in 0..shape.1.saturating_sub(1) {
            if let (Some(a), Some(b), Some(c), Some(d)) =
                (at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1))
            {
                let _ = writeln!(out, "f {a} {b} {c} {d}");
            }
        }
    }
    out
}
