//! Fundamental forms, mean curvature and Gauss curvature of immersed
//! surfaces in the geodesic spaces.
//!
//! The generic path works from chart jets and the ambient Levi-Civita
//! connection alone. Closed-form formulas of the individual families live in
//! [`closed`] and are compared against it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::{Coordinate, Jet};
use crate::spaces::{
    christoffels, contract, metric, metric_matrix, symplectic, GeodesicPoint, SpaceId, TangentVec,
};
use crate::surfaces::{Immersion, SurfaceJets};

pub mod closed;
pub mod report;

pub use closed::{compare, Comparison};
pub use report::{classify, unwrap_phase, Axis, Grid, MTReport, Tolerances, Verdicts};

/// Jet order used when none is configured.
pub const DEFAULT_ORDER: usize = 4;

/// Orders needed by the generic path.
pub const FUNDAMENTAL_ORDER: usize = 2;
pub const CURVATURE_ORDER: usize = 3;

/// Below `NEAR_MINIMAL * |g^-1| |II|` the size of `H` stops normalizing the
/// nullity defect, so rounding in a nearly vanishing `H` cannot pose as a
/// non-null direction.
const NEAR_MINIMAL: f64 = 1e-6;

/// Relative size of `det g` below which the induced metric is degenerate.
const DEGENERATE_DET: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Signature {
    Lorentzian,
    Riemannian,
    Degenerate,
}

/// First and second fundamental forms at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalData {
    pub space: SpaceId,
    pub point: GeodesicPoint,
    /// Coordinate tangent vectors `d_a X`.
    pub tangents: [TangentVec; 2],
    pub g: [[f64; 2]; 2],
    pub g_inv: [[f64; 2]; 2],
    /// Normal-valued, symmetric.
    pub ii: [[TangentVec; 2]; 2],
    /// `g^{ab} II_ab`
    pub h: TangentVec,
    /// `G(H, H)`
    pub mt_defect: f64,
    /// `|G(H, H)| / (|G| |H| max(|H|, 1e-6 curvature_scale))`
    pub mt_defect_rel: f64,
    /// `|Omega(d_1 X, d_2 X)|`
    pub lagrangian_defect: f64,
    /// `|Omega(d_1 X, d_2 X)| / (|G| |d_1 X| |d_2 X|)`
    pub lagrangian_defect_rel: f64,
    /// `|H| / curvature_scale`, zero exactly on minimal surfaces.
    pub minimality: f64,
    /// `|g^-1| max(|II|, |nabla dX|, |dX|^2)`. The last two terms keep the
    /// scale meaningful at totally geodesic points, where `II` is pure
    /// rounding; all three scale alike under reparametrization.
    pub curvature_scale: f64,
    /// Frobenius norm of the ambient metric in the real basis.
    pub metric_norm: f64,
    pub signature: Signature,
}

fn frobenius2(m: &[[f64; 2]; 2]) -> f64 {
    m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

impl FundamentalData {
    /// Frobenius-type reference size of `II`.
    pub fn ii_norm(&self) -> f64 {
        self.ii
            .iter()
            .flatten()
            .map(|v| v.reference_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Coordinates `c` with `v = c_1 d_1 X + c_2 d_2 X` for a tangent `v`.
    pub fn tangent_coordinates(&self, v: &TangentVec) -> Result<[f64; 2]> {
        let d0 = metric(self.space, &self.point, v, &self.tangents[0])?;
        let d1 = metric(self.space, &self.point, v, &self.tangents[1])?;
        Ok([0, 1].map(|a| self.g_inv[a][0] * d0 + self.g_inv[a][1] * d1))
    }

    /// Normal part of an ambient vector.
    pub fn normal_part(&self, v: &TangentVec) -> Result<TangentVec> {
        let c = self.tangent_coordinates(v)?;
        Ok(*v - self.tangents[0].scale(c[0]) - self.tangents[1].scale(c[1]))
    }

    /// `II(v, w)` for tangent vectors given by coordinates.
    pub fn ii_at(&self, v: [f64; 2], w: [f64; 2]) -> TangentVec {
        let mut out = TangentVec::zero();
        for a in 0..2 {
            for b in 0..2 {
                out = out + self.ii[a][b].scale(v[a] * w[b]);
            }
        }
        out
    }
}

/// Fundamental data from chart jets of order at least two.
pub fn fundamental_from_jets(space: SpaceId, jets: &SurfaceJets) -> Result<FundamentalData> {
    let available = jets.z1.order().min(jets.z2.order());
    if available < FUNDAMENTAL_ORDER {
        return Err(Error::InsufficientOrder {
            requested: FUNDAMENTAL_ORDER,
            available,
        });
    }
    let at = jets.point();
    let x = [jets.tangent(0)?, jets.tangent(1)?];
    let gm = |a: &TangentVec, b: &TangentVec| metric(space, &at, a, b);
    let g = [
        [gm(&x[0], &x[0])?, gm(&x[0], &x[1])?],
        [gm(&x[1], &x[0])?, gm(&x[1], &x[1])?],
    ];
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    let metric_norm = metric_matrix(space, &at)?.norm();
    let size = metric_norm * x[0].reference_norm() * x[1].reference_norm();
    if !(det.abs() > DEGENERATE_DET * size * size) {
        return Err(Error::DegenerateInducedMetric(det));
    }
    let g_inv = [
        [g[1][1] / det, -g[0][1] / det],
        [-g[1][0] / det, g[0][0] / det],
    ];
    let signature = if det < 0.0 {
        Signature::Lorentzian
    } else {
        Signature::Riemannian
    };

    let gamma = christoffels(space, &at)?;
    let mut data = FundamentalData {
        space,
        point: at,
        tangents: x,
        g,
        g_inv,
        ii: [[TangentVec::zero(); 2]; 2],
        h: TangentVec::zero(),
        mt_defect: 0.0,
        mt_defect_rel: 0.0,
        lagrangian_defect: 0.0,
        lagrangian_defect_rel: 0.0,
        minimality: 0.0,
        curvature_scale: 0.0,
        metric_norm,
        signature,
    };
    let mut cov_norm2 = 0.0;
    for a in 0..2 {
        for b in a..2 {
            let cov = jets.second(a, b)? + contract(&gamma, &x[a], &x[b]);
            cov_norm2 += cov.reference_norm().powi(2) * if a == b { 1.0 } else { 2.0 };
            let n = data.normal_part(&cov)?;
            data.ii[a][b] = n;
            data.ii[b][a] = n;
        }
    }
    let mut h = TangentVec::zero();
    for a in 0..2 {
        for b in 0..2 {
            h = h + data.ii[a][b].scale(g_inv[a][b]);
        }
    }
    data.h = h;
    data.mt_defect = gm(&h, &h)?;
    let h_norm = h.reference_norm();
    let tangent_size = x[0].reference_norm().powi(2) + x[1].reference_norm().powi(2);
    let h_scale = frobenius2(&g_inv) * data.ii_norm().max(cov_norm2.sqrt()).max(tangent_size);
    data.curvature_scale = h_scale;
    data.minimality = if h_scale > 0.0 { h_norm / h_scale } else { 0.0 };
    let denom = metric_norm * h_norm * h_norm.max(NEAR_MINIMAL * h_scale);
    data.mt_defect_rel = if denom > 0.0 {
        data.mt_defect.abs() / denom
    } else {
        0.0
    };
    data.lagrangian_defect = symplectic(space, &at, &x[0], &x[1])?.abs();
    data.lagrangian_defect_rel = data.lagrangian_defect / size;
    Ok(data)
}

/// Fundamental data of `imm` at the parameter point `p`.
pub fn fundamental_data(imm: &Immersion, p: [f64; 2]) -> Result<FundamentalData> {
    fundamental_from_jets(imm.space(), &imm.eval(p, FUNDAMENTAL_ORDER)?)
}

/// `G(x, y)` with every ingredient a jet in the surface parameters.
fn metric_jet(space: SpaceId, z: (&Jet, &Jet), x: (&Jet, &Jet), y: (&Jet, &Jet)) -> Result<Jet> {
    let (z1, z2) = z;
    match space {
        SpaceId::EucLines => {
            let q = &(z1 * &z1.conj()) + 1.0;
            let qinv = q.recip()?;
            let scale = &(&qinv * &qinv) * 2.0;
            let twist = &(&(z1 * &z2.conj()).im() * &qinv) * 4.0;
            let a = -&(&(x.1 * &y.0.conj()) + &(&x.0.conj() * y.1)).im();
            let b = -&(x.0 * &y.0.conj()).re();
            Ok(&scale * &(&a + &(&twist * &b)))
        }
        SpaceId::HypGeodesics => {
            let d = &(z1 * &z2.conj()) + 1.0;
            let w = d.powi(-2)?;
            Ok((&w * &(&(x.0 * &y.1.conj()) + &(&x.1.conj() * y.0))).im())
        }
    }
}

/// Jets of the induced metric coefficients `(E, F, G)`, one order below the
/// chart jets.
pub fn induced_metric_jets(space: SpaceId, jets: &SurfaceJets) -> Result<[Jet; 3]> {
    crate::spaces::validate(space, &jets.point())?;
    let n = jets.z1.order().min(jets.z2.order());
    if n == 0 {
        return Err(Error::InsufficientOrder {
            requested: 1,
            available: 0,
        });
    }
    let (z1, z2) = (jets.z1.truncate(n), jets.z2.truncate(n));
    let xu = (z1.d_u()?, z2.d_u()?);
    let xv = (z1.d_v()?, z2.d_v()?);
    let z = (z1.truncate(n - 1), z2.truncate(n - 1));
    let z = (&z.0, &z.1);
    Ok([
        metric_jet(space, z, (&xu.0, &xu.1), (&xu.0, &xu.1))?,
        metric_jet(space, z, (&xu.0, &xu.1), (&xv.0, &xv.1))?,
        metric_jet(space, z, (&xv.0, &xv.1), (&xv.0, &xv.1))?,
    ])
}

/// Gauss curvature of `E du^2 + 2 F du dv + G dv^2` by the Brioschi formula.
/// Valid in any signature where `EG - F^2 != 0`.
pub fn brioschi(e: &Jet, f: &Jet, g: &Jet) -> Result<f64> {
    let d = |j: &Jet, p: usize, q: usize| j.partial(p, q).map(|c| c.re);
    let (e0, f0, g0) = (d(e, 0, 0)?, d(f, 0, 0)?, d(g, 0, 0)?);
    let (e_u, e_v, e_vv) = (d(e, 1, 0)?, d(e, 0, 1)?, d(e, 0, 2)?);
    let (f_u, f_v, f_uv) = (d(f, 1, 0)?, d(f, 0, 1)?, d(f, 1, 1)?);
    let (g_u, g_v, g_uu) = (d(g, 1, 0)?, d(g, 0, 1)?, d(g, 2, 0)?);
    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let first = det3([
        [-0.5 * e_vv + f_uv - 0.5 * g_uu, 0.5 * e_u, f_u - 0.5 * e_v],
        [f_v - 0.5 * g_u, e0, f0],
        [0.5 * g_v, f0, g0],
    ]);
    let second = det3([
        [0.0, 0.5 * e_v, 0.5 * g_u],
        [0.5 * e_v, e0, f0],
        [0.5 * g_u, f0, g0],
    ]);
    let det = e0 * g0 - f0 * f0;
    let scale = e0.abs().max(f0.abs()).max(g0.abs());
    if !(det.abs() > DEGENERATE_DET * scale * scale) {
        return Err(Error::DegenerateInducedMetric(det));
    }
    Ok((first - second) / (det * det))
}

/// Generic Gauss curvature from chart jets of order at least three.
pub fn gauss_from_jets(space: SpaceId, jets: &SurfaceJets) -> Result<f64> {
    let available = jets.z1.order().min(jets.z2.order());
    if available < CURVATURE_ORDER {
        return Err(Error::InsufficientOrder {
            requested: CURVATURE_ORDER,
            available,
        });
    }
    let [e, f, g] = induced_metric_jets(space, jets)?;
    brioschi(&e, &f, &g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurvatureMethod {
    /// Brioschi formula on the induced metric.
    Generic,
    /// Closed formula in `sigma0`, hyperbolic graphs only.
    Closed,
}

pub fn gauss_curvature(imm: &Immersion, p: [f64; 2], method: CurvatureMethod) -> Result<f64> {
    match method {
        CurvatureMethod::Generic => gauss_from_jets(imm.space(), &imm.eval(p, CURVATURE_ORDER)?),
        CurvatureMethod::Closed => Ok(imm.graph_point(p)?.gauss_curvature),
    }
}

/// How `f^4`, `f^3` are read in the Weingarten ODE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OdeReading {
    Powers,
    Derivatives,
}

/// `4 Re(tau^2) [f'' + f'^2][F4 + 2 f' F3 + 2 f''^2] - (1 + 4 Re(tau^2)) (F3 + 2 f' f'')^2`
/// with `F_k` either the power `f^k` or the derivative `f^(k)`.
pub fn weingarten_ode_residual(
    f: &Expr,
    tau: Complex64,
    x: f64,
    reading: OdeReading,
) -> Result<f64> {
    let xj = Jet::lift(Coordinate::U, [x, 0.0], 4)?;
    let fj = f.eval_jet(&[xj])?;
    let d = |k: usize| fj.partial(k, 0).map(|c| c.re);
    let (f0, f1, f2) = (d(0)?, d(1)?, d(2)?);
    let (f3, f4) = match reading {
        OdeReading::Powers => (f0.powi(3), f0.powi(4)),
        OdeReading::Derivatives => (d(3)?, d(4)?),
    };
    let rt = (tau * tau).re;
    Ok(
        4.0 * rt * (f2 + f1 * f1) * (f4 + 2.0 * f1 * f3 + 2.0 * f2 * f2)
            - (1.0 + 4.0 * rt) * (f3 + 2.0 * f1 * f2).powi(2),
    )
}
