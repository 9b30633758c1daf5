//! The two ambient neutral Kähler 4-manifolds: oriented lines of Euclidean
//! 3-space (chart `(xi, eta)` on `TS^2`) and oriented geodesics of
//! hyperbolic 3-space (chart `(mu1, mu2)` on `P^1 x P^1` minus the reflected
//! diagonal).
//!
//! Tangent vectors are stored by their holomorphic components. The real
//! coordinate order used for matrices and Christoffel symbols is
//! `(Re z1, Im z1, Re z2, Im z2)`.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Coordinate, Jet};

/// Points with a chart coordinate beyond this modulus are rejected.
pub const CHART_LIMIT: f64 = 1e6;
/// Minimum admissible `|1 + mu1 conj(mu2)|`.
pub const DIAGONAL_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceId {
    EucLines,
    HypGeodesics,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicPoint {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl GeodesicPoint {
    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        Self { z1, z2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TangentVec {
    pub v1: Complex64,
    pub v2: Complex64,
}

impl TangentVec {
    pub fn new(v1: Complex64, v2: Complex64) -> Self {
        Self { v1, v2 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The `k`-th real basis vector.
    pub fn basis(k: usize) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let zero = Complex64::new(0.0, 0.0);
        match k {
            0 => Self::new(one, zero),
            1 => Self::new(i, zero),
            2 => Self::new(zero, one),
            3 => Self::new(zero, i),
            _ => panic!("real basis index {k} out of range"),
        }
    }

    pub fn to_real(self) -> [f64; 4] {
        [self.v1.re, self.v1.im, self.v2.re, self.v2.im]
    }

    pub fn from_real(x: [f64; 4]) -> Self {
        Self::new(Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3]))
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.v1 * s, self.v2 * s)
    }

    /// Positive-definite reference norm on components.
    pub fn reference_norm(self) -> f64 {
        (self.v1.norm_sqr() + self.v2.norm_sqr()).sqrt()
    }
}

impl std::ops::Add for TangentVec {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.v1 + o.v1, self.v2 + o.v2)
    }
}

impl std::ops::Sub for TangentVec {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.v1 - o.v1, self.v2 - o.v2)
    }
}

impl std::ops::Neg for TangentVec {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.v1, -self.v2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Null,
}

/// Rejects points outside the chart or on the reflected diagonal.
pub fn validate(space: SpaceId, p: &GeodesicPoint) -> Result<()> {
    for z in [p.z1, p.z2] {
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() > CHART_LIMIT {
            return Err(Error::ChartOverflow(z.norm()));
        }
    }
    if space == SpaceId::HypGeodesics && (1.0 + p.z1 * p.z2.conj()).norm() < DIAGONAL_GUARD {
        return Err(Error::OnReflectedDiagonal);
    }
    Ok(())
}

/// Coefficients the metric depends on, as functions of the base point.
enum Coefficients {
    /// `scale * [-Im(x2 conj y1 + conj x1 y2) - twist * Re(x1 conj y1)]`
    Euc { scale: f64, twist: f64 },
    /// `Im[weight * (x1 conj y2 + conj x2 y1)]`
    Hyp { weight: Complex64 },
}

fn coefficients(space: SpaceId, p: &GeodesicPoint) -> Result<Coefficients> {
    validate(space, p)?;
    Ok(match space {
        SpaceId::EucLines => {
            let q = 1.0 + p.z1.norm_sqr();
            Coefficients::Euc {
                scale: 2.0 / (q * q),
                twist: 4.0 * (p.z1 * p.z2.conj()).im / q,
            }
        }
        SpaceId::HypGeodesics => {
            let d = 1.0 + p.z1 * p.z2.conj();
            Coefficients::Hyp {
                weight: 1.0 / (d * d),
            }
        }
    })
}

fn euc_parts(x: &TangentVec, y: &TangentVec) -> (f64, f64) {
    (
        -(x.v2 * y.v1.conj() + x.v1.conj() * y.v2).im,
        -(x.v1 * y.v1.conj()).re,
    )
}

fn hyp_part(x: &TangentVec, y: &TangentVec) -> Complex64 {
    x.v1 * y.v2.conj() + x.v2.conj() * y.v1
}

/// The neutral metric with symmetrized tensor products.
pub fn metric(space: SpaceId, p: &GeodesicPoint, x: &TangentVec, y: &TangentVec) -> Result<f64> {
    Ok(match coefficients(space, p)? {
        Coefficients::Euc { scale, twist } => {
            let (a, b) = euc_parts(x, y);
            scale * (a + twist * b)
        }
        Coefficients::Hyp { weight } => (weight * hyp_part(x, y)).im,
    })
}

/// `Omega(X, Y) = G(JX, Y)`.
pub fn symplectic(
    space: SpaceId,
    p: &GeodesicPoint,
    x: &TangentVec,
    y: &TangentVec,
) -> Result<f64> {
    metric(space, p, &complex_structure(space, x), y)
}

/// Multiplies both holomorphic components by `i`.
pub fn complex_structure(_space: SpaceId, x: &TangentVec) -> TangentVec {
    let i = Complex64::new(0.0, 1.0);
    TangentVec::new(x.v1 * i, x.v2 * i)
}

/// Metric matrix in the real basis.
pub fn metric_matrix(space: SpaceId, p: &GeodesicPoint) -> Result<Matrix4<f64>> {
    let c = coefficients(space, p)?;
    let mut m = Matrix4::zeros();
    for i in 0..4 {
        for j in i..4 {
            let (x, y) = (TangentVec::basis(i), TangentVec::basis(j));
            let g = match c {
                Coefficients::Euc { scale, twist } => {
                    let (a, b) = euc_parts(&x, &y);
                    scale * (a + twist * b)
                }
                Coefficients::Hyp { weight } => (weight * hyp_part(&x, &y)).im,
            };
            m[(i, j)] = g;
            m[(j, i)] = g;
        }
    }
    Ok(m)
}

/// First derivatives of the metric matrix: `out[l][(i, j)] = d_l g_ij`.
fn metric_derivatives(space: SpaceId, p: &GeodesicPoint) -> Result<[Matrix4<f64>; 4]> {
    validate(space, p)?;
    let t = Jet::lift(Coordinate::U, [0.0, 0.0], 1)?;
    let mut out = [Matrix4::zeros(); 4];
    for (l, slot) in out.iter_mut().enumerate() {
        let dir = TangentVec::basis(l);
        let z1 = &(&t * dir.v1) + p.z1;
        let z2 = &(&t * dir.v2) + p.z2;
        // scalar coefficient jets, then contract with constant basis products
        let coeff: Box<dyn Fn(&TangentVec, &TangentVec) -> f64> = match space {
            SpaceId::EucLines => {
                let q = &(&z1 * &z1.conj()) + 1.0;
                let qinv = q.recip()?;
                let scale = &(&qinv * &qinv) * 2.0;
                let twist = &(&(&z1 * &z2.conj()).im() * &qinv) * 4.0;
                let ds = scale.partial(1, 0)?.re;
                let dst = (&scale * &twist).partial(1, 0)?.re;
                Box::new(move |x, y| {
                    let (a, b) = euc_parts(x, y);
                    ds * a + dst * b
                })
            }
            SpaceId::HypGeodesics => {
                let d = &(&z1 * &z2.conj()) + 1.0;
                let w = d.powi(-2)?;
                let dw = w.partial(1, 0)?;
                Box::new(move |x, y| (dw * hyp_part(x, y)).im)
            }
        };
        for i in 0..4 {
            for j in i..4 {
                let g = coeff(&TangentVec::basis(i), &TangentVec::basis(j));
                slot[(i, j)] = g;
                slot[(j, i)] = g;
            }
        }
    }
    Ok(out)
}

/// Christoffel symbols of the Levi-Civita connection, indexed
/// `gamma[k][i][j]`, symmetric in `i, j`.
pub type Christoffels = [[[f64; 4]; 4]; 4];

pub fn christoffels(space: SpaceId, p: &GeodesicPoint) -> Result<Christoffels> {
    let g = metric_matrix(space, p)?;
    let ginv = g.try_inverse().ok_or(Error::SingularMetric)?;
    let dg = metric_derivatives(space, p)?;
    // first kind: [ij, l] = (d_i g_jl + d_j g_il - d_l g_ij) / 2
    let mut first = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            for l in 0..4 {
                let v = 0.5 * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                first[i][j][l] = v;
                first[j][i][l] = v;
            }
        }
    }
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for k in 0..4 {
        for i in 0..4 {
            for j in i..4 {
                let v: f64 = (0..4).map(|l| ginv[(k, l)] * first[i][j][l]).sum();
                gamma[k][i][j] = v;
                gamma[k][j][i] = v;
            }
        }
    }
    Ok(gamma)
}

/// `Gamma(X, Y)`, the correction turning a coordinate second derivative into
/// a covariant one.
pub fn contract(gamma: &Christoffels, x: &TangentVec, y: &TangentVec) -> TangentVec {
    let (xr, yr) = (x.to_real(), y.to_real());
    let mut out = [0.0; 4];
    for (k, o) in out.iter_mut().enumerate() {
        for i in 0..4 {
            for j in 0..4 {
                *o += gamma[k][i][j] * xr[i] * yr[j];
            }
        }
    }
    TangentVec::from_real(out)
}

/// Null iff `|G(X,X)| <= tol * |X|^2` in the reference norm.
pub fn causal_class(
    space: SpaceId,
    p: &GeodesicPoint,
    x: &TangentVec,
    tol: f64,
) -> Result<CausalClass> {
    let g = metric(space, p, x, x)?;
    let n = x.reference_norm();
    Ok(if g.abs() <= tol * n * n {
        CausalClass::Null
    } else if g > 0.0 {
        CausalClass::Spacelike
    } else {
        CausalClass::Timelike
    })
}

/// Signs of the metric eigenvalues as `(positive, negative)` counts.
pub fn signature(space: SpaceId, p: &GeodesicPoint) -> Result<(usize, usize)> {
    let eig = SymmetricEigen::new(metric_matrix(space, p)?);
    let pos = eig.eigenvalues.iter().filter(|e| **e > 0.0).count();
    let neg = eig.eigenvalues.iter().filter(|e| **e < 0.0).count();
    Ok((pos, neg))
}

/// Nullity of the normal vector with parameter `beta` on a Lagrangian
/// section: `beta^2 d(conj F) = conj(beta)^2 dbar(F)` up to `tol`, scaled
/// by `|beta|^2 (|d conj F| + |dbar F|)`.
pub fn null_normal_criterion(
    d_fbar: Complex64,
    dbar_f: Complex64,
    beta: Complex64,
    tol: f64,
) -> bool {
    let lhs = beta * beta * d_fbar - beta.conj() * beta.conj() * dbar_f;
    let scale = beta.norm_sqr() * (d_fbar.norm() + dbar_f.norm());
    lhs.norm() <= tol * scale.max(f64::MIN_POSITIVE)
}
