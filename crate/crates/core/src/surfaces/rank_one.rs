//! Rank-one surfaces: Euclidean affine normal bundles over a unit-speed
//! spherical curve, and hyperbolic surfaces with `mu1` depending on `s`
//! only.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::{Coordinate, Jet};
use crate::spaces::{validate, GeodesicPoint, SpaceId, TangentVec};

/// Allowed deviation of the round speed from 1.
pub const SPEED_TOL: f64 = 1e-8;
/// Below this `|b_t|` (Euclidean) or `|g_st|` (hyperbolic) the induced
/// metric degenerates.
pub const RANK_ONE_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone)]
pub enum Curve {
    /// `xi = e^{is}`
    Equator,
    /// `xi = r0 e^{i w s}` with `w = (1 + r0^2) / (2 r0)`.
    Latitude { r0: f64 },
    /// `xi = re(s) + i im(s)`
    Custom { re: Expr, im: Expr },
}

impl Curve {
    pub fn latitude(r0: f64) -> Result<Self> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::InvalidFamily(format!(
                "latitude radius must be positive, got {r0}"
            )));
        }
        Ok(Curve::Latitude { r0 })
    }

    /// Jet of the curve given the jet of `s`.
    pub fn jet(&self, s: &Jet) -> Result<Jet> {
        let i = Complex64::new(0.0, 1.0);
        Ok(match self {
            Curve::Equator => (s * i).exp(),
            Curve::Latitude { r0 } => {
                let w = (1.0 + r0 * r0) / (2.0 * r0);
                &(s * (i * w)).exp() * *r0
            }
            Curve::Custom { re, im } => {
                &re.eval_jet(std::slice::from_ref(s))?
                    + &(&im.eval_jet(std::slice::from_ref(s))? * i)
            }
        })
    }

    /// Geodesic curvature of the closed-form presets.
    pub fn preset_curvature(&self) -> Option<f64> {
        match self {
            Curve::Equator => Some(0.0),
            Curve::Latitude { r0 } => Some((1.0 - r0 * r0) / (2.0 * r0)),
            Curve::Custom { .. } => None,
        }
    }
}

/// Round speed `2 |xi'| / (1 + |xi|^2)`.
pub fn round_speed(xi: Complex64, xi_dot: Complex64) -> f64 {
    2.0 * xi_dot.norm() / (1.0 + xi.norm_sqr())
}

/// Geodesic curvature of a plane curve `xi(s)` in the round conformal
/// metric, signed towards `i xi'`.
pub fn geodesic_curvature(xi: Complex64, xi_dot: Complex64, xi_ddot: Complex64) -> f64 {
    let speed = xi_dot.norm();
    let q = 1.0 + xi.norm_sqr();
    let lambda = 2.0 / q;
    let flat = (xi_dot.conj() * xi_ddot).im / speed.powi(3);
    let normal = Complex64::new(0.0, 1.0) * xi_dot / speed;
    // derivative of ln(lambda) along the unit normal
    let log_conformal = -2.0 * (xi.conj() * normal).re / q;
    (flat - log_conformal) / lambda
}

#[derive(Debug, Clone)]
pub struct EucRankOne {
    pub curve: Curve,
    /// Tangential coefficient `a(s, t)`.
    pub a: Expr,
    /// Normal coefficient `b(s, t)`.
    pub b: Expr,
    pub sign: f64,
}

impl EucRankOne {
    fn coefficient_jets(&self, s0: f64, t0: f64, order: usize) -> Result<(Jet, Jet, Jet, Jet)> {
        let s = Jet::lift(Coordinate::U, [s0, t0], order + 1)?;
        let t = Jet::lift(Coordinate::V, [s0, t0], order + 1)?;
        let xi = self.curve.jet(&s)?;
        let xi_dot = xi.d_u()?;
        let speed = round_speed(xi.value(), xi_dot.value());
        if (speed - 1.0).abs() > SPEED_TOL {
            return Err(Error::NotArcLength(speed));
        }
        let a = self.a.eval_jet(&[s.clone(), t.clone()])?;
        let b = self.b.eval_jet(&[s, t])?;
        let b_t = b.partial(0, 1)?.re;
        if b_t.abs() < RANK_ONE_FLOOR {
            return Err(Error::DegenerateRankOne(format!("|b_t| = {:e}", b_t.abs())));
        }
        Ok((xi, xi_dot, a, b))
    }

    pub fn chart_jets(&self, p: [f64; 2], order: usize) -> Result<(Jet, Jet)> {
        let (xi, xi_dot, a, b) = self.coefficient_jets(p[0], p[1], order)?;
        let i = Complex64::new(0.0, 1.0);
        let v = &a.truncate(order) + &(&b.truncate(order) * i);
        Ok((xi.truncate(order), &(&v * &xi_dot) * self.sign))
    }

    /// Closed-form frame data at `(s, t)`.
    pub fn point(&self, p: [f64; 2]) -> Result<RankOneEucPoint> {
        let (xi, xi_dot, a, b) = self.coefficient_jets(p[0], p[1], 3)?;
        let xi_ddot = xi_dot.d_u()?;
        let x0 = xi.value();
        let xd = xi_dot.value();
        let k = geodesic_curvature(x0, xd, xi_ddot.value());
        // the orientation sign flips V, hence both a and b
        let sg = self.sign;
        let da = |i, j| a.partial(i, j).map(|z| sg * z.re);
        let db = |i, j| b.partial(i, j).map(|z| sg * z.re);
        let (a0, a_s, a_t, a_st) = (da(0, 0)?, da(1, 0)?, da(0, 1)?, da(1, 1)?);
        let (b_s, b_t) = (db(1, 0)?, db(0, 1)?);
        // H = c J(Psi_t), with c fixed by G(2H, J Psi_s) = 2 h_112 / F
        let coef = (k * b_t - a_st) / (b_t * b_t);
        let mean_curvature = TangentVec::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(-b_t, a_t) * xd * coef,
        );
        Ok(RankOneEucPoint {
            xi: x0,
            xi_dot: xd,
            curvature: k,
            a_s,
            a_t,
            a_st,
            b_s,
            b_t,
            e: -2.0 * (b_s + k * a0),
            f: -b_t,
            g: 0.0,
            h112: k * b_t - a_st,
            mean_curvature,
        })
    }
}

/// Closed-form data at one point of a Euclidean rank-one surface.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneEucPoint {
    pub xi: Complex64,
    pub xi_dot: Complex64,
    pub curvature: f64,
    pub a_s: f64,
    pub a_t: f64,
    pub a_st: f64,
    pub b_s: f64,
    pub b_t: f64,
    /// First fundamental form `E, F, G` in the frame conventions of the
    /// Frenet splitting.
    pub e: f64,
    pub f: f64,
    pub g: f64,
    /// The only nonzero extrinsic curvature component.
    pub h112: f64,
    /// `(k b_t - a_st) / b_t^2` times `J` of the `t`-derivative. Normal to
    /// the surface only where it is Lagrangian, that is where `a_t = 0`.
    pub mean_curvature: TangentVec,
}

#[derive(Debug, Clone)]
pub struct HypRankOne {
    /// `mu1(s)` as real and imaginary parts.
    pub mu1: (Expr, Expr),
    /// `mu2(s, t)` as real and imaginary parts.
    pub mu2: (Expr, Expr),
}

impl HypRankOne {
    pub fn chart_jets(&self, p: [f64; 2], order: usize) -> Result<(Jet, Jet)> {
        let s = Jet::lift(Coordinate::U, p, order)?;
        let t = Jet::lift(Coordinate::V, p, order)?;
        let i = Complex64::new(0.0, 1.0);
        let z1 = &self.mu1.0.eval_jet(std::slice::from_ref(&s))?
            + &(&self.mu1.1.eval_jet(std::slice::from_ref(&s))? * i);
        let st = [s, t];
        let z2 = &self.mu2.0.eval_jet(&st)? + &(&self.mu2.1.eval_jet(&st)? * i);
        validate(
            SpaceId::HypGeodesics,
            &GeodesicPoint::new(z1.value(), z2.value()),
        )?;
        if order >= 1 {
            let (_, g_st) = induced(&z1, &z2)?;
            if g_st.abs() < RANK_ONE_FLOOR {
                return Err(Error::DegenerateRankOne(format!(
                    "|g_st| = {:e}",
                    g_st.abs()
                )));
            }
        }
        Ok((z1, z2))
    }

    /// Closed-form induced metric `(g_ss, g_st, g_tt)`.
    pub fn point(&self, p: [f64; 2]) -> Result<RankOneHypPoint> {
        let (z1, z2) = self.chart_jets(p, 1)?;
        let (g_ss, g_st) = induced(&z1, &z2)?;
        Ok(RankOneHypPoint {
            mu1: z1.value(),
            mu2: z2.value(),
            g_ss,
            g_st,
            g_tt: 0.0,
        })
    }
}

fn induced(z1: &Jet, z2: &Jet) -> Result<(f64, f64)> {
    let d = 1.0 + z1.value() * z2.value().conj();
    let w = 1.0 / (d * d);
    let m1_s = z1.partial(1, 0)?;
    let g_ss = 2.0 * (m1_s * z2.partial(1, 0)?.conj() * w).im;
    let g_st = (m1_s * z2.partial(0, 1)?.conj() * w).im;
    Ok((g_ss, g_st))
}

/// Closed-form data at one point of a hyperbolic rank-one surface.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneHypPoint {
    pub mu1: Complex64,
    pub mu2: Complex64,
    pub g_ss: f64,
    pub g_st: f64,
    pub g_tt: f64,
}
