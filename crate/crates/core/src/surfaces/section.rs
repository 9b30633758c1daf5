//! Lagrangian sections of `TS^2`, built from a real support function `r`
//! through `F = (1 + xi conj(xi))^2 dbar(r) / 2`.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::{Coordinate, Jet};
use crate::spaces::TangentVec;

use super::half_angle;

/// Below this `|sigma|` a section is degenerate.
pub const SIGMA_FLOOR: f64 = 1e-10;

/// Branch data for support functions written in polar variables: the sign
/// of `R` and the angle at the base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sheet {
    pub r_sign: f64,
    pub theta: f64,
}

impl Sheet {
    pub fn principal(xi: Complex64) -> Self {
        Self {
            r_sign: 1.0,
            theta: xi.arg(),
        }
    }

    /// Sheet through the polar parameter point `(R, theta)`.
    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self {
            r_sign: if r < 0.0 { -1.0 } else { 1.0 },
            theta,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Support {
    /// Variables `u, v, xi, xibar, R, theta`.
    Expr(Expr),
    /// `2 R L(theta) / (1 + R^2) + r0`, whose graph function is
    /// `[(1 - R^2) L + i (1 + R^2) L'] e^{i theta} / 2`.
    Torus { l: Expr, r0: f64 },
}

/// Variable names available to a support expression, in binding order.
pub const SUPPORT_VARIABLES: [&str; 6] = ["u", "v", "xi", "xibar", "R", "theta"];

#[derive(Debug, Clone)]
pub struct SectionFamily {
    pub support: Support,
    /// `+1` or `-1`; flips the orientation of every line.
    pub sign: f64,
}

fn polar_jets(xi: &Jet, sheet: Sheet) -> Result<(Jet, Jet)> {
    let xi0 = xi.value();
    if xi0.norm() == 0.0 {
        return Err(Error::DomainError(
            "polar variables are singular at xi = 0".into(),
        ));
    }
    let radius = &xi.modulus()? * sheet.r_sign;
    let ratio = xi.scale(1.0 / xi0);
    let angle = &ratio.ln()?.im() + sheet.theta;
    Ok((radius, angle))
}

impl SectionFamily {
    /// Jet of the (orientation-signed) support function.
    pub fn support_jet(&self, xi: &Jet, sheet: Sheet) -> Result<Jet> {
        let r = match &self.support {
            Support::Expr(e) => {
                let needs_polar = e.uses(4) || e.uses(5);
                let (radius, angle) = if needs_polar {
                    polar_jets(xi, sheet)?
                } else {
                    (xi.clone(), xi.clone())
                };
                e.eval_jet(&[xi.re(), xi.im(), xi.clone(), xi.conj(), radius, angle])?
            }
            Support::Torus { l, r0 } => {
                let (radius, angle) = polar_jets(xi, sheet)?;
                let lj = l.eval_jet(&[angle])?;
                let q = &(&radius * &radius) + 1.0;
                &(&(&radius.checked_div(&q)? * &lj) * 2.0) + *r0
            }
        };
        Ok(&r * self.sign)
    }

    /// Jet of the graph function `F`, one order below `xi`.
    pub fn graph_jet(&self, xi: &Jet, sheet: Sheet) -> Result<Jet> {
        let r = self.support_jet(xi, sheet)?;
        let n = xi.order() - 1;
        let q = (&(xi * &xi.conj()) + 1.0).truncate(n);
        Ok(&(&(&q * &q) * &r.antiholo()?) * 0.5)
    }

    /// Closed-form data at the chart point `xi0`.
    pub fn point(&self, xi0: Complex64, sheet: Sheet) -> Result<SectionPoint> {
        let xi = Jet::lift(Coordinate::Xi, [xi0.re, xi0.im], 4)?;
        let f = self.graph_jet(&xi, sheet)?;
        let sigma = -&f.conj().holo()?;
        let s0 = sigma.value();
        if s0.norm() < SIGMA_FLOOR {
            return Err(Error::DegenerateSection(s0.norm()));
        }
        let abs = sigma.modulus()?;
        let unit = sigma.checked_div(&abs)?;
        let omega = half_angle(&unit)?;
        let q = (&(&xi * &xi.conj()) + 1.0).truncate(2);

        let abs0 = abs.value().re;
        let om0 = omega.value();
        let d_abs = abs.wirtinger(1, 0)?;
        let dbar_abs = abs.wirtinger(0, 1)?;
        // Each nullity equation reads a = conj(a). Reversing the orientation
        // turns sigma into -sigma and the equation into a = -conj(a); both
        // describe null vectors, so the residual takes the nearer branch.
        let branch = |a: Complex64| (a - a.conj()).norm().min((a + a.conj()).norm());
        let e1 = branch(om0.conj() * d_abs);
        let e2 = branch(omega.conj().checked_div(&q)?.wirtinger(1, 0)?);

        let phi0 = s0.arg();
        let phase = unit.scale(unit.value().conj()).ln()?.im();
        let d_phi = phase.wirtinger(1, 0)?;
        let dbar_phi = phase.wirtinger(0, 1)?;

        let f0 = f.value();
        let d_f = f.wirtinger(1, 0)?;
        let dbar_f = f.wirtinger(0, 1)?;
        let q0 = 1.0 + xi0.norm_sqr();
        let i = Complex64::new(0.0, 1.0);
        let e_phi = Complex64::from_polar(1.0, phi0);

        // G(E_a, E_b) = -Im(alpha_a alpha_b sigma) / q^2 symmetrized, so
        // alpha^2 sigma = -i q^2 makes E_1 unit spacelike
        let alpha = [-FRAC_PI_4, FRAC_PI_4]
            .map(|shift| Complex64::from_polar(q0 / abs0.sqrt(), -phi0 / 2.0 + shift));
        let frame = alpha.map(|a| TangentVec::new(a * 0.5, (a * d_f + a.conj() * dbar_f) * 0.5));

        // Coefficients for the frame with the two roles exchanged, so
        // E_1 = sqrt 2 * E_(2) and E_2 = sqrt 2 * E_(1) of the displayed one.
        // The displayed beta_11 carries a spurious overall minus sign.
        let denom = 8.0 / (q0 * q0) * e_phi * abs0.powi(3);
        let a2 = abs0 * abs0;
        let beta11 = (-s0 * dbar_abs
            + a2 * (d_phi - i * e_phi * dbar_phi - 2.0 * (i * xi0.conj() - xi0 * e_phi) / q0))
            / denom;
        let beta22 = -(s0 * dbar_abs
            + a2 * (d_phi + i * e_phi * dbar_phi - 2.0 * (i * xi0.conj() + xi0 * e_phi) / q0))
            / denom;
        let beta12 = -(abs0 * d_abs) / denom;

        let proj = d_f.conj() + 2.0 * (xi0.conj() * f0 - xi0 * f0.conj()) / q0;
        Ok(SectionPoint {
            xi: xi0,
            f: f0,
            d_f,
            dbar_f,
            sigma: s0,
            sigma_abs: abs0,
            phi: phi0,
            half_phase: om0,
            e1_residual: e1,
            e2_residual: e2,
            alpha,
            frame,
            beta: [2.0 * beta22, 2.0 * beta11, 2.0 * beta12],
            proj,
        })
    }
}

/// Values at one point of a Lagrangian section.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionPoint {
    pub xi: Complex64,
    pub f: Complex64,
    pub d_f: Complex64,
    pub dbar_f: Complex64,
    /// `sigma = -d(conj F) = |sigma| e^{i phi}`
    pub sigma: Complex64,
    pub sigma_abs: f64,
    /// Principal value of the Lagrangian angle.
    pub phi: f64,
    /// `e^{i phi / 2}` on the principal branch.
    pub half_phase: Complex64,
    /// Nullity residual of the off-diagonal second fundamental form.
    pub e1_residual: f64,
    /// Nullity residual of the mean curvature.
    pub e2_residual: f64,
    pub alpha: [Complex64; 2],
    /// Orthonormal tangent frame with `G = diag(1, -1)`.
    pub frame: [TangentVec; 2],
    /// `[beta_11, beta_22, beta_12]` in `frame`, so `A_ab = T(2 beta_ab)`.
    pub beta: [Complex64; 3],
    /// The `d/d eta` coefficient of the normal bundle parametrization,
    /// without the factor `beta`.
    pub proj: Complex64,
}

impl SectionPoint {
    /// `d(conj F) = conj(dbar F)`.
    pub fn d_fbar(&self) -> Complex64 {
        self.dbar_f.conj()
    }

    /// The normal vector `Re[beta (d_xi + P d_eta - d(conj F) d_etabar)]`.
    pub fn normal(&self, beta: Complex64) -> TangentVec {
        TangentVec::new(
            beta * 0.5,
            (beta * self.proj - beta.conj() * self.dbar_f) * 0.5,
        )
    }

    /// `A_(ab)` assembled from the beta coefficients, indexed `[a][b]`.
    pub fn second_fundamental(&self) -> [[TangentVec; 2]; 2] {
        let [b11, b22, b12] = self.beta;
        let a12 = self.normal(b12 * 2.0);
        [[self.normal(b11 * 2.0), a12], [a12, self.normal(b22 * 2.0)]]
    }

    /// Trace of `A` in the frame, `A_11 - A_22`.
    pub fn mean_curvature(&self) -> TangentVec {
        let a = self.second_fundamental();
        a[0][0] - a[1][1]
    }
}
