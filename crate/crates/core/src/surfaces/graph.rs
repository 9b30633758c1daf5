//! Lagrangian graphs `mu1 -> (mu1, mu2)` in the space of oriented hyperbolic
//! geodesics, generated by a real potential `h` with
//! `d h = conj(mu2) / (1 + mu1 conj(mu2))`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::{Coordinate, Jet};

use super::half_angle;
use super::profile::SphereProfile;

/// Below this `|sigma0|` a graph is degenerate.
pub const SIGMA0_FLOOR: f64 = 1e-10;

/// Variable names available to a general potential, in binding order.
pub const POTENTIAL_VARIABLES: [&str; 5] = ["u", "v", "mu", "mubar", "t"];

#[derive(Debug, Clone)]
pub enum Potential {
    /// Variables `u, v, mu, mubar, t` with `t = tau mu + conj(tau mu)`.
    General(Expr),
    /// `h = f(t)` for a profile `f` in the variable `x`.
    Profile(Expr),
    /// `h = 2 f(t / 2)` with `f' = x / (x^{2n} + c^2)`.
    Sphere(SphereProfile),
}

#[derive(Debug, Clone)]
pub struct GraphFamily {
    pub potential: Potential,
    pub tau: Complex64,
}

impl GraphFamily {
    /// Jet of `t = tau mu + conj(tau mu)`.
    pub fn profile_variable(&self, mu: &Jet) -> Jet {
        (&(mu * self.tau) * 2.0).re()
    }

    /// Jet of the potential. Without `need_value` the constant term may be
    /// omitted for potentials known only up to a constant.
    pub fn potential_jet(&self, mu: &Jet, need_value: bool) -> Result<Jet> {
        let t = self.profile_variable(mu);
        let h = match &self.potential {
            Potential::General(e) => e.eval_jet(&[mu.re(), mu.im(), mu.clone(), mu.conj(), t])?,
            Potential::Profile(e) => e.eval_jet(&[t])?,
            Potential::Sphere(p) => p.potential(&t, need_value)?,
        };
        if !h.is_real(1e-9) {
            return Err(Error::NonRealJet("potential"));
        }
        Ok(h.re())
    }

    /// Jets of `(mu1, mu2)` one order below `mu`.
    pub fn chart_jets(&self, mu: &Jet) -> Result<(Jet, Jet)> {
        let n = mu.order() - 1;
        let h = self.potential_jet(mu, false)?;
        let f = h.holo()?;
        let mu_n = mu.truncate(n);
        let den = &mu_n.real_like(1.0) - &(&mu_n * &f);
        let mubar2 = f
            .checked_div(&den)
            .map_err(|_| Error::ChartOverflow(f64::INFINITY))?;
        Ok((mu_n, mubar2.conj()))
    }

    /// Closed-form data at the chart point `mu0`.
    pub fn point(&self, mu0: Complex64) -> Result<GraphPoint> {
        let mu = Jet::lift(Coordinate::Xi, [mu0.re, mu0.im], 4)?;
        let h = self.potential_jet(&mu, false)?;
        let dh = h.holo()?;
        let d2h = dh.holo()?;
        let dh2 = dh.truncate(2);
        let sigma0 = &d2h + &(&dh2 * &dh2);
        let s0 = sigma0.value();
        if s0.norm() < SIGMA0_FLOOR {
            return Err(Error::DegenerateGraph(s0.norm()));
        }

        // the chart leaves every bounded region where 1 = mu1 dh
        let chart = self.chart_jets(&mu).ok().and_then(|(_, mu2j)| {
            let mubar2j = mu2j.conj();
            let diag = &(&mu.truncate(3) * &mubar2j) + 1.0;
            let via = mubar2j
                .holo()
                .ok()?
                .checked_div(&(&diag * &diag).truncate(2))
                .ok()?;
            Some((mubar2j.value().conj(), via.value()))
        });

        let abs = sigma0.modulus()?;
        let unit = sigma0.checked_div(&abs)?;
        let phase = half_angle(&unit)?;
        let p0 = phase.value();
        let d_phase = phase.wirtinger(1, 0)?;
        let dh0 = dh.value();
        // d(e^{-i phi + h}) / e^h
        let z = phase.conj().wirtinger(1, 0)? + p0.conj() * dh0;
        let scale = 1.0 + dh0.norm() + d_phase.norm();

        let sbar = sigma0.conj();
        // conj(mu2) / (1 + mu1 conj(mu2)) = dh
        let jh = -(sbar.wirtinger(1, 0)? / sbar.value() - sigma0.wirtinger(1, 0)? / s0 - 4.0 * dh0)
            / (2.0 * s0);

        let d = |j: &Jet, a: usize, b: usize| j.wirtinger(a, b);
        let i = Complex64::new(0.0, 1.0);
        let k = i / (4.0 * s0.norm_sqr())
            * (2.0 * (d(&sigma0, 0, 2)? - d(&sbar, 2, 0)?)
                + (d(&sbar, 1, 0)?.powi(2) - d(&sbar, 0, 1)? * d(&sigma0, 0, 1)?) / sbar.value()
                - (d(&sigma0, 0, 1)?.powi(2) - d(&sigma0, 1, 0)? * d(&sbar, 1, 0)?) / s0);

        Ok(GraphPoint {
            mu1: mu0,
            mu2: chart.map(|c| c.0),
            dh: dh0,
            sigma0: s0,
            sigma0_via_chart: chart.map(|c| c.1),
            phase: p0,
            residual_minus: z.im.abs() / scale,
            residual_plus: z.re.abs() / scale,
            jh_coeff: jh,
            gauss_curvature: k.re,
            gauss_curvature_imag: k.im,
        })
    }

    /// `ln|dh| + h`, the support function up to its additive constant.
    pub fn support(&self, mu0: Complex64) -> Result<f64> {
        let mu = Jet::lift(Coordinate::Xi, [mu0.re, mu0.im], 1)?;
        let h = self.potential_jet(&mu, true)?;
        Ok(h.wirtinger(1, 0)?.norm().ln() + h.value().re)
    }
}

/// Values at one point of a hyperbolic Lagrangian graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphPoint {
    pub mu1: Complex64,
    /// `None` where the chart point is at infinity.
    pub mu2: Option<Complex64>,
    pub dh: Complex64,
    /// `d^2 h + (d h)^2 = |sigma0| e^{2 i phi}`
    pub sigma0: Complex64,
    /// `d conj(mu2) / (1 + mu1 conj(mu2))^2`, equal to `sigma0`.
    pub sigma0_via_chart: Option<Complex64>,
    /// `e^{i phi}` on the principal branch.
    pub phase: Complex64,
    /// `|Im d(e^{-i phi + h})|`, normalized by `e^h (1 + |dh| + |d phi|)`.
    pub residual_minus: f64,
    /// `|Re d(e^{-i phi + h})|`, same normalization.
    pub residual_plus: f64,
    /// Coefficient `a` of the tangential field `J H = a d + conj(a) dbar`.
    pub jh_coeff: Complex64,
    /// Gauss curvature from the closed formula in `sigma0`.
    pub gauss_curvature: f64,
    /// Imaginary part left by the closed formula; zero up to rounding.
    pub gauss_curvature_imag: f64,
}

impl GraphPoint {
    /// The smaller of the two criterion residuals.
    pub fn residual(&self) -> f64 {
        self.residual_minus.min(self.residual_plus)
    }
}
