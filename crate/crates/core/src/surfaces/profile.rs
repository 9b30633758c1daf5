//! Potentials of hyperbolic profile graphs that are not plain expressions:
//! the sphere family with slope `x / (x^{2n} + c^2)`, and the expression
//! sources of the two Weingarten families.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::series;

/// Profile `f` with `f'(x) = x / (x^{2n} + c^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereProfile {
    pub n: u32,
    pub c: f64,
    pub quadrature: bool,
}

const QUAD_TOL: f64 = 1e-10;

impl SphereProfile {
    pub fn new(n: u32, c: f64, quadrature: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidFamily(format!(
                "sphere family needs n >= 2, got {n}"
            )));
        }
        if c == 0.0 || !c.is_finite() {
            return Err(Error::InvalidFamily("sphere family needs c != 0".into()));
        }
        Ok(Self { n, c, quadrature })
    }

    pub fn slope(&self, x: f64) -> f64 {
        x / (x.powi(2 * self.n as i32) + self.c * self.c)
    }

    /// Whether `f` has an elementary antiderivative here.
    pub fn has_closed_form(&self) -> bool {
        self.n == 2 || (self.n == 3 && self.c.abs() == 1.0)
    }

    /// `f(x)`, from the closed form when available, else by quadrature
    /// from 0.
    pub fn value(&self, x: f64) -> Result<f64> {
        match self.n {
            2 => {
                let c = self.c;
                Ok((x * x / c).atan() / (2.0 * c))
            }
            3 if self.c.abs() == 1.0 => {
                let x2 = x * x;
                let s3 = 3f64.sqrt();
                Ok((1.0 + x2).ln() / 6.0 - (1.0 - x2 + x2 * x2).ln() / 12.0
                    + s3 / 6.0 * ((2.0 * x2 - 1.0) / s3).atan())
            }
            _ if self.quadrature => Ok(self.quadrature_value(x)),
            _ => Err(Error::QuadratureUnavailable {
                n: self.n,
                c: self.c,
            }),
        }
    }

    /// Composite Simpson on `[0, x]`, doubling panels until two successive
    /// estimates agree to the tolerance.
    fn quadrature_value(&self, x: f64) -> f64 {
        let simpson = |panels: usize| {
            let h = x / panels as f64;
            let mut acc = self.slope(0.0) + self.slope(x);
            for k in 1..panels {
                let w = if k % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * self.slope(k as f64 * h);
            }
            acc * h / 3.0
        };
        let mut panels = 16;
        let mut prev = simpson(panels);
        while panels < 1 << 22 {
            panels *= 2;
            let next = simpson(panels);
            if (next - prev).abs() <= QUAD_TOL * (1.0 + next.abs()) {
                return next;
            }
            prev = next;
        }
        prev
    }

    /// Jet of the potential `h = 2 f(t / 2)` given the jet of `t`. When the
    /// value of `f` is unknown and `need_value` is false, the constant term
    /// is zero; only derivatives are meaningful then.
    pub fn potential(&self, t: &Jet, need_value: bool) -> Result<Jet> {
        let t0 = t.value().re;
        let x0 = t0 / 2.0;
        let deg = t.order();
        let slope = series::sphere_profile_slope(x0, self.n, self.c, deg)?;
        let rescaled: Vec<Complex64> = slope
            .iter()
            .enumerate()
            .map(|(k, s)| s * 0.5f64.powi(k as i32))
            .collect();
        let mut coeffs = series::integrate(&rescaled, deg);
        coeffs[0] = match self.value(x0) {
            Ok(v) => Complex64::new(2.0 * v, 0.0),
            Err(e) if need_value => return Err(e),
            Err(_) => Complex64::new(0.0, 0.0),
        };
        Ok(t.compose_series(&coeffs).re())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeingartenKind {
    Sinh,
    Sin,
}

impl WeingartenKind {
    /// Profile solving `f'' + f'^2 = +c0^2` (sinh) or `-c0^2` (sin).
    pub fn profile_source(self) -> &'static str {
        match self {
            WeingartenKind::Sinh => "ln(abs(cosh(c0*x + d0)))",
            WeingartenKind::Sin => "ln(abs(cos(c0*x + d0)))",
        }
    }

    /// The support function up to an additive constant.
    pub fn support(self, c0: f64, d0: f64, x: f64) -> f64 {
        match self {
            WeingartenKind::Sinh => (c0 * (c0 * x + d0).sinh()).abs().ln(),
            WeingartenKind::Sin => (c0 * (c0 * x + d0).sin()).abs().ln(),
        }
    }

    /// `f'' + f'^2`, constant along the family.
    pub fn curvature_constant(self, c0: f64) -> f64 {
        match self {
            WeingartenKind::Sinh => c0 * c0,
            WeingartenKind::Sin => -c0 * c0,
        }
    }
}
