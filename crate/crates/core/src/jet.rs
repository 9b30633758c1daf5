//! Truncated bivariate Taylor jets over the complex numbers.
//!
//! A [`Jet`] stores the Taylor coefficients of a complex-valued function of
//! two real variables `(u, v)` about a base point, up to total degree `N`,
//! in powers of `dxi = du + i dv` and its conjugate:
//!
//! ```text
//! f(u0 + du, v0 + dv) = sum_{p+q <= N} c_pq dxi^p conj(dxi)^q + O(|d|^{N+1})
//! ```
//!
//! so that `c_pq = (1 / p! q!) d^p dbar^q f` with the Wirtinger operators
//! `d = (d_u - i d_v)/2`, `dbar = (d_u + i d_v)/2`. Arithmetic on jets is
//! exact truncated polynomial arithmetic. In this basis Wirtinger
//! derivatives are index shifts by integers, so `d dbar f = dbar d f` and
//! `d^p dbar^q conj(f) = conj(dbar^p d^q f)` hold bit for bit.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series;

/// Hard upper bound on jet order. User-facing computations are limited to
/// order 6; internal evaluators request up to two more orders so that
/// derivatives of inputs still carry the requested order.
pub const MAX_ORDER: usize = 8;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const HALF: Complex64 = Complex64 { re: 0.5, im: 0.0 };

/// Coordinate functions that can be lifted to a jet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    U,
    V,
    /// `xi = u + i v`
    Xi,
    /// `conj(xi) = u - i v`
    XiBar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    base: [f64; 2],
    order: usize,
    coeffs: Vec<Complex64>,
}

#[inline]
fn index(p: usize, q: usize) -> usize {
    let d = p + q;
    d * (d + 1) / 2 + q
}

#[inline]
fn len_for(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn binomial(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

impl Jet {
    fn check_order(order: usize) -> Result<()> {
        if order > MAX_ORDER {
            Err(Error::OrderTooLarge(order))
        } else {
            Ok(())
        }
    }

    /// Jet of a constant function.
    pub fn constant(value: Complex64, base: [f64; 2], order: usize) -> Result<Self> {
        Self::check_order(order)?;
        let mut coeffs = vec![ZERO; len_for(order)];
        coeffs[0] = value;
        Ok(Self {
            base,
            order,
            coeffs,
        })
    }

    /// Jet of one of the chart coordinate functions at `base`.
    pub fn lift(which: Coordinate, base: [f64; 2], order: usize) -> Result<Self> {
        Self::check_order(order)?;
        // (d f, dbar f) of the coordinate function
        let (value, d, dbar) = match which {
            Coordinate::U => (Complex64::new(base[0], 0.0), HALF, HALF),
            Coordinate::V => (Complex64::new(base[1], 0.0), -I * 0.5, I * 0.5),
            Coordinate::Xi => (Complex64::new(base[0], base[1]), ONE, ZERO),
            Coordinate::XiBar => (Complex64::new(base[0], -base[1]), ZERO, ONE),
        };
        let mut j = Self::constant(value, base, order)?;
        if order >= 1 {
            j.coeffs[index(1, 0)] = d;
            j.coeffs[index(0, 1)] = dbar;
        }
        Ok(j)
    }

    /// Builds a jet from `dxi^p conj(dxi)^q` coefficients in triangular
    /// order: degree by degree, `q` ascending.
    pub fn from_coeffs(base: [f64; 2], order: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        Self::check_order(order)?;
        if coeffs.len() != len_for(order) {
            return Err(Error::OrderMismatch(format!(
                "expected {} coefficients for order {order}, got {}",
                len_for(order),
                coeffs.len()
            )));
        }
        Ok(Self {
            base,
            order,
            coeffs,
        })
    }

    /// A constant jet sharing this jet's base point and order.
    pub fn constant_like(&self, value: Complex64) -> Self {
        let mut coeffs = vec![ZERO; self.coeffs.len()];
        coeffs[0] = value;
        Self {
            base: self.base,
            order: self.order,
            coeffs,
        }
    }

    pub fn real_like(&self, value: f64) -> Self {
        self.constant_like(Complex64::new(value, 0.0))
    }

    pub fn base(&self) -> [f64; 2] {
        self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Coefficient of `dxi^p conj(dxi)^q`, zero beyond the truncation order.
    pub fn coeff(&self, p: usize, q: usize) -> Complex64 {
        if p + q > self.order {
            ZERO
        } else {
            self.coeffs[index(p, q)]
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `d^p_u d^q_v f` at the base point, from `d_u = d + dbar` and
    /// `d_v = i (d - dbar)`.
    pub fn partial(&self, p: usize, q: usize) -> Result<Complex64> {
        let total = p + q;
        if total > self.order {
            return Err(Error::InsufficientOrder {
                requested: total,
                available: self.order,
            });
        }
        let mut acc = ZERO;
        for a in 0..=p {
            for b in 0..=q {
                // d^(a+b) dbar^(total-a-b) with weight C(p,a) C(q,b) (-1)^(q-b)
                let sign = if (q - b).is_multiple_of(2) { 1.0 } else { -1.0 };
                let holo = a + b;
                acc += self.coeffs[index(holo, total - holo)]
                    * (sign
                        * binomial(p, a)
                        * binomial(q, b)
                        * factorial(holo)
                        * factorial(total - holo));
            }
        }
        Ok(acc * I.powu(q as u32))
    }

    /// `d^p dbar^q f` at the base point, with `d = (d_u - i d_v)/2` and
    /// `dbar = (d_u + i d_v)/2`.
    pub fn wirtinger(&self, holo: usize, anti: usize) -> Result<Complex64> {
        if holo + anti > self.order {
            return Err(Error::InsufficientOrder {
                requested: holo + anti,
                available: self.order,
            });
        }
        Ok(self.coeffs[index(holo, anti)] * (factorial(holo) * factorial(anti)))
    }

    fn lower(&self) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::InsufficientOrder {
                requested: 1,
                available: 0,
            });
        }
        Ok(Self {
            base: self.base,
            order: self.order - 1,
            coeffs: vec![ZERO; len_for(self.order - 1)],
        })
    }

    /// Jet of `d_u f`, one order lower.
    pub fn d_u(&self) -> Result<Self> {
        Ok(&self.holo()? + &self.antiholo()?)
    }

    /// Jet of `d_v f`, one order lower.
    pub fn d_v(&self) -> Result<Self> {
        Ok(&(&self.holo()? - &self.antiholo()?) * I)
    }

    /// Jet of the holomorphic Wirtinger derivative `d f`.
    pub fn holo(&self) -> Result<Self> {
        let mut out = self.lower()?;
        for d in 0..=out.order {
            for q in 0..=d {
                let p = d - q;
                out.coeffs[index(p, q)] = self.coeffs[index(p + 1, q)] * (p + 1) as f64;
            }
        }
        Ok(out)
    }

    /// Jet of the antiholomorphic Wirtinger derivative `dbar f`.
    pub fn antiholo(&self) -> Result<Self> {
        let mut out = self.lower()?;
        for d in 0..=out.order {
            for q in 0..=d {
                let p = d - q;
                out.coeffs[index(p, q)] = self.coeffs[index(p, q + 1)] * (q + 1) as f64;
            }
        }
        Ok(out)
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self {
            base: self.base,
            order,
            coeffs: self.coeffs[..len_for(order)].to_vec(),
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.order != other.order || self.base != other.base {
            return Err(Error::OrderMismatch(format!(
                "order {} at {:?} vs order {} at {:?}",
                self.order, self.base, other.order, other.base
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            base: self.base,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            base: self.base,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| f(*c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let n = self.order;
        let mut out = vec![ZERO; self.coeffs.len()];
        for d1 in 0..=n {
            for q1 in 0..=d1 {
                let a = self.coeffs[index(d1 - q1, q1)];
                if a == ZERO {
                    continue;
                }
                for d2 in 0..=(n - d1) {
                    for q2 in 0..=d2 {
                        let p = d1 - q1 + d2 - q2;
                        out[index(p, q1 + q2)] += a * other.coeffs[index(d2 - q2, q2)];
                    }
                }
            }
        }
        Ok(Self {
            base: self.base,
            order: n,
            coeffs: out,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        self.try_mul(&other.recip()?)
    }

    /// The part of the jet with zero constant term.
    fn increment(&self) -> Self {
        let mut d = self.clone();
        d.coeffs[0] = ZERO;
        d
    }

    /// Evaluates `sum_k t[k] (f - f(base))^k`, i.e. composes a univariate
    /// Taylor series taken at this jet's value with the jet.
    pub fn compose_series(&self, t: &[Complex64]) -> Self {
        let delta = self.increment();
        let n = self.order.min(t.len().saturating_sub(1));
        let mut acc = self.constant_like(t[n]);
        for k in (0..n).rev() {
            acc = &acc * &delta;
            acc.coeffs[0] += t[k];
        }
        acc
    }

    /// Substitutes `u = p1`, `v = p2`, where `p1` and `p2` are jets in new
    /// variables whose values equal this jet's base point.
    pub fn compose(&self, p1: &Jet, p2: &Jet) -> Result<Self> {
        p1.compatible(p2)?;
        let v1 = p1.value();
        let v2 = p2.value();
        let tol = 1e-12 * (1.0 + self.base[0].abs() + self.base[1].abs());
        if (v1.re - self.base[0]).abs() > tol
            || (v2.re - self.base[1]).abs() > tol
            || v1.im.abs() > tol
            || v2.im.abs() > tol
        {
            return Err(Error::OrderMismatch(format!(
                "substituted jets have value ({v1}, {v2}), expected base {:?}",
                self.base
            )));
        }
        let order = p1.order;
        if order > self.order {
            return Err(Error::InsufficientOrder {
                requested: order,
                available: self.order,
            });
        }
        // dxi = dp1 + i dp2, conj(dxi) = dp1 - i dp2
        let d1 = p1.increment();
        let d2 = &p2.increment() * I;
        let dxi = &d1 + &d2;
        let dxib = &d1 - &d2;
        let mut pow1 = vec![p1.constant_like(ONE)];
        let mut pow2 = vec![p1.constant_like(ONE)];
        for k in 1..=order {
            pow1.push(&pow1[k - 1] * &dxi);
            pow2.push(&pow2[k - 1] * &dxib);
        }
        let mut out = p1.constant_like(ZERO);
        for d in 0..=order {
            for q in 0..=d {
                let c = self.coeffs[index(d - q, q)];
                if c == ZERO {
                    continue;
                }
                out = &out + &(&(&pow1[d - q] * &pow2[q]) * c);
            }
        }
        Ok(out)
    }

    pub fn recip(&self) -> Result<Self> {
        let a0 = self.value();
        if a0.norm() == 0.0 {
            return Err(Error::DivisionByZeroJet);
        }
        let n = self.order;
        let mut t = Vec::with_capacity(n + 1);
        let inv = 1.0 / a0;
        let mut p = inv;
        for k in 0..=n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            t.push(p * sign);
            p *= inv;
        }
        Ok(self.compose_series(&t))
    }

    pub fn powi(&self, n: i32) -> Result<Self> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let mut result = self.constant_like(ONE);
        let mut base = self.clone();
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    pub fn exp(&self) -> Self {
        self.compose_series(&series::exp(self.value(), self.order))
    }

    /// Principal logarithm; fails on the non-positive real axis.
    pub fn ln(&self) -> Result<Self> {
        Ok(self.compose_series(&series::ln(self.value(), self.order)?))
    }

    /// Principal square root; fails on the non-positive real axis.
    pub fn sqrt(&self) -> Result<Self> {
        Ok(self.compose_series(&series::sqrt(self.value(), self.order)?))
    }

    pub fn sin(&self) -> Self {
        self.compose_series(&series::sin_cos(self.value(), self.order).0)
    }

    pub fn cos(&self) -> Self {
        self.compose_series(&series::sin_cos(self.value(), self.order).1)
    }

    pub fn tan(&self) -> Result<Self> {
        let (s, c) = series::sin_cos(self.value(), self.order);
        self.compose_series(&s)
            .checked_div(&self.compose_series(&c))
    }

    pub fn sinh(&self) -> Self {
        self.compose_series(&series::sinh_cosh(self.value(), self.order).0)
    }

    pub fn cosh(&self) -> Self {
        self.compose_series(&series::sinh_cosh(self.value(), self.order).1)
    }

    /// Arctangent of a real-valued jet.
    pub fn atan(&self) -> Result<Self> {
        if !self.is_real(1e-9) {
            return Err(Error::NonRealJet("atan"));
        }
        let a0 = Complex64::new(self.value().re, 0.0);
        Ok(self.re().compose_series(&series::atan(a0, self.order)?))
    }

    /// `|f|` for a real-valued jet whose value is nonzero.
    pub fn abs_real(&self) -> Result<Self> {
        if !self.is_real(1e-9) {
            return Err(Error::NonRealJet("abs"));
        }
        let v = self.value().re;
        if v == 0.0 {
            return Err(Error::DomainError("abs evaluated at a zero".into()));
        }
        Ok(if v > 0.0 { self.re() } else { -&self.re() })
    }

    /// `|f| = sqrt(f conj(f))` for a complex jet with nonzero value.
    pub fn modulus(&self) -> Result<Self> {
        if self.value().norm() == 0.0 {
            return Err(Error::DomainError("modulus evaluated at a zero".into()));
        }
        Ok((self * &self.conj()).re().sqrt()?.re())
    }

    /// The jet of `conj(f)`: `c_pq -> conj(c_qp)`.
    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for d in 0..=self.order {
            for q in 0..=d {
                out.coeffs[index(d - q, q)] = self.coeffs[index(q, d - q)].conj();
            }
        }
        out
    }

    /// Jet of `Re f`; exactly conjugation-symmetric.
    pub fn re(&self) -> Self {
        let mut out = self.clone();
        for d in 0..=self.order {
            for q in 0..=d {
                let p = d - q;
                let (a, b) = (self.coeffs[index(p, q)], self.coeffs[index(q, p)]);
                out.coeffs[index(p, q)] = if p == q {
                    Complex64::new(a.re, 0.0)
                } else {
                    (a + b.conj()) * 0.5
                };
            }
        }
        out
    }

    /// Jet of `Im f`, as a real-valued jet.
    pub fn im(&self) -> Self {
        (self * -I).re()
    }

    /// True when `f - conj(f)` is below `tol` relative to the largest
    /// coefficient.
    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.magnitude().max(f64::MIN_POSITIVE);
        (0..=self.order).all(|d| {
            (0..=d).all(|q| {
                let p = d - q;
                (self.coeffs[index(p, q)] - self.coeffs[index(q, p)].conj()).norm()
                    <= 2.0 * tol * scale
            })
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|a| a * c)
    }

    /// Evaluates the Taylor polynomial at `base + (du, dv)`.
    pub fn eval_at(&self, du: f64, dv: f64) -> Complex64 {
        let dxi = Complex64::new(du, dv);
        let mut acc = ZERO;
        for d in 0..=self.order {
            for q in 0..=d {
                acc += self.coeffs[index(d - q, q)]
                    * dxi.powu((d - q) as u32)
                    * dxi.conj().powu(q as u32);
            }
        }
        acc
    }

    /// Largest coefficient magnitude.
    pub fn magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

// Operator impls panic on mismatched jets; the crate only combines jets built
// from a common base and order. Use the `try_*` methods for untrusted input.

impl Add<&Jet> for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.try_add(rhs).expect("jet mismatch in add")
    }
}

impl Sub<&Jet> for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.try_sub(rhs).expect("jet mismatch in sub")
    }
}

impl Mul<&Jet> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.try_mul(rhs).expect("jet mismatch in mul")
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        &self + &rhs
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        &self - &rhs
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        &self * &rhs
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.map(|c| -c)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}

impl Mul<Complex64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: Complex64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: Complex64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.map(|c| c * rhs)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        &self * rhs
    }
}

impl Add<Complex64> for &Jet {
    type Output = Jet;
    fn add(self, rhs: Complex64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += rhs;
        out
    }
}

impl Add<Complex64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Complex64) -> Jet {
        self.coeffs[0] += rhs;
        self
    }
}

impl Add<f64> for &Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        self + Complex64::new(rhs, 0.0)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        self + Complex64::new(rhs, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(u: f64, v: f64, n: usize) -> Jet {
        Jet::lift(Coordinate::Xi, [u, v], n).unwrap()
    }

    fn xibar(u: f64, v: f64, n: usize) -> Jet {
        Jet::lift(Coordinate::XiBar, [u, v], n).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn lifted_coordinates() {
        let x = xi(1.0, 0.0, 2);
        assert_eq!(x.value(), Complex64::new(1.0, 0.0));
        assert_eq!(x.wirtinger(1, 0).unwrap(), ONE);
        assert_eq!(x.wirtinger(0, 1).unwrap(), ZERO);

        let xb = xibar(0.0, 1.0, 2);
        assert_eq!(xb.value(), Complex64::new(0.0, -1.0));
        assert_eq!(xb.wirtinger(1, 0).unwrap(), ZERO);
        assert_eq!(xb.wirtinger(0, 1).unwrap(), ONE);

        let u = Jet::lift(Coordinate::U, [2.0, 3.0], 2).unwrap();
        assert_eq!(u.value(), Complex64::new(2.0, 0.0));
        assert_eq!(u.wirtinger(1, 0).unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(u.wirtinger(0, 1).unwrap(), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn order_limits() {
        assert!(matches!(
            Jet::lift(Coordinate::U, [0.0, 0.0], MAX_ORDER + 1),
            Err(Error::OrderTooLarge(_))
        ));
        let j = xi(0.0, 0.0, 2);
        assert!(matches!(
            j.wirtinger(2, 1),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn product_rule_examples() {
        let f = &xi(2.0, 0.0, 3) * &xibar(2.0, 0.0, 3);
        assert!(close(f.value(), Complex64::new(4.0, 0.0), 1e-15));
        assert!(close(
            f.wirtinger(1, 0).unwrap(),
            Complex64::new(2.0, 0.0),
            1e-15
        ));
        assert!(close(
            f.wirtinger(0, 1).unwrap(),
            Complex64::new(2.0, 0.0),
            1e-15
        ));

        let g = xi(1.0, 1.0, 3).powi(2).unwrap();
        assert!(close(
            g.wirtinger(1, 0).unwrap(),
            Complex64::new(2.0, 2.0),
            1e-15
        ));
        assert!(g.wirtinger(0, 1).unwrap().norm() < 1e-15);
    }

    #[test]
    fn chain_rule_exp() {
        let f = (&xi(1.0, 0.0, 3) * &xibar(1.0, 0.0, 3)).exp();
        assert!(close(
            f.wirtinger(1, 0).unwrap(),
            Complex64::new(std::f64::consts::E, 0.0),
            1e-14
        ));
    }

    #[test]
    fn conjugation_example() {
        let g = xi(1.0, 1.0, 3).powi(2).unwrap().conj();
        assert!(g.wirtinger(1, 0).unwrap().norm() < 1e-15);
    }

    #[test]
    fn wirtinger_examples() {
        let f = &xi(1.0, 0.0, 4) * &xibar(1.0, 0.0, 4);
        assert!(close(f.wirtinger(1, 1).unwrap(), ONE, 1e-15));

        let g = (&f + 1.0).powi(2).unwrap();
        assert!(close(
            g.wirtinger(1, 0).unwrap(),
            Complex64::new(4.0, 0.0),
            1e-14
        ));
    }

    #[test]
    fn fourth_mixed_derivative_of_exp() {
        // Frozen from a Richardson-extrapolated central-difference oracle on
        // the (u, v) grid: d^2 d̄^2 exp(xi + xibar) at 0 equals 1.
        let f = (&xi(0.0, 0.0, 4) + &xibar(0.0, 0.0, 4)).exp();
        assert!(close(f.wirtinger(2, 2).unwrap(), ONE, 1e-13));
    }

    #[test]
    fn derivative_jets_commute() {
        let f = (&xi(0.3, -0.2, 4) * &xibar(0.3, -0.2, 4)).sin();
        let a = f.holo().unwrap().antiholo().unwrap().value();
        let b = f.antiholo().unwrap().holo().unwrap().value();
        assert_eq!(a, b);
        assert!(close(a, f.wirtinger(1, 1).unwrap(), 1e-14));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = xi(0.0, 0.0, 2);
        let b = xi(0.0, 0.0, 3);
        let c = xi(1.0, 0.0, 2);
        assert!(matches!(a.try_add(&b), Err(Error::OrderMismatch(_))));
        assert!(matches!(a.try_mul(&c), Err(Error::OrderMismatch(_))));
    }

    #[test]
    fn division_and_branch_errors() {
        let z = xi(0.0, 0.0, 2);
        assert!(matches!(z.recip(), Err(Error::DivisionByZeroJet)));
        let neg = &xi(-1.0, 0.0, 2) * 1.0;
        assert!(matches!(neg.ln(), Err(Error::BranchPointError { .. })));
        assert!(matches!(neg.sqrt(), Err(Error::BranchPointError { .. })));
        assert!(matches!(xi(0.5, 0.5, 2).atan(), Err(Error::NonRealJet(_))));
    }

    #[test]
    fn reciprocal_roundtrip() {
        let f = (&xi(0.4, 0.7, 5) * &xibar(0.4, 0.7, 5)) + 2.0;
        let one = &f * &f.recip().unwrap();
        assert!(close(one.value(), ONE, 1e-15));
        for c in &one.coeffs()[1..] {
            assert!(c.norm() < 1e-14);
        }
    }

    #[test]
    fn compose_with_polar_map() {
        // f = u^2 + v^2 composed with u = R cos(th), v = R sin(th) is R^2.
        let (r0, th0) = (1.3, 0.4);
        let r = Jet::lift(Coordinate::U, [r0, th0], 3).unwrap();
        let th = Jet::lift(Coordinate::V, [r0, th0], 3).unwrap();
        let u = &r * &th.cos();
        let v = &r * &th.sin();
        let base = [u.value().re, v.value().re];
        let uu = Jet::lift(Coordinate::U, base, 3).unwrap();
        let vv = Jet::lift(Coordinate::V, base, 3).unwrap();
        let f = &(&uu * &uu) + &(&vv * &vv);
        let g = f.compose(&u, &v).unwrap();
        let expect = &r * &r;
        for (a, b) in g.coeffs().iter().zip(expect.coeffs()) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn abs_and_modulus() {
        let x = &Jet::lift(Coordinate::U, [-2.0, 0.0], 2).unwrap() * 1.0;
        let a = x.abs_real().unwrap();
        assert_eq!(a.value().re, 2.0);
        assert_eq!(a.partial(1, 0).unwrap().re, -1.0);
        let m = xi(3.0, 4.0, 2).modulus().unwrap();
        assert!((m.value().re - 5.0).abs() < 1e-15);
        assert!((m.partial(1, 0).unwrap().re - 0.6).abs() < 1e-15);
    }
}
