//! Univariate truncated power series, used to build the Taylor coefficients
//! of elementary functions before composing them with a jet.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) type Series = Vec<Complex64>;

pub(crate) fn mul(a: &[Complex64], b: &[Complex64], n: usize) -> Series {
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

pub(crate) fn recip(a: &[Complex64], n: usize) -> Result<Series> {
    let a0 = a[0];
    if a0.norm() == 0.0 {
        return Err(Error::DivisionByZeroJet);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    out[0] = 1.0 / a0;
    for k in 1..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k.min(a.len() - 1) {
            acc += a[j] * out[k - j];
        }
        out[k] = -acc / a0;
    }
    Ok(out)
}

/// Antiderivative with zero constant term, truncated to degree `n`.
pub(crate) fn integrate(a: &[Complex64], n: usize) -> Series {
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for k in 1..=n {
        if let Some(c) = a.get(k - 1) {
            out[k] = c / k as f64;
        }
    }
    out
}

fn is_on_negative_real_axis(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

pub(crate) fn exp(a0: Complex64, n: usize) -> Series {
    let e = a0.exp();
    let mut out = Vec::with_capacity(n + 1);
    let mut fact = 1.0;
    for k in 0..=n {
        if k > 0 {
            fact *= k as f64;
        }
        out.push(e / fact);
    }
    out
}

pub(crate) fn ln(a0: Complex64, n: usize) -> Result<Series> {
    if is_on_negative_real_axis(a0) {
        return Err(Error::BranchPointError {
            func: "ln",
            value: format!("{a0}"),
        });
    }
    let mut out = vec![a0.ln()];
    let inv = 1.0 / a0;
    let mut p = inv;
    for k in 1..=n {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        out.push(p * (sign / k as f64));
        p *= inv;
    }
    Ok(out)
}

pub(crate) fn sqrt(a0: Complex64, n: usize) -> Result<Series> {
    if is_on_negative_real_axis(a0) {
        return Err(Error::BranchPointError {
            func: "sqrt",
            value: format!("{a0}"),
        });
    }
    let s = a0.sqrt();
    let inv = 1.0 / a0;
    let mut out = Vec::with_capacity(n + 1);
    // binom(1/2, k) * a0^(1/2 - k)
    let mut binom = 1.0;
    let mut p = s;
    for k in 0..=n {
        if k > 0 {
            binom *= (0.5 - (k as f64 - 1.0)) / k as f64;
            p *= inv;
        }
        out.push(p * binom);
    }
    Ok(out)
}

/// Taylor coefficients of sin and cos at `a0`, returned together.
pub(crate) fn sin_cos(a0: Complex64, n: usize) -> (Series, Series) {
    let (s, c) = (a0.sin(), a0.cos());
    // k-th derivatives cycle through sin, cos, -sin, -cos
    let sin_d = [s, c, -s, -c];
    let cos_d = [c, -s, -c, s];
    let mut fact = 1.0;
    let mut so = Vec::with_capacity(n + 1);
    let mut co = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            fact *= k as f64;
        }
        so.push(sin_d[k % 4] / fact);
        co.push(cos_d[k % 4] / fact);
    }
    (so, co)
}

pub(crate) fn sinh_cosh(a0: Complex64, n: usize) -> (Series, Series) {
    let (s, c) = (a0.sinh(), a0.cosh());
    let mut fact = 1.0;
    let mut so = Vec::with_capacity(n + 1);
    let mut co = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            fact *= k as f64;
        }
        if k % 2 == 0 {
            so.push(s / fact);
            co.push(c / fact);
        } else {
            so.push(c / fact);
            co.push(s / fact);
        }
    }
    (so, co)
}

pub(crate) fn atan(a0: Complex64, n: usize) -> Result<Series> {
    // atan' = 1 / (1 + x^2)
    let one = Complex64::new(1.0, 0.0);
    let denom = vec![one + a0 * a0, a0 * 2.0, one];
    let d = recip(&denom, n)?;
    let mut out = integrate(&d, n);
    out[0] = a0.atan();
    Ok(out)
}

/// Taylor series of the rational function `x / (x^{2n} + c^2)` at `x0`.
pub(crate) fn sphere_profile_slope(x0: f64, n: u32, c: f64, deg: usize) -> Result<Series> {
    let z = |v: f64| Complex64::new(v, 0.0);
    let x = vec![z(x0), z(1.0)];
    let mut pow = vec![z(1.0)];
    for _ in 0..2 * n {
        pow = mul(&pow, &x, deg);
    }
    pow.resize(deg + 1, z(0.0));
    pow[0] += c * c;
    let r = recip(&pow, deg)?;
    Ok(mul(&x, &r, deg))
}
