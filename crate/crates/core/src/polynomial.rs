//! Dense complex polynomials, Moebius composition, truncated power series.

use crate::error::{Error, Result};
use crate::moebius::{MoebiusMap, C64};
use std::ops::{Add, Mul, Neg, Sub};

const TRIM_REL: f64 = 1e-13;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Coefficients in ascending degree; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexPoly {
    coeffs: Vec<C64>,
}

impl ComplexPoly {
    /// Builds a polynomial, trimming trailing coefficients below 1e-13 of the largest one.
    pub fn new(coeffs: Vec<C64>) -> Self {
        let mut p = ComplexPoly { coeffs };
        p.trim(TRIM_REL);
        p
    }

    /// Keeps every coefficient except exact trailing zeros.
    pub fn new_untrimmed(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last() == Some(&zero()) {
            coeffs.pop();
        }
        ComplexPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        ComplexPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::new_untrimmed(vec![c])
    }

    /// p x + q
    pub fn linear(p: C64, q: C64) -> Self {
        Self::new_untrimmed(vec![q, p])
    }

    pub fn x() -> Self {
        Self::linear(C64::new(1.0, 0.0), zero())
    }

    fn trim(&mut self, rel: f64) {
        let scale = self.max_abs();
        while let Some(last) = self.coeffs.last() {
            if last.norm() <= rel * scale || *last == zero() {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or(zero())
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or(zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(zero(), |acc, &c| acc * x + c)
    }

    /// Σ |p_k| |x|^k, the natural scale for the rounding error of `eval`.
    pub fn eval_abs(&self, x: C64) -> f64 {
        let r = x.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new_untrimmed(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Drops trailing coefficients that are rounding noise relative to `envelope[k]`,
    /// the accumulated magnitude of everything that was summed into coefficient k.
    pub fn trimmed_against(mut self, envelope: &[f64], rel: f64) -> Self {
        while let Some(c) = self.coeffs.last() {
            let k = self.coeffs.len() - 1;
            let scale = envelope.get(k).copied().unwrap_or(0.0);
            if c.norm() <= rel * scale || *c == C64::new(0.0, 0.0) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        self
    }

    /// Coefficientwise moduli as a real polynomial, used for rounding envelopes.
    pub fn abs_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm()).collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new_untrimmed(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// p(αx + β)
    pub fn shift_compose_linear(&self, alpha: C64, beta: C64) -> Self {
        let lin = Self::linear(alpha, beta);
        let mut out = Self::zero();
        for &c in self.coeffs.iter().rev() {
            out = &(&out * &lin) + &Self::constant(c);
        }
        out
    }

    /// Shape-preserving conversion with a caller-chosen trim tolerance.
    pub fn trimmed(&self, rel: f64) -> Self {
        let mut p = self.clone();
        p.trim(rel);
        p
    }

    /// Largest coefficient difference relative to the larger coefficient scale.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let diff = (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max);
        let scale = self.max_abs().max(other.max_abs());
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }

    /// Largest imaginary part relative to the coefficient scale.
    pub fn max_imag_relative(&self) -> f64 {
        let s = self.max_abs();
        if s == 0.0 {
            return 0.0;
        }
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max) / s
    }

    pub fn real_part(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| C64::new(c.re, 0.0)).collect())
    }

    /// Quotient and remainder of division by a monic-or-not divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * dc;
            }
        }
        rem.truncate(dd);
        (Self::new_untrimmed(quot), Self::new(rem))
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new_untrimmed((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new_untrimmed((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new_untrimmed(out)
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        ComplexPoly::new_untrimmed(self.coeffs.iter().map(|&c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ComplexPoly {
            type Output = ComplexPoly;
            fn $f(self, rhs: ComplexPoly) -> ComplexPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// q(x) = Σ_k p_k (ax+b)^k (cx+d)^{n-k}.
pub fn moebius_transform(p: &ComplexPoly, m: &MoebiusMap, n_formal: usize) -> Result<ComplexPoly> {
    if p.degree() > n_formal as isize {
        return Err(Error::BadHomogenization {
            n_formal,
            degree: p.degree() as usize,
        });
    }
    let num = ComplexPoly::linear(m.a(), m.b());
    let den = ComplexPoly::linear(m.c(), m.d());
    // den_pows[j] = (cx+d)^j
    let mut den_pows = Vec::with_capacity(n_formal + 1);
    den_pows.push(ComplexPoly::one());
    for j in 1..=n_formal {
        den_pows.push(&den_pows[j - 1] * &den);
    }
    let mut num_pow = ComplexPoly::one();
    let mut acc = ComplexPoly::zero();
    for k in 0..=n_formal {
        let pk = p.coeff(k);
        if pk != zero() {
            let term = (&num_pow * &den_pows[n_formal - k]).scale(pk);
            acc = &acc + &term;
        }
        if k < n_formal {
            num_pow = &num_pow * &num;
        }
    }
    Ok(ComplexPoly::new(acc.coeffs))
}

/// Predicted leading coefficient of the degree-(deg p) transform.
pub fn leading_coefficient_prediction(p: &ComplexPoly, m: &MoebiusMap) -> C64 {
    let n = p.degree().max(0) as i32;
    if m.is_affine() {
        p.leading() * m.a().powi(n)
    } else {
        m.c().powi(n) * p.eval(m.a() / m.c())
    }
}

/// p(x) = (-1)^n Δ^{-n} (cx - a)^n q(W(x)), computed as a polynomial identity.
pub fn recover_original(q: &ComplexPoly, m: &MoebiusMap, n: usize) -> Result<ComplexPoly> {
    let w = m.inverse();
    let p = moebius_transform(q, &w, n)?;
    // The homogenized inverse transform uses (cx - a) as its denominator factor, with W's
    // parameters (-d, b, c, -a); this already equals (cx-a)^n q(W(x)).
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(p.scale(sign * m.delta().powi(-(n as i32))))
}

/// Truncated power series with fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<C64>,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<C64>, order: usize) -> Self {
        coeffs.resize(order + 1, zero());
        PowerSeries { coeffs }
    }

    pub fn from_poly(p: &ComplexPoly, order: usize) -> Self {
        Self::new(p.coeffs().iter().copied().take(order + 1).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn scale(&self, s: C64) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }
}

pub fn series_from_poly(p: &ComplexPoly, order: usize) -> PowerSeries {
    PowerSeries::from_poly(p, order)
}

pub fn series_mul(f: &PowerSeries, g: &PowerSeries) -> PowerSeries {
    let n = f.order().min(g.order());
    let coeffs = (0..=n)
        .map(|k| (0..=k).map(|j| f.coeffs[j] * g.coeffs[k - j]).sum())
        .collect();
    PowerSeries { coeffs }
}

pub fn series_reciprocal(f: &PowerSeries) -> Result<PowerSeries> {
    let f0 = f.coeffs[0];
    if f0 == zero() {
        return Err(Error::NonInvertibleSeries);
    }
    let n = f.order();
    let mut g = vec![zero(); n + 1];
    g[0] = 1.0 / f0;
    for k in 1..=n {
        let s: C64 = (1..=k).map(|j| f.coeffs[j] * g[k - j]).sum();
        g[k] = -s / f0;
    }
    Ok(PowerSeries { coeffs: g })
}

/// exp(f) for a series f; a nonzero constant term is pulled out as a scalar factor.
pub fn series_exp(f: &PowerSeries) -> PowerSeries {
    let n = f.order();
    let mut g = vec![zero(); n + 1];
    g[0] = f.coeffs[0].exp();
    for k in 1..=n {
        let s: C64 = (1..=k).map(|j| f.coeffs[j] * g[k - j] * j as f64).sum();
        g[k] = s / k as f64;
    }
    PowerSeries { coeffs: g }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn eval_basics() {
        assert_eq!(ComplexPoly::zero().eval(r(3.0)), r(0.0));
        assert_eq!(ComplexPoly::from_real(&[-1.0, 0.0, 2.0]).eval(r(0.5)), r(-0.5));
        assert_eq!(ComplexPoly::from_real(&[1.0, 0.0, -8.0, 0.0, 8.0]).eval(r(1.0)), r(1.0));
        assert_eq!(ComplexPoly::zero().degree(), -1);
    }

    #[test]
    fn arithmetic() {
        let a = ComplexPoly::from_real(&[1.0, 1.0]);
        let b = ComplexPoly::from_real(&[-1.0, 1.0]);
        assert_eq!(&a * &b, ComplexPoly::from_real(&[-1.0, 0.0, 1.0]));
        assert_eq!(
            ComplexPoly::from_real(&[-1.0, 0.0, 2.0]).derivative(),
            ComplexPoly::from_real(&[0.0, 4.0])
        );
        let alpha = 0.7;
        let beta = 2.5;
        let l1 = ComplexPoly::from_real(&[alpha + 1.0, -1.0]);
        assert_eq!(
            l1.shift_compose_linear(r(beta), r(0.0)),
            ComplexPoly::from_real(&[alpha + 1.0, -beta])
        );
        let (q, rem) = ComplexPoly::from_real(&[-1.0, 0.0, 1.0]).div_rem(&a);
        assert_eq!(q, b);
        assert!(rem.is_zero());
    }

    #[test]
    fn chebyshev_inversion_rows() {
        let inv = MoebiusMap::inversion();
        let t2 = ComplexPoly::from_real(&[-1.0, 0.0, 2.0]);
        let t3 = ComplexPoly::from_real(&[0.0, -3.0, 0.0, 4.0]);
        assert_eq!(moebius_transform(&t2, &inv, 2).unwrap(), ComplexPoly::from_real(&[2.0, 0.0, -1.0]));
        let q3 = moebius_transform(&t3, &inv, 3).unwrap();
        assert_eq!(q3, ComplexPoly::from_real(&[4.0, 0.0, -3.0]));
        assert_eq!(leading_coefficient_prediction(&t2, &inv), r(-1.0));
        assert_eq!(leading_coefficient_prediction(&t3, &inv), r(0.0));
        let id = MoebiusMap::identity();
        assert_eq!(moebius_transform(&t3, &id, 3).unwrap(), t3);
        assert_eq!(leading_coefficient_prediction(&t3, &id), r(4.0));
        assert!(matches!(
            moebius_transform(&t3, &inv, 2),
            Err(Error::BadHomogenization { .. })
        ));
    }

    #[test]
    fn recover_t4() {
        let inv = MoebiusMap::inversion();
        let t4 = ComplexPoly::from_real(&[1.0, 0.0, -8.0, 0.0, 8.0]);
        let q = moebius_transform(&t4, &inv, 4).unwrap();
        assert_eq!(q, ComplexPoly::from_real(&[8.0, 0.0, -8.0, 0.0, 1.0]));
        assert!(recover_original(&q, &inv, 4).unwrap().relative_distance(&t4) < 1e-14);
        let id = MoebiusMap::identity();
        assert_eq!(recover_original(&q, &id, 4).unwrap(), q);
    }

    #[test]
    fn series_examples() {
        let t = PowerSeries::new(vec![r(0.0), r(1.0)], 4);
        let e = series_exp(&t);
        let want = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0];
        for (g, w) in e.coeffs().iter().zip(want) {
            assert!((g - r(w)).norm() < 1e-15);
        }
        let one_minus_t = PowerSeries::new(vec![r(1.0), r(-1.0)], 3);
        assert_eq!(series_reciprocal(&one_minus_t).unwrap().coeffs(), &[r(1.0); 4]);
        assert!(series_reciprocal(&t).is_err());
        let arg = PowerSeries::new(vec![r(0.0), r(2.0), r(-1.0)], 3);
        let h = series_exp(&arg);
        let want = [1.0, 2.0, 1.0, -2.0 / 3.0];
        for (g, w) in h.coeffs().iter().zip(want) {
            assert!((g - r(w)).norm() < 1e-14);
        }
    }
}
