//! Closed-form differentiation of weights, Rodrigues formulas and generating functions.

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::moebius::C64;
use crate::polynomial::{series_exp, series_mul, series_reciprocal, ComplexPoly, PowerSeries};
use crate::transform::TransformedSequence;

/// (p x + q)^γ
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFactor {
    pub p: C64,
    pub q: C64,
    pub gamma: C64,
}

/// C · poly(x) · Π (p_i x + q_i)^{γ_i} · exp(r x + s x²)
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredWeight {
    pub constant: C64,
    pub factors: Vec<LinearFactor>,
    pub exp_lin: C64,
    pub exp_quad: C64,
    pub poly: ComplexPoly,
}

fn is_integer(z: C64) -> bool {
    z.im == 0.0 && z.re.fract() == 0.0
}

/// Principal power with explicit failure on the cut.
pub fn principal_pow(base: C64, gamma: C64) -> Result<C64> {
    if gamma == C64::new(0.0, 0.0) {
        return Ok(C64::new(1.0, 0.0));
    }
    if is_integer(gamma) && gamma.re.abs() < 1e9 {
        return Ok(base.powi(gamma.re as i32));
    }
    if base.re < 0.0 && base.im.abs() <= 1e-14 * base.re.abs() {
        return Err(Error::BranchConflict { point: base });
    }
    if base == C64::new(0.0, 0.0) {
        return Ok(if gamma.re > 0.0 {
            C64::new(0.0, 0.0)
        } else {
            C64::new(f64::INFINITY, 0.0)
        });
    }
    Ok((gamma * base.ln()).exp())
}

impl StructuredWeight {
    pub fn new(constant: C64, factors: Vec<LinearFactor>, exp_lin: C64, exp_quad: C64) -> Self {
        StructuredWeight {
            constant,
            factors,
            exp_lin,
            exp_quad,
            poly: ComplexPoly::one(),
        }
    }

    pub fn with_poly(mut self, poly: ComplexPoly) -> Self {
        self.poly = poly;
        self
    }

    /// Each factor's exponent raised by k.
    pub fn raise_exponents(&self, k: f64) -> Self {
        let mut w = self.clone();
        for f in &mut w.factors {
            f.gamma += k;
        }
        w
    }

    /// Value of the part without the polynomial multiplier and constant (the "base" weight).
    fn base_eval(&self, x: C64) -> Result<C64> {
        let mut v = (self.exp_lin * x + self.exp_quad * x * x).exp();
        for f in &self.factors {
            let base = f.p * x + f.q;
            let pw = principal_pow(base, f.gamma).map_err(|_| Error::BranchConflict { point: x })?;
            v *= pw;
        }
        Ok(v)
    }

    pub fn eval(&self, x: C64) -> Result<C64> {
        Ok(self.constant * self.poly.eval(x) * self.base_eval(x)?)
    }

    /// w'/w evaluated without forming either factor.
    pub fn log_derivative(&self, x: C64) -> C64 {
        let mut v = self.exp_lin + 2.0 * self.exp_quad * x;
        for f in &self.factors {
            v += f.gamma * f.p / (f.p * x + f.q);
        }
        v + self.poly.derivative().eval(x) / self.poly.eval(x)
    }

    pub fn derivative(&self) -> Self {
        let lin: Vec<ComplexPoly> = self
            .factors
            .iter()
            .map(|f| ComplexPoly::linear(f.p, f.q))
            .collect();
        let prod_all = lin.iter().fold(ComplexPoly::one(), |acc, l| &acc * l);
        let mut bracket = &ComplexPoly::linear(2.0 * self.exp_quad, self.exp_lin) * &prod_all;
        for (i, f) in self.factors.iter().enumerate() {
            let others = lin
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(ComplexPoly::one(), |acc, (_, l)| &acc * l);
            bracket = &bracket + &others.scale(f.gamma * f.p);
        }
        let poly = &(&self.poly.derivative() * &prod_all) + &(&self.poly * &bracket);
        let mut out = self.clone().with_poly(ComplexPoly::new(poly.coeffs().to_vec()));
        for f in &mut out.factors {
            f.gamma -= 1.0;
        }
        out
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |w, _| w.derivative())
    }
}

pub fn sw_eval(w: &StructuredWeight, x: C64) -> Result<C64> {
    w.eval(x)
}

pub fn sw_derivative(w: &StructuredWeight) -> StructuredWeight {
    w.derivative()
}

pub fn sw_nth_derivative(w: &StructuredWeight, n: usize) -> StructuredWeight {
    w.nth_derivative(n)
}

/// ε_n / w(x) · dⁿ/dxⁿ [fⁿ w] at x.
pub fn classical_rodrigues(fam: &FamilySpec, n: usize, x: C64) -> Result<C64> {
    let num = fam.rodrigues_numerator(n).nth_derivative(n);
    let w = fam.weight();
    // Both share the same factor list, so the ratio is taken factorwise to avoid 0/0 at
    // points where the weight underflows.
    let ratio = ratio_of_weights(&num, &w, x)?;
    Ok(fam.rodrigues_eps(n) * ratio)
}

/// num(x)/den(x) for two weights with the same factor bases.
fn ratio_of_weights(num: &StructuredWeight, den: &StructuredWeight, x: C64) -> Result<C64> {
    let mut v = num.constant / den.constant * num.poly.eval(x) / den.poly.eval(x);
    v *= ((num.exp_lin - den.exp_lin) * x + (num.exp_quad - den.exp_quad) * x * x).exp();
    for (fa, fb) in num.factors.iter().zip(&den.factors) {
        let base = fa.p * x + fa.q;
        v *= principal_pow(base, fa.gamma - fb.gamma).map_err(|_| Error::BranchConflict { point: x })?;
    }
    Ok(v)
}

/// Q_n(y) = Δ/(cy+d)^{n+2} · ε_n/ω_{n,n}(y) · [dⁿ(fⁿw)](M(y)).
pub fn transformed_rodrigues(seq: &TransformedSequence, n: usize, y: C64) -> Result<C64> {
    let map = seq.map();
    let u = map.denom(y);
    if u == C64::new(0.0, 0.0) {
        return Err(Error::PoleEvaluation { pole: y });
    }
    let x = map.eval(y)?;
    let fam = seq.family();
    let dn = fam.rodrigues_numerator(n).nth_derivative(n).eval(x)?;
    let omega = seq.varying_weight(n, n, y)?;
    Ok(map.delta() / u.powi(n as i32 + 2) * fam.rodrigues_eps(n) / omega * dn)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenFunKind {
    /// exp(2xt - t²), coefficients H_n(x)/n!
    HermiteExp,
    /// (1 - xt)/(1 - 2xt + t²), coefficients T_n(x)
    ChebyshevRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenFunSpec {
    pub kind: GenFunKind,
}

impl GenFunSpec {
    pub fn for_family(fam: &FamilySpec) -> Option<Self> {
        use crate::families::FamilyKind;
        match fam.kind() {
            FamilyKind::Hermite => Some(GenFunSpec {
                kind: GenFunKind::HermiteExp,
            }),
            FamilyKind::Chebyshev => Some(GenFunSpec {
                kind: GenFunKind::ChebyshevRational,
            }),
            _ => None,
        }
    }

    /// Whether coefficient n is P_n/n! (exponential) rather than P_n.
    pub fn is_exponential(&self) -> bool {
        self.kind == GenFunKind::HermiteExp
    }

    /// Series in t of the generating function at x with t scaled by `scale`.
    fn series(&self, x: C64, scale: C64, order: usize) -> Result<PowerSeries> {
        let one = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        match self.kind {
            GenFunKind::HermiteExp => {
                let arg = PowerSeries::new(vec![z, 2.0 * x * scale, -scale * scale], order);
                Ok(series_exp(&arg))
            }
            GenFunKind::ChebyshevRational => {
                let num = PowerSeries::new(vec![one, -x * scale], order);
                let den = PowerSeries::new(vec![one, -2.0 * x * scale, scale * scale], order);
                Ok(series_mul(&num, &series_reciprocal(&den)?))
            }
        }
    }

    pub fn classical(&self, x: C64, order: usize) -> Result<PowerSeries> {
        self.series(x, C64::new(1.0, 0.0), order)
    }

    /// Φ(y, τ) = φ(M(y), (cy+d)τ).
    pub fn transformed(&self, seq: &TransformedSequence, y: C64, order: usize) -> Result<PowerSeries> {
        let map = seq.map();
        self.series(map.eval(y)?, map.denom(y), order)
    }
}

pub fn genfun_series_classical(spec: &GenFunSpec, x: C64, order: usize) -> Result<PowerSeries> {
    spec.classical(x, order)
}

pub fn genfun_series_transformed(
    spec: &GenFunSpec,
    seq: &TransformedSequence,
    y: C64,
    order: usize,
) -> Result<PowerSeries> {
    spec.transformed(seq, y, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn fd(w: &StructuredWeight, x: f64, h: f64) -> C64 {
        let f = |t: f64| w.eval(r(t)).unwrap();
        let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
        let h2 = h / 2.0;
        let d2 = (f(x + h2) - f(x - h2)) / (2.0 * h2);
        (4.0 * d2 - d1) / 3.0
    }

    #[test]
    fn gaussian_derivative() {
        let w = StructuredWeight::new(r(1.0), vec![], r(0.0), r(-1.0));
        let d = w.derivative();
        assert_eq!(d.poly, ComplexPoly::from_real(&[0.0, -2.0]));
    }

    #[test]
    fn laguerre_weight_derivative() {
        let alpha = 0.7;
        let w = StructuredWeight::new(
            r(1.0),
            vec![LinearFactor { p: r(1.0), q: r(0.0), gamma: r(alpha) }],
            r(-1.0),
            r(0.0),
        );
        let d = w.derivative();
        assert_eq!(d.poly, ComplexPoly::from_real(&[alpha, -1.0]));
        assert_eq!(d.factors[0].gamma, r(alpha - 1.0));
        let x = 1.3;
        assert!((d.eval(r(x)).unwrap() - fd(&w, x, 1e-5)).norm() < 1e-8);
    }

    #[test]
    fn jacobi_numerator_second_derivative() {
        let n = 2.0;
        let w = StructuredWeight::new(
            r(1.0),
            vec![
                LinearFactor { p: r(-1.0), q: r(1.0), gamma: r(n) },
                LinearFactor { p: r(1.0), q: r(1.0), gamma: r(n) },
            ],
            r(0.0),
            r(0.0),
        );
        let d2 = w.nth_derivative(2).eval(r(0.3)).unwrap();
        // (1 - x²)² = 1 - 2x² + x⁴, second derivative -4 + 12x²
        assert!((d2 - r(-4.0 + 12.0 * 0.09)).norm() < 1e-12);
        let d1 = w.derivative();
        assert!((d1.derivative().eval(r(0.3)).unwrap() - fd(&d1, 0.3, 1e-5)).norm() < 1e-7);
    }

    #[test]
    fn branch_cut_rejected() {
        let w = StructuredWeight::new(
            r(1.0),
            vec![LinearFactor { p: r(1.0), q: r(0.0), gamma: r(0.5) }],
            r(0.0),
            r(0.0),
        );
        assert!(matches!(w.eval(r(-2.0)), Err(Error::BranchConflict { .. })));
        assert!(w.eval(C64::new(-2.0, 0.1)).is_ok());
    }
}
