//! Classical orthogonal families in the convention P_n = (A_n x - B_n) P_{n-1} - C_n P_{n-2}.

use crate::applications::gamma::complex_log_gamma;
use crate::calculus::{LinearFactor, StructuredWeight};
use crate::error::{Error, Result};
use crate::moebius::C64;
use crate::polynomial::ComplexPoly;
use crate::residual::Residual;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Endpoint {
    NegInfinity,
    Finite(f64),
    PosInfinity,
}

impl Endpoint {
    pub fn finite(self) -> Option<f64> {
        match self {
            Endpoint::Finite(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: Endpoint,
    pub upper: Endpoint,
}

impl Interval {
    pub fn finite(l: f64, r: f64) -> Self {
        Interval {
            lower: Endpoint::Finite(l),
            upper: Endpoint::Finite(r),
        }
    }

    pub fn half_line(l: f64) -> Self {
        Interval {
            lower: Endpoint::Finite(l),
            upper: Endpoint::PosInfinity,
        }
    }

    pub fn real_line() -> Self {
        Interval {
            lower: Endpoint::NegInfinity,
            upper: Endpoint::PosInfinity,
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        let above = match self.lower {
            Endpoint::Finite(l) => t > l,
            Endpoint::NegInfinity => true,
            Endpoint::PosInfinity => false,
        };
        let below = match self.upper {
            Endpoint::Finite(u) => t < u,
            Endpoint::PosInfinity => true,
            Endpoint::NegInfinity => false,
        };
        above && below
    }

    pub fn is_real_line(&self) -> bool {
        self.lower == Endpoint::NegInfinity && self.upper == Endpoint::PosInfinity
    }

    /// A representative width used for relative tolerances.
    pub fn span(&self) -> f64 {
        match (self.lower, self.upper) {
            (Endpoint::Finite(l), Endpoint::Finite(u)) => u - l,
            _ => 1.0,
        }
    }

    /// A point well inside the interval.
    pub fn midpoint(&self) -> f64 {
        match (self.lower, self.upper) {
            (Endpoint::Finite(l), Endpoint::Finite(u)) => 0.5 * (l + u),
            (Endpoint::Finite(l), _) => l + 1.0,
            (_, Endpoint::Finite(u)) => u - 1.0,
            _ => 0.0,
        }
    }

    /// Maps s ∈ (0,1) onto the interval monotonically.
    pub fn from_unit(&self, s: f64) -> f64 {
        match (self.lower, self.upper) {
            (Endpoint::Finite(l), Endpoint::Finite(u)) => l + (u - l) * s,
            (Endpoint::Finite(l), _) => l + s / (1.0 - s),
            (_, Endpoint::Finite(u)) => u - (1.0 - s) / s,
            _ => {
                let t = 2.0 * s - 1.0;
                t / (1.0 - t * t)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilyKind {
    /// Physicists' Hermite H_n.
    Hermite,
    /// L_n^α.
    Laguerre { alpha: C64 },
    /// L_n^α(βx).
    #[serde(rename = "genlaguerre")]
    GenLaguerre { alpha: C64, beta: C64 },
    /// J_n^{(α,β)} with J_n(1) = binom(n+α, n).
    Jacobi { alpha: C64, beta: C64 },
    /// T_n.
    Chebyshev,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    kind: FamilyKind,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn is_real(z: C64) -> bool {
    z.im == 0.0
}

impl FamilySpec {
    /// Any parameters accepted; orthogonality on the real line may fail.
    pub fn new(kind: FamilyKind) -> Self {
        FamilySpec { kind }
    }

    /// Requires parameters for which the weight is positive and integrable on (l, r).
    pub fn new_strict(kind: FamilyKind) -> Result<Self> {
        let f = FamilySpec { kind };
        if f.is_real_orthogonal() {
            Ok(f)
        } else {
            Err(Error::InadmissibleParameters(format!("{kind:?}")))
        }
    }

    pub fn hermite() -> Self {
        Self::new(FamilyKind::Hermite)
    }
    pub fn chebyshev() -> Self {
        Self::new(FamilyKind::Chebyshev)
    }
    pub fn laguerre(alpha: f64) -> Self {
        Self::new(FamilyKind::Laguerre { alpha: r(alpha) })
    }
    pub fn gen_laguerre(alpha: f64, beta: f64) -> Self {
        Self::new(FamilyKind::GenLaguerre { alpha: r(alpha), beta: r(beta) })
    }
    pub fn jacobi(alpha: f64, beta: f64) -> Self {
        Self::new(FamilyKind::Jacobi { alpha: r(alpha), beta: r(beta) })
    }
    pub fn jacobi_complex(alpha: C64, beta: C64) -> Self {
        Self::new(FamilyKind::Jacobi { alpha, beta })
    }

    /// Looks up a family by name; `params` are consumed in the order (α, β).
    pub fn builtin(name: &str, params: &[C64]) -> Result<Self> {
        let p = |k: usize, default: f64| params.get(k).copied().unwrap_or(r(default));
        let kind = match name.to_ascii_lowercase().as_str() {
            "hermite" => FamilyKind::Hermite,
            "chebyshev" | "chebyshev-t" => FamilyKind::Chebyshev,
            "laguerre" => FamilyKind::Laguerre { alpha: p(0, 0.0) },
            "genlaguerre" | "generalized-laguerre" => FamilyKind::GenLaguerre {
                alpha: p(0, 0.0),
                beta: p(1, 1.0),
            },
            "jacobi" => FamilyKind::Jacobi {
                alpha: p(0, 0.0),
                beta: p(1, 0.0),
            },
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        Ok(Self::new(kind))
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            FamilyKind::Hermite => "hermite",
            FamilyKind::Laguerre { .. } => "laguerre",
            FamilyKind::GenLaguerre { .. } => "genlaguerre",
            FamilyKind::Jacobi { .. } => "jacobi",
            FamilyKind::Chebyshev => "chebyshev",
        }
    }

    pub fn params(&self) -> Vec<C64> {
        match self.kind {
            FamilyKind::Hermite | FamilyKind::Chebyshev => vec![],
            FamilyKind::Laguerre { alpha } => vec![alpha],
            FamilyKind::GenLaguerre { alpha, beta } | FamilyKind::Jacobi { alpha, beta } => {
                vec![alpha, beta]
            }
        }
    }

    /// Real parameters in the range where the weight is positive and integrable.
    pub fn is_real_orthogonal(&self) -> bool {
        match self.kind {
            FamilyKind::Hermite | FamilyKind::Chebyshev => true,
            FamilyKind::Laguerre { alpha } => is_real(alpha) && alpha.re > -1.0,
            FamilyKind::GenLaguerre { alpha, beta } => {
                is_real(alpha) && alpha.re > -1.0 && is_real(beta) && beta.re > 0.0
            }
            FamilyKind::Jacobi { alpha, beta } => {
                is_real(alpha) && is_real(beta) && alpha.re > -1.0 && beta.re > -1.0
            }
        }
    }

    pub fn interval(&self) -> Interval {
        match self.kind {
            FamilyKind::Hermite => Interval::real_line(),
            FamilyKind::Laguerre { .. } | FamilyKind::GenLaguerre { .. } => Interval::half_line(0.0),
            FamilyKind::Jacobi { .. } | FamilyKind::Chebyshev => Interval::finite(-1.0, 1.0),
        }
    }

    /// (A_n, B_n, C_n) for n ≥ 1, with C_1 = 0.
    pub fn recurrence(&self, n: usize) -> (C64, C64, C64) {
        assert!(n >= 1, "recurrence coefficients start at n = 1");
        let nf = n as f64;
        let (a, b, c) = match self.kind {
            FamilyKind::Hermite => (r(2.0), r(0.0), r(2.0 * (nf - 1.0))),
            FamilyKind::Chebyshev => {
                if n == 1 {
                    (r(1.0), r(0.0), r(0.0))
                } else {
                    (r(2.0), r(0.0), r(1.0))
                }
            }
            FamilyKind::Laguerre { alpha } => (
                r(-1.0 / nf),
                -(2.0 * nf - 1.0 + alpha) / nf,
                (nf - 1.0 + alpha) / nf,
            ),
            FamilyKind::GenLaguerre { alpha, beta } => (
                -beta / nf,
                -(2.0 * nf - 1.0 + alpha) / nf,
                (nf - 1.0 + alpha) / nf,
            ),
            FamilyKind::Jacobi { alpha, beta } => {
                let s = alpha + beta;
                if n == 1 {
                    ((s + 2.0) / 2.0, -(alpha - beta) / 2.0, r(0.0))
                } else {
                    let den = 2.0 * nf * (nf + s) * (2.0 * nf + s - 2.0);
                    let a = (2.0 * nf + s - 1.0) * (2.0 * nf + s) / (2.0 * nf * (nf + s));
                    let b = -(2.0 * nf + s - 1.0) * (alpha * alpha - beta * beta) / den;
                    let c = 2.0 * (nf + alpha - 1.0) * (nf + beta - 1.0) * (2.0 * nf + s) / den;
                    (a, b, c)
                }
            }
        };
        if n == 1 {
            (a, b, r(0.0))
        } else {
            (a, b, c)
        }
    }

    pub fn weight(&self) -> StructuredWeight {
        let z = r(0.0);
        let lf = |p: f64, q: f64, gamma: C64| LinearFactor { p: r(p), q: r(q), gamma };
        match self.kind {
            FamilyKind::Hermite => StructuredWeight::new(r(1.0), vec![], z, r(-1.0)),
            FamilyKind::Laguerre { alpha } => {
                StructuredWeight::new(r(1.0), vec![lf(1.0, 0.0, alpha)], r(-1.0), z)
            }
            FamilyKind::GenLaguerre { alpha, beta } => {
                StructuredWeight::new(r(1.0), vec![lf(1.0, 0.0, alpha)], -beta, z)
            }
            FamilyKind::Jacobi { alpha, beta } => StructuredWeight::new(
                r(1.0),
                vec![lf(-1.0, 1.0, alpha), lf(1.0, 1.0, beta)],
                z,
                z,
            ),
            FamilyKind::Chebyshev => StructuredWeight::new(
                r(1.0),
                vec![lf(-1.0, 1.0, r(-0.5)), lf(1.0, 1.0, r(-0.5))],
                z,
                z,
            ),
        }
    }

    /// f, with f(x) y'' + g(x) y' + h_n y = 0.
    pub fn ode_f(&self) -> ComplexPoly {
        match self.kind {
            FamilyKind::Hermite => ComplexPoly::one(),
            FamilyKind::Laguerre { .. } | FamilyKind::GenLaguerre { .. } => ComplexPoly::x(),
            FamilyKind::Jacobi { .. } | FamilyKind::Chebyshev => ComplexPoly::from_real(&[1.0, 0.0, -1.0]),
        }
    }

    pub fn ode_g(&self) -> ComplexPoly {
        match self.kind {
            FamilyKind::Hermite => ComplexPoly::from_real(&[0.0, -2.0]),
            FamilyKind::Laguerre { alpha } => ComplexPoly::linear(r(-1.0), alpha + 1.0),
            FamilyKind::GenLaguerre { alpha, beta } => ComplexPoly::linear(-beta, alpha + 1.0),
            FamilyKind::Jacobi { alpha, beta } => ComplexPoly::linear(-(alpha + beta + 2.0), beta - alpha),
            FamilyKind::Chebyshev => ComplexPoly::from_real(&[0.0, -1.0]),
        }
    }

    pub fn ode_h(&self, n: usize) -> C64 {
        let nf = n as f64;
        match self.kind {
            FamilyKind::Hermite => r(2.0 * nf),
            FamilyKind::Laguerre { .. } => r(nf),
            FamilyKind::GenLaguerre { beta, .. } => beta * nf,
            FamilyKind::Jacobi { alpha, beta } => nf * (nf + alpha + beta + 1.0),
            FamilyKind::Chebyshev => r(nf * nf),
        }
    }

    /// K_n = ∫ P_n² w over (l, r).
    pub fn norm(&self, n: usize) -> Result<C64> {
        let nf = n as f64;
        let lg = complex_log_gamma;
        Ok(match self.kind {
            FamilyKind::Hermite => r(2f64.powi(n as i32) * factorial(n) * PI.sqrt()),
            FamilyKind::Chebyshev => r(if n == 0 { PI } else { PI / 2.0 }),
            FamilyKind::Laguerre { alpha } => (lg(alpha + nf + 1.0)? - lg(r(nf + 1.0))?).exp(),
            FamilyKind::GenLaguerre { alpha, beta } => {
                (lg(alpha + nf + 1.0)? - lg(r(nf + 1.0))? - (alpha + 1.0) * beta.ln()).exp()
            }
            FamilyKind::Jacobi { alpha, beta } => {
                let s = alpha + beta;
                let two = (s + 1.0) * 2f64.ln();
                if n == 0 {
                    (two + lg(alpha + 1.0)? + lg(beta + 1.0)? - lg(s + 2.0)?).exp()
                } else {
                    (two + lg(alpha + nf + 1.0)? + lg(beta + nf + 1.0)?
                        - lg(s + nf + 1.0)?
                        - lg(r(nf + 1.0))?)
                    .exp()
                        / (2.0 * nf + s + 1.0)
                }
            }
        })
    }

    pub fn rodrigues_eps(&self, n: usize) -> C64 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        r(match self.kind {
            FamilyKind::Hermite => sign,
            FamilyKind::Laguerre { .. } | FamilyKind::GenLaguerre { .. } => 1.0 / factorial(n),
            FamilyKind::Jacobi { .. } => sign / (2f64.powi(n as i32) * factorial(n)),
            FamilyKind::Chebyshev => {
                let dfact: f64 = (1..n).map(|k| (2 * k + 1) as f64).product();
                sign / dfact
            }
        })
    }

    /// fⁿ w, written by raising the exponents of the weight's linear factors.
    pub fn rodrigues_numerator(&self, n: usize) -> StructuredWeight {
        self.weight().raise_exponents(n as f64)
    }

    pub fn generate(&self, n: usize) -> ComplexPoly {
        self.generate_all(n).pop().unwrap()
    }

    /// P_0..P_n.
    pub fn generate_all(&self, n: usize) -> Vec<ComplexPoly> {
        let mut out = vec![ComplexPoly::one()];
        let mut prev = ComplexPoly::zero();
        for k in 1..=n {
            let (a, b, c) = self.recurrence(k);
            let cur = &out[k - 1];
            let next = &(&ComplexPoly::linear(a, -b) * cur) - &prev.scale(c);
            prev = cur.clone();
            out.push(ComplexPoly::new_untrimmed(next.coeffs().to_vec()));
        }
        out
    }

    /// K_0 A_1 Π_{j=2}^{k+1} C_j, which stands for the product C_0 C_1 ··· C_{k+1}.
    pub fn cd_products(&self, n: usize) -> Result<Vec<C64>> {
        let mut prods = Vec::with_capacity(n + 2);
        let mut p = self.norm(0)? * self.recurrence(1).0;
        prods.push(p);
        for k in 1..=n + 1 {
            p *= self.recurrence(k + 1).2;
            prods.push(p);
        }
        Ok(prods)
    }
}

pub fn builtin(name: &str, params: &[C64]) -> Result<FamilySpec> {
    FamilySpec::builtin(name, params)
}

pub fn generate(fam: &FamilySpec, n: usize) -> ComplexPoly {
    fam.generate(n)
}

/// f P_n'' + g P_n' + h_n P_n at x.
pub fn ode_residual(fam: &FamilySpec, n: usize, x: C64) -> Residual {
    let p = fam.generate(n);
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let (f, g, h) = (fam.ode_f(), fam.ode_g(), fam.ode_h(n));
    let terms = [f.eval(x) * d2.eval(x), g.eval(x) * d1.eval(x), h * p.eval(x)];
    let scale = f.eval_abs(x) * d2.eval_abs(x) + g.eval_abs(x) * d1.eval_abs(x) + h.norm() * p.eval_abs(x);
    Residual::new(terms.iter().sum(), C64::new(0.0, 0.0), scale)
}

/// Σ_{k≤n} A_{k+1}/(C_0···C_{k+1}) P_k(x)P_k(y) minus the closed form.
pub fn classical_cd_residual(fam: &FamilySpec, n: usize, x: C64, y: C64) -> Result<Residual> {
    if x == y {
        return Err(Error::CoincidentPoints);
    }
    let ps = fam.generate_all(n + 1);
    let prods = fam.cd_products(n)?;
    let mut lhs = C64::new(0.0, 0.0);
    let mut scale = 0.0;
    for k in 0..=n {
        let term = fam.recurrence(k + 1).0 / prods[k] * ps[k].eval(x) * ps[k].eval(y);
        lhs += term;
        scale += term.norm();
    }
    let rhs = (ps[n + 1].eval(x) * ps[n].eval(y) - ps[n].eval(x) * ps[n + 1].eval(y)) / (prods[n] * (x - y));
    Ok(Residual::new(lhs, rhs, scale))
}

pub fn classical_cd_confluent_residual(fam: &FamilySpec, n: usize, x: C64) -> Result<Residual> {
    let ps = fam.generate_all(n + 1);
    let prods = fam.cd_products(n)?;
    let mut lhs = C64::new(0.0, 0.0);
    let mut scale = 0.0;
    for k in 0..=n {
        let term = fam.recurrence(k + 1).0 / prods[k] * ps[k].eval(x) * ps[k].eval(x);
        lhs += term;
        scale += term.norm();
    }
    let rhs = (ps[n + 1].derivative().eval(x) * ps[n].eval(x) - ps[n].derivative().eval(x) * ps[n + 1].eval(x))
        / prods[n];
    Ok(Residual::new(lhs, rhs, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_members() {
        assert_eq!(
            FamilySpec::chebyshev().generate(4),
            ComplexPoly::from_real(&[1.0, 0.0, -8.0, 0.0, 8.0])
        );
        assert_eq!(
            FamilySpec::chebyshev().generate(7),
            ComplexPoly::from_real(&[0.0, -7.0, 0.0, 56.0, 0.0, -112.0, 0.0, 64.0])
        );
        assert_eq!(FamilySpec::hermite().generate(1), ComplexPoly::from_real(&[0.0, 2.0]));
        assert_eq!(FamilySpec::hermite().generate(0), ComplexPoly::one());
        let (a, b) = (0.3, -0.4);
        let j1 = FamilySpec::jacobi(a, b).generate(1);
        assert!(j1.relative_distance(&ComplexPoly::from_real(&[0.5 * (a - b), 0.5 * (a + b + 2.0)])) < 1e-15);
        let g1 = FamilySpec::gen_laguerre(0.7, 2.5).generate(1);
        assert!(g1.relative_distance(&ComplexPoly::from_real(&[1.7, -2.5])) < 1e-15);
    }

    #[test]
    fn jacobi_value_at_one() {
        let (a, b) = (0.5, 1.5);
        let fam = FamilySpec::jacobi(a, b);
        for n in 0..8 {
            let binom: f64 = (1..=n).map(|k| (a + k as f64) / k as f64).product();
            let v = fam.generate(n).eval(r(1.0));
            assert!((v.re - binom).abs() < 1e-12 * binom.max(1.0), "n = {n}");
        }
    }

    #[test]
    fn hermite_ode_point() {
        let res = ode_residual(&FamilySpec::hermite(), 3, r(0.7));
        assert!(res.value.norm() < 1e-10);
        assert_eq!(ode_residual(&FamilySpec::laguerre(0.5), 0, r(2.0)).value, r(0.0));
    }

    #[test]
    fn cd_examples() {
        let res = classical_cd_residual(&FamilySpec::chebyshev(), 5, r(0.3), r(-0.2)).unwrap();
        assert!(res.relative() < 1e-11);
        let res = classical_cd_confluent_residual(&FamilySpec::hermite(), 8, r(1.1)).unwrap();
        assert!(res.relative() < 1e-9);
        let res = classical_cd_residual(&FamilySpec::laguerre(0.3), 0, r(0.3), r(2.0)).unwrap();
        assert!(res.relative() < 1e-15);
        assert!(classical_cd_residual(&FamilySpec::hermite(), 3, r(1.0), r(1.0)).is_err());
    }

    #[test]
    fn strict_rejects() {
        assert!(FamilySpec::new_strict(FamilyKind::Laguerre { alpha: r(-1.5) }).is_err());
        assert!(FamilySpec::new_strict(FamilyKind::Jacobi { alpha: r(0.2), beta: r(0.1) }).is_ok());
        assert!(matches!(FamilySpec::builtin("legendre-ish", &[]), Err(Error::UnknownFamily(_))));
    }
}
