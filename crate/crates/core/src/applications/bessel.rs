//! Generalized Bessel polynomials as inverted generalized Laguerre polynomials with the
//! index-dependent parameter α_n = 1 - 2n - γ.

use crate::applications::gamma::complex_log_gamma;
use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilySpec, Interval};
use crate::moebius::{MoebiusMap, C64};
use crate::polynomial::ComplexPoly;
use crate::quadrature::{integrate_real, QuadratureScheme};
use crate::residual::{CheckStatus, Residual};
use crate::transform::TransformedSequence;
use serde::Serialize;

/// Per-index families sharing one map; pairs use the weight of the higher index.
#[derive(Debug, Clone, Copy)]
pub struct VaryingParamSequence {
    pub gamma: C64,
    pub beta: C64,
    pub map: MoebiusMap,
}

impl VaryingParamSequence {
    pub fn bessel(gamma: C64, beta: C64) -> Self {
        VaryingParamSequence {
            gamma,
            beta,
            map: MoebiusMap::inversion(),
        }
    }

    pub fn alpha(&self, n: usize) -> C64 {
        1.0 - 2.0 * n as f64 - self.gamma
    }

    pub fn family(&self, n: usize) -> FamilySpec {
        FamilySpec::new(FamilyKind::GenLaguerre {
            alpha: self.alpha(n),
            beta: self.beta,
        })
    }

    /// The transformed sequence whose entry n is the n-th member.
    pub fn sequence(&self, n: usize) -> Result<TransformedSequence> {
        TransformedSequence::build(&self.family(n), &self.map, n)
    }

    /// xⁿ L_n^{(α_n, β)}(1/x).
    pub fn laguerre_form(&self, n: usize) -> Result<ComplexPoly> {
        Ok(self.sequence(n)?.q(n).clone())
    }

    /// Index whose weight serves the pair (m, n).
    pub fn weight_index(m: usize, n: usize) -> usize {
        m.max(n)
    }

    /// ω_{m,n} taken from the family of the higher index.
    pub fn varying_weight(&self, m: usize, n: usize, x: C64) -> Result<C64> {
        let k = Self::weight_index(m, n);
        TransformedSequence::build(&self.family(k), &self.map, 0)?.varying_weight(m, n, x)
    }

    /// Ω_{m,n}(x) = x^{|m-n|+γ-3} e^{-β/x}.
    pub fn omega(&self, m: usize, n: usize, x: C64) -> C64 {
        let k = m.abs_diff(n) as f64 + self.gamma - 3.0;
        (k * x.ln() - self.beta / x).exp()
    }
}

/// 𝓑_n^{(γ,β)} normalized to constant term 1.
pub fn bessel_generalized(n: usize, gamma: C64, beta: C64) -> Result<ComplexPoly> {
    let p = VaryingParamSequence::bessel(gamma, beta).laguerre_form(n)?;
    let c0 = p.coeff(0);
    if c0.norm() <= 1e-300 || c0.norm() <= 1e-13 * p.max_abs() {
        return Err(Error::NormalizationImpossible);
    }
    Ok(p.scale(1.0 / c0))
}

/// x² y'' + (β + γx) y' + sign·n(n+γ-1) y at x.
pub fn bessel_ode_residual(n: usize, gamma: C64, beta: C64, x: C64, sign: f64) -> Result<Residual> {
    let p = bessel_generalized(n, gamma, beta)?;
    let (d1, d2) = (p.derivative(), p.derivative().derivative());
    let h = sign * n as f64 * (n as f64 + gamma - 1.0);
    let terms = [x * x * d2.eval(x), (beta + gamma * x) * d1.eval(x), h * p.eval(x)];
    let scale = terms.iter().map(|t| t.norm()).sum();
    Ok(Residual::new(terms.iter().sum(), C64::new(0.0, 0.0), scale))
}

/// Coefficients (x², γx + β, c) of the Bessel equation, with c = -n(n+γ-1).
pub fn bessel_ode_coeffs(n: usize, gamma: C64, beta: C64) -> (ComplexPoly, ComplexPoly, ComplexPoly) {
    let nf = n as f64;
    (
        ComplexPoly::from_real(&[0.0, 0.0, 1.0]),
        ComplexPoly::linear(gamma, beta),
        ComplexPoly::constant(-nf * (nf + gamma - 1.0)),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityCheck {
    pub m: usize,
    pub n: usize,
    pub status: CheckStatus,
    pub computed: Option<C64>,
    pub expected: Option<C64>,
    /// relative error for m = n; |computed| / ∫|integrand| otherwise
    pub error: Option<f64>,
    pub tolerance: f64,
}

impl OrthogonalityCheck {
    pub fn ungated(m: usize, n: usize, tolerance: f64) -> Self {
        OrthogonalityCheck {
            m,
            n,
            status: CheckStatus::Ungated,
            computed: None,
            expected: None,
            error: None,
            tolerance,
        }
    }
}

/// Gate: γ < 2 - 2max(m, n) and β > 0, both real.
pub fn bessel_gate(m: usize, n: usize, gamma: C64, beta: C64) -> bool {
    gamma.im == 0.0 && beta.im == 0.0 && beta.re > 0.0 && gamma.re < 2.0 - 2.0 * m.max(n) as f64
}

/// β^{2n-2+γ} Γ(2-n-γ)/Γ(n+1).
pub fn bessel_norm(n: usize, gamma: C64, beta: C64) -> Result<C64> {
    let nf = n as f64;
    Ok(((2.0 * nf - 2.0 + gamma) * beta.ln() + complex_log_gamma(2.0 - nf - gamma)?
        - complex_log_gamma(C64::new(nf + 1.0, 0.0))?)
    .exp())
}

/// ∫_0^∞ 𝓑_m 𝓑_n Ω_{m,n} dx, with 𝓑_n = xⁿL_n^{(1-2n-γ,β)}(1/x), evaluated in u = 1/x.
pub fn bessel_orthogonality_check(
    m: usize,
    n: usize,
    gamma: C64,
    beta: C64,
    scheme: &QuadratureScheme,
    tolerance: f64,
) -> Result<OrthogonalityCheck> {
    if !bessel_gate(m, n, gamma, beta) {
        return Ok(OrthogonalityCheck::ungated(m, n, tolerance));
    }
    let vs = VaryingParamSequence::bessel(gamma, beta);
    let (pm, pn) = (vs.laguerre_form(m)?, vs.laguerre_form(n)?);
    let integrand = |u: f64| -> C64 {
        let x = C64::new(1.0 / u, 0.0);
        pm.eval(x) * pn.eval(x) * vs.omega(m, n, x) / (u * u)
    };
    let iv = Interval::half_line(0.0);
    let computed = integrate_real(|u| Ok(integrand(u)), &iv, scheme)?;
    let (expected, error) = if m == n {
        let k = bessel_norm(n, gamma, beta)?;
        (k, (computed - k).norm() / k.norm())
    } else {
        let abs = integrate_real(|u| Ok(C64::new(integrand(u).norm(), 0.0)), &iv, scheme)?;
        (C64::new(0.0, 0.0), computed.norm() / abs.re)
    };
    Ok(OrthogonalityCheck {
        m,
        n,
        status: CheckStatus::from_bool(error < tolerance),
        computed: Some(computed),
        expected: Some(expected),
        error: Some(error),
        tolerance,
    })
}

/// 𝓑_n and 𝓑_{1-γ-n} for a negative integer γ.
pub fn bessel_defective_identity_check(n: usize, gamma: i32, beta: C64) -> Result<(f64, bool)> {
    if gamma >= 0 || (1 - gamma - n as i32) < 0 {
        return Err(Error::InvalidArgument(format!("γ = {gamma}, n = {n}")));
    }
    let partner = (1 - gamma - n as i32) as usize;
    let g = C64::new(gamma as f64, 0.0);
    let a = bessel_generalized(n, g, beta)?;
    let b = bessel_generalized(partner, g, beta)?;
    let d = a.relative_distance(&b);
    Ok((d, d < 1e-11))
}
