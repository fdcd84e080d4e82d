//! Romanovski polynomials (-i)ⁿ J_n^{(γ+iδ, γ-iδ)}(ix).

use crate::applications::bessel::OrthogonalityCheck;
use crate::applications::gamma::complex_log_gamma;
use crate::error::{Error, Result};
use crate::families::{FamilySpec, Interval};
use crate::moebius::{MoebiusMap, C64};
use crate::polynomial::ComplexPoly;
use crate::quadrature::{gram_transformed_contour, gram_transformed_pullback, integrate_real, QuadratureScheme};
use crate::residual::CheckStatus;
use crate::transform::TransformedSequence;
use serde::Serialize;

const REAL_TOL: f64 = 1e-11;

pub fn romanovski_map() -> MoebiusMap {
    MoebiusMap::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, -1.0))
        .expect("Δ = -i")
}

pub fn romanovski_family(gamma: f64, delta: f64) -> FamilySpec {
    FamilySpec::jacobi_complex(C64::new(gamma, delta), C64::new(gamma, -delta))
}

pub fn romanovski_sequence(n_max: usize, gamma: f64, delta: f64) -> Result<TransformedSequence> {
    TransformedSequence::build(&romanovski_family(gamma, delta), &romanovski_map(), n_max)
}

/// ℛ_n^{(γ,δ)} with the imaginary residue checked and dropped.
pub fn romanovski(n: usize, gamma: f64, delta: f64) -> Result<ComplexPoly> {
    let seq = romanovski_sequence(n, gamma, delta)?;
    real_polys(&seq).map(|mut v| v.swap_remove(n))
}

fn real_polys(seq: &TransformedSequence) -> Result<Vec<ComplexPoly>> {
    seq.polys()
        .iter()
        .map(|q| {
            let max_imag = q.max_imag_relative();
            if max_imag > REAL_TOL {
                Err(Error::NonRealCoefficients { max_imag })
            } else {
                Ok(q.real_part())
            }
        })
        .collect()
}

/// 2^{2γ+1}/(2n+2γ+1) · Γ(n+1+γ+iδ)Γ(n+1+γ-iδ)/(Γ(n+1+2γ)Γ(n+1)).
pub fn romanovski_constant(n: usize, gamma: f64, delta: f64) -> Result<C64> {
    let nf = n as f64;
    let lg = |z: C64| complex_log_gamma(z);
    let log = (2.0 * gamma + 1.0) * 2f64.ln() - (2.0 * nf + 2.0 * gamma + 1.0).ln()
        + lg(C64::new(nf + 1.0 + gamma, delta))?
        + lg(C64::new(nf + 1.0 + gamma, -delta))?
        - lg(C64::new(nf + 1.0 + 2.0 * gamma, 0.0))?
        - lg(C64::new(nf + 1.0, 0.0))?;
    Ok(log.exp())
}

/// (x²+1)^γ e^{2δ arctan x}, with the principal complex arctan.
pub fn romanovski_weight_display(x: C64, gamma: f64, delta: f64) -> C64 {
    (gamma * (x * x + 1.0).ln() + 2.0 * delta * x.atan()).exp()
}

#[derive(Debug, Clone, Serialize)]
pub struct RomanovskiCheck {
    pub m: usize,
    pub n: usize,
    pub status: CheckStatus,
    /// ∫_Γ ℛ_m ℛ_n ω_{m,n} dz through the real Jacobi parameter
    pub pullback: Option<C64>,
    /// the same integral along z = i - 2is
    pub segment: Option<C64>,
    /// ∫_{-i}^{i} ℛ_m ℛ_n (x²+1)^γ e^{2δ arctan x} dx as written
    pub display: Option<C64>,
    pub expected: Option<C64>,
    /// relative error (diagonal) or size relative to the absolute integral (off-diagonal);
    /// route_agreement uses the same scale
    pub error: Option<f64>,
    pub route_agreement: Option<f64>,
    /// |display - i(-1)ⁿK_n|/|K_n|; zero expected off the diagonal
    pub display_error: Option<f64>,
    pub tolerance: f64,
}

pub fn romanovski_gate(gamma: f64, delta: f64) -> bool {
    gamma > -1.0 && delta.is_finite()
}

pub fn romanovski_orthogonality_check(
    m: usize,
    n: usize,
    gamma: f64,
    delta: f64,
    scheme: &QuadratureScheme,
) -> Result<RomanovskiCheck> {
    let tolerance = if m == n { 1e-6 } else { 1e-8 };
    if !romanovski_gate(gamma, delta) {
        return Ok(RomanovskiCheck {
            m,
            n,
            status: CheckStatus::Ungated,
            pullback: None,
            segment: None,
            display: None,
            expected: None,
            error: None,
            route_agreement: None,
            display_error: None,
            tolerance,
        });
    }
    let k = m.max(n);
    let seq = romanovski_sequence(k, gamma, delta)?;
    let pull = gram_transformed_pullback(&seq, k, scheme)?;
    let seg = gram_transformed_contour(&seq, k, scheme)?;
    let (p, s) = (pull.matrix[m][n], seg.matrix[m][n]);
    let polys = real_polys(&seq)?;
    let (pm, pn) = (&polys[m], &polys[n]);
    // x = it, dx = i dt
    let iv = Interval::finite(-1.0, 1.0);
    let display_integrand = |t: f64| {
        let x = C64::new(0.0, t);
        pm.eval(x) * pn.eval(x) * romanovski_weight_display(x, gamma, delta) * C64::new(0.0, 1.0)
    };
    let display = integrate_real(|t| Ok(display_integrand(t)), &iv, scheme)?;
    let (expected, error, display_error, route_agreement) = if m == n {
        let kn = romanovski_constant(n, gamma, delta)?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let de = (display - C64::new(0.0, sign) * kn).norm() / kn.norm();
        (kn, (p - kn).norm() / kn.norm(), de, (p - s).norm() / kn.norm())
    } else {
        let abs = integrate_real(|t| Ok(C64::new(display_integrand(t).norm(), 0.0)), &iv, scheme)?.re;
        (C64::new(0.0, 0.0), p.norm() / abs, display.norm() / abs, (p - s).norm() / abs)
    };
    let status = CheckStatus::from_bool(error < tolerance && route_agreement < 1e-7);
    Ok(RomanovskiCheck {
        m,
        n,
        status,
        pullback: Some(p),
        segment: Some(s),
        display: Some(display),
        expected: Some(expected),
        error: Some(error),
        route_agreement: Some(route_agreement),
        display_error: Some(display_error),
        tolerance,
    })
}

pub fn romanovski_real_gate(m: usize, n: usize, gamma: f64) -> bool {
    (m + n) as f64 + 2.0 * gamma < -1.0
}

/// ∫_ℝ ℛ_m ℛ_n (x²+1)^γ e^{2δ arctan x} dx, off-diagonal entries compared with ∫|·|.
pub fn romanovski_finite_real_check(
    m: usize,
    n: usize,
    gamma: f64,
    delta: f64,
    scheme: &QuadratureScheme,
) -> Result<OrthogonalityCheck> {
    let tolerance = 1e-8;
    if !romanovski_real_gate(m, n, gamma) {
        return Ok(OrthogonalityCheck::ungated(m, n, tolerance));
    }
    let k = m.max(n);
    let seq = TransformedSequence::build(&romanovski_family(gamma, delta), &romanovski_map(), k)?;
    let polys = real_polys(&seq)?;
    let (pm, pn) = (&polys[m], &polys[n]);
    let f = |x: f64| {
        let w = (gamma * (x * x + 1.0).ln() + 2.0 * delta * x.atan()).exp();
        let xc = C64::new(x, 0.0);
        pm.eval(xc) * pn.eval(xc) * w
    };
    let iv = Interval::real_line();
    let computed = integrate_real(|x| Ok(f(x)), &iv, scheme)?;
    let abs = integrate_real(|x| Ok(C64::new(f(x).norm(), 0.0)), &iv, scheme)?.re;
    let (status, error) = if m == n {
        // a positive finite value is all that is claimed
        let ok = computed.re.is_finite() && computed.re > 0.0 && computed.im.abs() <= 1e-12 * abs;
        (CheckStatus::from_bool(ok), (computed.re - abs).abs() / abs)
    } else {
        let e = computed.norm() / abs;
        (CheckStatus::from_bool(e < tolerance), e)
    };
    Ok(OrthogonalityCheck {
        m,
        n,
        status,
        computed: Some(computed),
        expected: Some(if m == n { C64::new(abs, 0.0) } else { C64::new(0.0, 0.0) }),
        error: Some(error),
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let (g, d) = (0.3, -1.1);
        let r1 = romanovski(1, g, d).unwrap();
        assert!(r1.relative_distance(&ComplexPoly::from_real(&[d, 1.0 + g])) < 1e-13);
        let r2 = romanovski(2, g, d).unwrap();
        let want = ComplexPoly::from_real(&[
            0.25 * (2.0 + g + 2.0 * d * d),
            0.5 * d * (3.0 + 2.0 * g),
            0.25 * (2.0 + g) * (3.0 + 2.0 * g),
        ]);
        assert!(r2.relative_distance(&want) < 1e-13);
    }

    #[test]
    fn imaginary_axis() {
        let s = QuadratureScheme::default();
        let c = romanovski_orthogonality_check(1, 1, 0.5, 1.0, &s).unwrap();
        assert_eq!(c.status, CheckStatus::Passed, "{c:?}");
        assert!(c.display_error.unwrap() < 1e-6);
        let c = romanovski_orthogonality_check(0, 2, 0.5, 1.0, &s).unwrap();
        assert_eq!(c.status, CheckStatus::Passed, "{c:?}");
    }

    #[test]
    fn real_line() {
        let s = QuadratureScheme::default();
        let c = romanovski_finite_real_check(0, 1, -2.5, 0.6, &s).unwrap();
        assert_eq!(c.status, CheckStatus::Passed, "{c:?}");
        let c = romanovski_finite_real_check(1, 1, -2.0, 0.6, &s).unwrap();
        assert_eq!(c.status, CheckStatus::Passed, "{c:?}");
        let c = romanovski_finite_real_check(2, 2, -2.5, 0.6, &s).unwrap();
        assert_eq!(c.status, CheckStatus::Ungated);
    }
}
