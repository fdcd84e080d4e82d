//! Laguerre and Hermite polynomials as parameter limits of transformed Jacobi polynomials.

use crate::error::Result;
use crate::families::FamilySpec;
use crate::moebius::{MoebiusMap, C64};
use crate::polynomial::ComplexPoly;
use crate::transform::{BuildOptions, TransformedSequence};
use serde::Serialize;

const NO_VERIFY: BuildOptions = BuildOptions {
    verify: false,
    tolerance: 0.0,
};

/// Errors below this are treated as an exact limit when forming ratios.
const EXACT: f64 = 1e-11;

fn coeff_error(p: &ComplexPoly, target: &ComplexPoly) -> f64 {
    (p - target).coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// M(x) = (x - α - 1)/(x + α + 1), written with a = -1/(α+1), b = 1.
pub fn laguerre_limit_map(alpha: f64) -> MoebiusMap {
    let s = -1.0 / (alpha + 1.0);
    MoebiusMap::from_real(s, 1.0, s, -1.0).expect("Δ = 2/(α+1)")
}

/// M(x) = 1 - 2x/α.
pub fn szego_map(alpha: f64) -> MoebiusMap {
    MoebiusMap::from_real(-2.0 / alpha, 1.0, 0.0, 1.0).expect("affine")
}

/// M(x) = x/√α with d = 2/√α.
pub fn hermite_limit_map(alpha: f64) -> MoebiusMap {
    let r = alpha.sqrt();
    MoebiusMap::from_real(2.0 / alpha, 0.0, 0.0, 2.0 / r).expect("affine")
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitRow {
    pub alpha: f64,
    pub error: f64,
    /// cross-check route, when there is one
    pub alternate_error: Option<f64>,
    pub route_difference: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitTable {
    pub n: usize,
    pub rows: Vec<LimitRow>,
    /// error(α_{k+1})/error(α_k); None where both errors are at roundoff
    pub ratios: Vec<Option<f64>>,
    pub alternate_ratios: Vec<Option<f64>>,
    pub pass: bool,
}

fn ratios(errors: &[f64]) -> Vec<Option<f64>> {
    errors
        .windows(2)
        .map(|w| if w[0] < EXACT && w[1] < EXACT { None } else { Some(w[1] / w[0]) })
        .collect()
}

fn ratio_ok(r: &[Option<f64>], alphas: &[f64]) -> bool {
    r.iter().zip(alphas.windows(2)).all(|(r, a)| match r {
        None => true,
        Some(r) => {
            // the accepted band is scaled from a factor-of-ten step
            let step = (a[1] / a[0]).log10();
            let (lo, hi) = (0.05f64.powf(step), 0.2f64.powf(step));
            *r >= lo && *r <= hi
        }
    })
}

fn increasing(alphas: &[f64]) -> bool {
    alphas.windows(2).all(|w| w[1] > w[0])
}

pub fn jacobi_to_laguerre_limit_check(n: usize, beta: f64, alphas: &[f64]) -> Result<LimitTable> {
    let target = FamilySpec::laguerre(beta).generate(n);
    let mut rows = Vec::new();
    for &alpha in alphas {
        let jac = FamilySpec::jacobi(alpha, beta);
        let mob = TransformedSequence::build_with(&jac, &laguerre_limit_map(alpha), n, NO_VERIFY)?;
        let szego = TransformedSequence::build_with(
            &FamilySpec::jacobi(beta, alpha),
            &szego_map(alpha),
            n,
            NO_VERIFY,
        )?;
        let (qm, qs) = (mob.q(n), szego.q(n));
        rows.push(LimitRow {
            alpha,
            error: coeff_error(qm, &target),
            alternate_error: Some(coeff_error(qs, &target)),
            route_difference: Some(coeff_error(qm, qs)),
        });
    }
    let r = ratios(&rows.iter().map(|x| x.error).collect::<Vec<_>>());
    let ra = ratios(&rows.iter().map(|x| x.alternate_error.unwrap()).collect::<Vec<_>>());
    let pass = increasing(alphas) && ratio_ok(&r, alphas) && ratio_ok(&ra, alphas);
    Ok(LimitTable {
        n,
        rows,
        ratios: r,
        alternate_ratios: ra,
        pass,
    })
}

pub fn jacobi_to_hermite_limit_check(n: usize, alphas: &[f64]) -> Result<LimitTable> {
    // H_n/n! matches the normalization fixed by d = 2/√α
    let h = FamilySpec::hermite().generate(n);
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    let target = h.scale(C64::new(1.0 / fact, 0.0));
    let mut rows = Vec::new();
    for &alpha in alphas {
        let seq = TransformedSequence::build_with(
            &FamilySpec::jacobi(alpha, alpha),
            &hermite_limit_map(alpha),
            n,
            NO_VERIFY,
        )?;
        rows.push(LimitRow {
            alpha,
            error: coeff_error(seq.q(n), &target),
            alternate_error: None,
            route_difference: None,
        });
    }
    let r = ratios(&rows.iter().map(|x| x.error).collect::<Vec<_>>());
    let pass = increasing(alphas) && ratio_ok(&r, alphas);
    Ok(LimitTable {
        n,
        rows,
        ratios: r,
        alternate_ratios: Vec::new(),
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightLimitRow {
    pub alpha: f64,
    /// max over sample points of |ω_κ(x)/(x^β e^{-x}) - 1|
    pub max_rel_error: f64,
}

/// ln of the transformed Jacobi weight rescaled by κ = α^{β+1}(α+1)^{α+1}.
fn log_scaled_laguerre_weight(alpha: f64, beta: f64, x: f64) -> f64 {
    let map = laguerre_limit_map(alpha);
    let xc = C64::new(x, 0.0);
    let t = map.eval(xc).expect("x > -α-1").re;
    let u = map.denom(xc).re.abs();
    let delta = map.delta().re;
    let jac = delta.ln() + alpha * (1.0 - t).ln() - 2.0 * u.ln();
    let jac = if beta == 0.0 { jac } else { jac + beta * (1.0 + t).ln() };
    // ω = 2^{α+β+1}(α+1)^{α+1} x^β (x+α+1)^{-α-β-2}; replace 2^{α+β+1} by α^{β+1}
    jac - (alpha + beta + 1.0) * 2f64.ln() + (beta + 1.0) * alpha.ln()
}

pub fn jacobi_weight_limit_check(alphas: &[f64], beta: f64, xs: &[f64]) -> Vec<WeightLimitRow> {
    alphas
        .iter()
        .map(|&alpha| {
            let max_rel_error = xs
                .iter()
                .map(|&x| {
                    let target = if beta == 0.0 { -x } else { beta * x.ln() - x };
                    (log_scaled_laguerre_weight(alpha, beta, x) - target).exp_m1().abs()
                })
                .fold(0.0, f64::max);
            WeightLimitRow { alpha, max_rel_error }
        })
        .collect()
}

/// √α ω(x) = (1 - x²/α)^α against e^{-x²}.
pub fn hermite_weight_limit_check(alphas: &[f64], xs: &[f64]) -> Vec<WeightLimitRow> {
    alphas
        .iter()
        .map(|&alpha| {
            let map = hermite_limit_map(alpha);
            let max_rel_error = xs
                .iter()
                .map(|&x| {
                    let t = map.eval(C64::new(x, 0.0)).expect("affine").re;
                    let lw = map.delta().re.ln() - 2.0 * map.d().re.ln()
                        + alpha * ((1.0 - t).ln() + (1.0 + t).ln())
                        + 0.5 * alpha.ln();
                    (lw + x * x).exp_m1().abs()
                })
                .fold(0.0, f64::max);
            WeightLimitRow { alpha, max_rel_error }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALPHAS: [f64; 3] = [1e2, 1e3, 1e4];

    #[test]
    fn laguerre_route() {
        let t = jacobi_to_laguerre_limit_check(3, 0.5, &ALPHAS).unwrap();
        assert!(t.pass, "{t:?}");
        assert!(t.rows[2].error < 1e-3);
        let t0 = jacobi_to_laguerre_limit_check(0, 0.5, &ALPHAS).unwrap();
        assert!(t0.rows.iter().all(|r| r.error == 0.0));
        let t1 = jacobi_to_laguerre_limit_check(1, 0.0, &ALPHAS).unwrap();
        assert!(t1.pass && t1.rows.iter().all(|r| r.error < EXACT), "{t1:?}");
    }

    #[test]
    fn hermite_route() {
        for n in 0..=6 {
            let t = jacobi_to_hermite_limit_check(n, &ALPHAS).unwrap();
            assert!(t.pass, "n={n} {t:?}");
        }
    }

    #[test]
    fn weights_converge() {
        let xs = [0.5, 1.0, 2.0, 5.0];
        let w = jacobi_weight_limit_check(&ALPHAS, 0.5, &xs);
        assert!(w[2].max_rel_error < w[1].max_rel_error && w[1].max_rel_error < w[0].max_rel_error);
        let h = hermite_weight_limit_check(&ALPHAS, &xs);
        assert!(h[2].max_rel_error < 0.2 * h[1].max_rel_error, "{h:?}");
    }
}
