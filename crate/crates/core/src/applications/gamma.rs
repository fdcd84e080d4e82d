//! Complex log-gamma by the Lanczos approximation (g = 7, 9 terms).

use crate::error::{Error, Result};
use crate::moebius::C64;
use std::f64::consts::PI;

const G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// log Γ(z). The imaginary part is consistent with exp(log Γ) = Γ but is not
/// continued across the negative real axis.
pub fn complex_log_gamma(z: C64) -> Result<C64> {
    if is_nonpositive_integer(z) {
        return Err(Error::PoleAtNonpositiveInteger(z));
    }
    if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        let s = (PI * z).sin();
        return Ok(C64::new(PI.ln(), 0.0) - s.ln() - complex_log_gamma(1.0 - z)?);
    }
    let z = z - 1.0;
    let mut acc = C64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln())
}

pub fn complex_gamma(z: C64) -> Result<C64> {
    Ok(complex_log_gamma(z)?.exp())
}

/// Real Γ for real arguments, through the complex routine.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(complex_gamma(C64::new(x, 0.0))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert!(complex_log_gamma(C64::new(1.0, 0.0)).unwrap().norm() < 1e-14);
        let half = complex_log_gamma(C64::new(0.5, 0.0)).unwrap();
        assert!((half - C64::new(PI.sqrt().ln(), 0.0)).norm() < 1e-13);
        assert!((gamma(5.0).unwrap() - 24.0).abs() < 1e-11);
        assert!((gamma(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-12);
        assert!(complex_log_gamma(C64::new(-2.0, 0.0)).is_err());
    }

    #[test]
    fn recurrence_off_axis() {
        let z = C64::new(2.0, 3.0);
        let g0 = complex_gamma(z).unwrap();
        let g1 = complex_gamma(z + 1.0).unwrap();
        assert!(((g1 - z * g0) / g1).norm() < 1e-12);
    }
}
