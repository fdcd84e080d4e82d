//! Extended complex numbers and Moebius maps.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C64 = Complex64;

/// A point of the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(C64),
    Infinity,
}

impl ExtComplex {
    pub fn finite(self) -> Option<C64> {
        match self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }
}

impl From<C64> for ExtComplex {
    fn from(z: C64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            ExtComplex::Finite(z)
        } else {
            ExtComplex::Infinity
        }
    }
}

impl From<f64> for ExtComplex {
    fn from(x: f64) -> Self {
        C64::new(x, 0.0).into()
    }
}

/// M(x) = (ax + b)/(cx + d) with cached determinant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[C64; 4]", into = "[C64; 4]")]
pub struct MoebiusMap {
    a: C64,
    b: C64,
    c: C64,
    d: C64,
    delta: C64,
}

impl TryFrom<[C64; 4]> for MoebiusMap {
    type Error = Error;
    fn try_from(p: [C64; 4]) -> Result<Self> {
        MoebiusMap::new(p[0], p[1], p[2], p[3])
    }
}

impl From<MoebiusMap> for [C64; 4] {
    fn from(m: MoebiusMap) -> Self {
        [m.a, m.b, m.c, m.d]
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

impl MoebiusMap {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let delta = a * d - b * c;
        let scale = (a.norm() * d.norm()).max(b.norm() * c.norm()).max(1.0);
        if !(delta.norm() > 1e-14 * scale) {
            return Err(Error::DegenerateMap { delta });
        }
        Ok(MoebiusMap { a, b, c, d, delta })
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_real(1.0, 0.0, 0.0, 1.0).unwrap()
    }

    /// x -> 1/x
    pub fn inversion() -> Self {
        Self::from_real(0.0, 1.0, 1.0, 0.0).unwrap()
    }

    /// M(x) = -i(x+1)/(x-1), taking the unit circle onto the real line.
    pub fn cayley_to_circle() -> Self {
        Self::new(c(0.0, -1.0), c(0.0, -1.0), c(1.0, 0.0), c(-1.0, 0.0)).unwrap()
    }

    /// W(x) = (x-i)/(x+i), taking the real line onto the unit circle.
    pub fn cayley_to_line() -> Self {
        Self::new(c(1.0, 0.0), c(0.0, -1.0), c(1.0, 0.0), c(0.0, 1.0)).unwrap()
    }

    pub fn a(&self) -> C64 {
        self.a
    }
    pub fn b(&self) -> C64 {
        self.b
    }
    pub fn c(&self) -> C64 {
        self.c
    }
    pub fn d(&self) -> C64 {
        self.d
    }
    pub fn delta(&self) -> C64 {
        self.delta
    }
    pub fn params(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_affine(&self) -> bool {
        self.c == C64::new(0.0, 0.0)
    }

    /// The finite pole -d/c, if any.
    pub fn pole(&self) -> Option<C64> {
        if self.is_affine() {
            None
        } else {
            Some(-self.d / self.c)
        }
    }

    /// Value at infinity, a/c, if finite.
    pub fn value_at_infinity(&self) -> ExtComplex {
        if self.is_affine() {
            ExtComplex::Infinity
        } else {
            ExtComplex::Finite(self.a / self.c)
        }
    }

    /// The linear factor cx + d.
    pub fn denom(&self, x: C64) -> C64 {
        self.c * x + self.d
    }

    pub fn apply(&self, x: ExtComplex) -> ExtComplex {
        match x {
            ExtComplex::Infinity => self.value_at_infinity(),
            ExtComplex::Finite(x) => {
                let den = self.denom(x);
                if den == C64::new(0.0, 0.0) {
                    ExtComplex::Infinity
                } else {
                    ExtComplex::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// Finite evaluation; fails at the pole.
    pub fn eval(&self, x: C64) -> Result<C64> {
        let den = self.denom(x);
        if den == C64::new(0.0, 0.0) {
            return Err(Error::PoleEvaluation { pole: x });
        }
        Ok((self.a * x + self.b) / den)
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap::new(-self.d, self.b, self.c, -self.a).expect("inverse of a valid map is valid")
    }

    /// self ∘ other, via the parameter matrix product.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (other.a, other.b, other.c, other.d);
        MoebiusMap::new(
            a1 * a2 + b1 * c2,
            a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2,
            c1 * b2 + d1 * d2,
        )
        .expect("product of invertible matrices is invertible")
    }

    /// M'(x) = Δ/(cx+d)².
    pub fn derivative(&self, x: C64) -> Result<C64> {
        let den = self.denom(x);
        if den == C64::new(0.0, 0.0) {
            return Err(Error::PoleEvaluation { pole: x });
        }
        Ok(self.delta / (den * den))
    }

    /// M''(x) = -2cΔ/(cx+d)³.
    pub fn second_derivative(&self, x: C64) -> Result<C64> {
        let den = self.denom(x);
        if den == C64::new(0.0, 0.0) {
            return Err(Error::PoleEvaluation { pole: x });
        }
        Ok(-2.0 * self.c * self.delta / (den * den * den))
    }

    /// True when the map sends the real line to a line (rather than a circle) under its inverse.
    /// Equivalent to: the inverse has its pole at a real point or at infinity.
    pub fn pole_of_inverse_is_real(&self) -> bool {
        match self.value_at_infinity() {
            ExtComplex::Infinity => true,
            ExtComplex::Finite(p) => p.im.abs() <= 1e-14 * p.norm().max(1.0),
        }
    }
}

pub fn cayley_to_circle() -> MoebiusMap {
    MoebiusMap::cayley_to_circle()
}

pub fn cayley_to_line() -> MoebiusMap {
    MoebiusMap::cayley_to_line()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> C64 {
        C64::new(0.0, 1.0)
    }

    #[test]
    fn cayley_delta_and_values() {
        let m = cayley_to_circle();
        assert_eq!(m.delta(), C64::new(0.0, 2.0));
        assert_eq!(m.apply(0.0.into()), ExtComplex::Finite(i()));
        assert_eq!(m.apply(1.0.into()), ExtComplex::Infinity);
    }

    #[test]
    fn degenerate_rejected() {
        assert!(matches!(
            MoebiusMap::from_real(1.0, 2.0, 2.0, 4.0),
            Err(Error::DegenerateMap { .. })
        ));
        assert_eq!(MoebiusMap::identity().delta(), C64::new(1.0, 0.0));
    }

    #[test]
    fn pole_and_infinity() {
        let m = MoebiusMap::from_real(2.0, 1.0, 1.0, 3.0).unwrap();
        assert_eq!(m.apply((-3.0).into()), ExtComplex::Infinity);
        assert_eq!(m.apply(ExtComplex::Infinity), ExtComplex::Finite(C64::new(2.0, 0.0)));
        let w = m.inverse();
        assert_eq!(w.apply(ExtComplex::Infinity), ExtComplex::Finite(C64::new(-3.0, 0.0)));
        assert_eq!(w.apply(ExtComplex::Finite(C64::new(2.0, 0.0))), ExtComplex::Infinity);
        let id = MoebiusMap::identity();
        assert_eq!(id.apply(ExtComplex::Infinity), ExtComplex::Infinity);
        let z = C64::new(3.0, 4.0);
        assert_eq!(id.apply(z.into()), ExtComplex::Finite(z));
    }

    #[test]
    fn inverse_of_inversion_and_cayley() {
        let inv = MoebiusMap::inversion().inverse();
        let z = C64::new(0.3, -1.2);
        assert!((inv.eval(z).unwrap() - 1.0 / z).norm() < 1e-15);
        let w = cayley_to_circle().inverse();
        let target = cayley_to_line();
        for x in [0.1, -2.0, 7.5] {
            let x = C64::new(x, 0.0);
            assert!((w.eval(x).unwrap() - target.eval(x).unwrap()).norm() < 1e-14);
        }
    }

    #[test]
    fn derivatives_by_hand() {
        let inv = MoebiusMap::inversion();
        assert_eq!(inv.derivative(C64::new(2.0, 0.0)).unwrap(), C64::new(-0.25, 0.0));
        assert_eq!(inv.second_derivative(C64::new(1.0, 0.0)).unwrap(), C64::new(2.0, 0.0));
        assert_eq!(MoebiusMap::identity().second_derivative(i()).unwrap(), C64::new(0.0, 0.0));
        assert!(inv.derivative(C64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn map_serde_round_trip() {
        let m = cayley_to_circle();
        let s = serde_json::to_string(&m).unwrap();
        let back: MoebiusMap = serde_json::from_str(&s).unwrap();
        assert_eq!(m, back);
        assert!(serde_json::from_str::<MoebiusMap>("[[1,0],[2,0],[2,0],[4,0]]").is_err());
    }
}
