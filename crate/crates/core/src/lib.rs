//! Möbius-transformed orthogonal polynomial sequences.
//!
//! A classical family P_n with weight w on (l, r) and a Möbius map M(x) = (ax+b)/(cx+d)
//! give the polynomials Q_n(x) = (cx+d)^n P_n(M(x)), orthogonal on Γ = W((l, r)) with the
//! index-dependent weight ω(x)/(cx+d)^{m+n}. The modules build these objects and check
//! their identities numerically.

pub mod applications;
pub mod calculus;
pub mod cli;
pub mod error;
pub mod families;
pub mod moebius;
pub mod polynomial;
pub mod quadrature;
pub mod residual;
pub mod transform;
pub mod zeros;

pub use error::{Error, Result};
pub use families::{FamilyKind, FamilySpec, Interval};
pub use moebius::{ExtComplex, MoebiusMap, C64};
pub use polynomial::ComplexPoly;
pub use residual::{CheckStatus, Residual};
pub use transform::{ContourKind, ContourSpec, TransformedSequence};
