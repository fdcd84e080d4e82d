//! Bessel and Romanovski constructions, limit checks, and the gamma function.

pub mod bessel;
pub mod gamma;
pub mod limits;
pub mod romanovski;

pub use bessel::*;
pub use gamma::{complex_gamma, complex_log_gamma, gamma};
pub use limits::*;
pub use romanovski::*;
