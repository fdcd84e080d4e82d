use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate map: ad - bc = {delta} is zero within tolerance")]
    DegenerateMap { delta: Complex64 },
    #[error("evaluation at the pole x = {pole}")]
    PoleEvaluation { pole: Complex64 },
    #[error("homogenization degree {n_formal} is below polynomial degree {degree}")]
    BadHomogenization { n_formal: usize, degree: usize },
    #[error("series has zero constant term and cannot be inverted")]
    NonInvertibleSeries,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("inadmissible parameters: {0}")]
    InadmissibleParameters(String),
    #[error("two-point identity evaluated at coincident points")]
    CoincidentPoints,
    #[error("evaluation point {point} lies on a branch cut of the weight")]
    BranchConflict { point: Complex64 },
    #[error("integrand is not finite at node {node}")]
    NonFiniteIntegrand { node: f64 },
    #[error("direct contour route not available for {0} contours")]
    UnsupportedContour(String),
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("gamma function pole at {0}")]
    PoleAtNonpositiveInteger(Complex64),
    #[error("constant term vanishes, cannot normalize")]
    NormalizationImpossible,
    #[error("coefficients carry imaginary residue {max_imag:e}")]
    NonRealCoefficients { max_imag: f64 },
    #[error("recurrence and direct construction disagree at n = {n} (relative error {error:e})")]
    DualConstructionMismatch { n: usize, error: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
