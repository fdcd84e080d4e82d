//! Composite Gauss-Legendre quadrature on finite, semi-infinite and doubly infinite intervals,
//! and the Gram matrices built on it.

use crate::error::{Error, Result};
use crate::families::{Endpoint, FamilySpec, Interval};
use crate::moebius::{ExtComplex, C64};
use crate::transform::TransformedSequence;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    GaussLegendreComposite,
    MappedSemiInfinite,
    MappedDoublyInfinite,
}

impl SchemeKind {
    pub fn for_interval(iv: &Interval) -> Self {
        match (iv.lower, iv.upper) {
            (Endpoint::Finite(_), Endpoint::Finite(_)) => SchemeKind::GaussLegendreComposite,
            (Endpoint::Finite(_), _) | (_, Endpoint::Finite(_)) => SchemeKind::MappedSemiInfinite,
            _ => SchemeKind::MappedDoublyInfinite,
        }
    }
}

/// Every interval is cut into two pieces, each parameterized by σ ∈ (0, 1] with σ = 0 at an
/// endpoint of the interval. Finite endpoints are approached quadratically in σ. Each piece
/// carries `panels / 2` uniform Gauss-Legendre panels, and the panel touching σ = 0 is further
/// split geometrically `grading_levels` times with ratio `grading_ratio`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureScheme {
    pub nodes: usize,
    pub panels: usize,
    pub grading_levels: usize,
    pub grading_ratio: f64,
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        QuadratureScheme {
            nodes: 64,
            panels: 24,
            grading_levels: 4,
            grading_ratio: 0.25,
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            let dp = n as f64 * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        // recompute the derivative at the converged node
        let (mut p0, mut p1) = (1.0, z);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = if n >= 2 { n as f64 * (z * p1 - p0) / (z * z - 1.0) } else { 1.0 };
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

#[derive(Debug, Clone, Copy)]
enum Piece {
    /// x = end + dir·len·σ²
    Clustered { end: f64, len: f64, dir: f64 },
    /// τ = σ²/2, x = end + dir·τ/(1-τ)
    ClusteredRay { end: f64, dir: f64 },
    /// τ = 1 - σ/2, x = end + dir·τ/(1-τ)
    RayTail { end: f64, dir: f64 },
    /// τ = dir·(1-σ), x = τ/(1-τ²)
    LineTail { dir: f64 },
}

impl Piece {
    /// Node position and |dx/dσ|, kept consistent with the rounded position near finite ends.
    fn map(&self, sigma: f64) -> (f64, f64) {
        match *self {
            Piece::Clustered { end, len, dir } => {
                let x = end + dir * len * sigma * sigma;
                let d = (x - end).abs();
                let s = (d / len).sqrt();
                (x, 2.0 * len * s)
            }
            Piece::ClusteredRay { end, dir } => {
                let tau = 0.5 * sigma * sigma;
                let x = end + dir * tau / (1.0 - tau);
                let d = (x - end).abs();
                let tau = d / (1.0 + d);
                let s = (2.0 * tau).sqrt();
                (x, s / ((1.0 - tau) * (1.0 - tau)))
            }
            Piece::RayTail { end, dir } => {
                let one_minus = 0.5 * sigma;
                let x = end + dir * (1.0 - one_minus) / one_minus;
                (x, 0.5 / (one_minus * one_minus))
            }
            Piece::LineTail { dir } => {
                let tau = dir * (1.0 - sigma);
                let q = sigma * (2.0 - sigma);
                (tau / q, (1.0 + tau * tau) / (q * q))
            }
        }
    }
}

fn pieces(iv: &Interval) -> Vec<Piece> {
    match (iv.lower, iv.upper) {
        (Endpoint::Finite(l), Endpoint::Finite(u)) => {
            let len = 0.5 * (u - l);
            vec![
                Piece::Clustered { end: l, len, dir: 1.0 },
                Piece::Clustered { end: u, len, dir: -1.0 },
            ]
        }
        (Endpoint::Finite(l), _) => vec![
            Piece::ClusteredRay { end: l, dir: 1.0 },
            Piece::RayTail { end: l, dir: 1.0 },
        ],
        (_, Endpoint::Finite(u)) => vec![
            Piece::ClusteredRay { end: u, dir: -1.0 },
            Piece::RayTail { end: u, dir: -1.0 },
        ],
        _ => vec![Piece::LineTail { dir: -1.0 }, Piece::LineTail { dir: 1.0 }],
    }
}

impl QuadratureScheme {
    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_panels(mut self, panels: usize) -> Self {
        self.panels = panels;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes == 0 || self.panels < 2 || !(self.grading_ratio > 0.0 && self.grading_ratio < 1.0) {
            return Err(Error::InvalidArgument(format!("bad quadrature scheme {self:?}")));
        }
        Ok(())
    }

    /// Composite rule on σ ∈ (0, 1), graded toward σ = 0.
    pub fn unit_rule(&self) -> Vec<(f64, f64)> {
        let (gx, gw) = gauss_legendre(self.nodes);
        let per_piece = (self.panels / 2).max(1);
        let h = 1.0 / per_piece as f64;
        let mut cuts = vec![0.0];
        let mut g = h * self.grading_ratio.powi(self.grading_levels as i32);
        for _ in 0..self.grading_levels {
            cuts.push(g);
            g /= self.grading_ratio;
        }
        for k in 1..=per_piece {
            cuts.push(k as f64 * h);
        }
        let mut out = Vec::with_capacity((cuts.len() - 1) * self.nodes);
        for win in cuts.windows(2) {
            let (a, b) = (win[0], win[1]);
            let half = 0.5 * (b - a);
            for (x, w) in gx.iter().zip(&gw) {
                out.push((a + half * (1.0 + x), half * w));
            }
        }
        out
    }

    /// Nodes and weights for ∫ f(x) dx over the interval.
    pub fn nodes_for(&self, iv: &Interval) -> Vec<(f64, f64)> {
        let unit = self.unit_rule();
        let mut out = Vec::with_capacity(2 * unit.len());
        for piece in pieces(iv) {
            for &(s, w) in &unit {
                let (x, jac) = piece.map(s);
                out.push((x, w * jac));
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }

    pub fn kind_for(&self, iv: &Interval) -> SchemeKind {
        SchemeKind::for_interval(iv)
    }
}

/// ∫_l^r f(x) dx.
pub fn integrate_real<F>(f: F, iv: &Interval, scheme: &QuadratureScheme) -> Result<C64>
where
    F: Fn(f64) -> Result<C64>,
{
    scheme.validate()?;
    let mut acc = C64::new(0.0, 0.0);
    for (x, w) in scheme.nodes_for(iv) {
        let v = f(x)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFiniteIntegrand { node: x });
        }
        acc += v * w;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramReport {
    pub matrix: Vec<Vec<C64>>,
    pub expected: Vec<C64>,
    /// max |G_mn| / sqrt(|G_mm| |G_nn|) over m ≠ n
    pub max_offdiag: f64,
    /// max |G_nn - K_n| / |K_n|
    pub max_diag_error: f64,
    pub nodes_used: usize,
}

impl GramReport {
    fn assemble(values: &[Vec<C64>], weights: &[C64], expected: Vec<C64>) -> Self {
        let dim = expected.len();
        let mut matrix = vec![vec![C64::new(0.0, 0.0); dim]; dim];
        for (vals, &w) in values.iter().zip(weights) {
            for m in 0..dim {
                let left = vals[m] * w;
                for n in m..dim {
                    matrix[m][n] += left * vals[n];
                }
            }
        }
        for m in 0..dim {
            for n in 0..m {
                matrix[m][n] = matrix[n][m];
            }
        }
        Self::from_matrix(matrix, expected, weights.len())
    }

    pub fn from_matrix(matrix: Vec<Vec<C64>>, expected: Vec<C64>, nodes_used: usize) -> Self {
        let dim = expected.len();
        let mut max_offdiag: f64 = 0.0;
        let mut max_diag_error: f64 = 0.0;
        for m in 0..dim {
            max_diag_error = max_diag_error.max((matrix[m][m] - expected[m]).norm() / expected[m].norm());
            for n in 0..dim {
                if m != n {
                    let gm = (matrix[m][m].norm() * matrix[n][n].norm()).sqrt();
                    max_offdiag = max_offdiag.max(matrix[m][n].norm() / gm);
                }
            }
        }
        GramReport {
            matrix,
            expected,
            max_offdiag,
            max_diag_error,
            nodes_used,
        }
    }

    pub fn dim(&self) -> usize {
        self.expected.len()
    }

    /// Largest entrywise difference relative to the diagonal scale of both reports.
    pub fn distance(&self, other: &GramReport) -> f64 {
        let dim = self.dim().min(other.dim());
        let mut worst: f64 = 0.0;
        for m in 0..dim {
            for n in 0..dim {
                let scale = (self.matrix[m][m].norm() * self.matrix[n][n].norm()).sqrt();
                worst = worst.max((self.matrix[m][n] - other.matrix[m][n]).norm() / scale);
            }
        }
        worst
    }
}

fn check_finite(v: C64, node: f64) -> Result<C64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { node })
    }
}

/// ∫ P_m P_n w over (l, r) for m, n ≤ N.
pub fn gram_classical(fam: &FamilySpec, n_max: usize, scheme: &QuadratureScheme) -> Result<GramReport> {
    scheme.validate()?;
    let polys = fam.generate_all(n_max);
    let w = fam.weight();
    let mut values = Vec::new();
    let mut weights = Vec::new();
    for (x, qw) in scheme.nodes_for(&fam.interval()) {
        let xc = C64::new(x, 0.0);
        values.push(polys.iter().map(|p| p.eval(xc)).collect::<Vec<_>>());
        weights.push(check_finite(w.eval(xc)? * qw, x)?);
    }
    let expected = (0..=n_max).map(|n| fam.norm(n)).collect::<Result<Vec<_>>>()?;
    Ok(GramReport::assemble(&values, &weights, expected))
}

/// ∫_Γ Q_m Q_n ω_{m,n} dz through z = W(t), t ∈ (l, r).
pub fn gram_transformed_pullback(
    seq: &TransformedSequence,
    n_max: usize,
    scheme: &QuadratureScheme,
) -> Result<GramReport> {
    scheme.validate()?;
    let map = *seq.map();
    let w_map = map.inverse();
    let iv = seq.family().interval();
    let pole = match map.value_at_infinity() {
        ExtComplex::Finite(p) if p.im == 0.0 => Some(p.re),
        _ => None,
    };
    let band = 1e-8 * iv.span();
    let mut values = Vec::new();
    let mut weights = Vec::new();
    for (mut t, qw) in scheme.nodes_for(&iv) {
        if let Some(p) = pole {
            if (t - p).abs() < band {
                t = if t < p { p - band } else { p + band };
            }
        }
        let tc = C64::new(t, 0.0);
        let z = w_map.eval(tc)?;
        let u = map.denom(z);
        let row = (0..=n_max)
            .map(|k| seq.eval_q(k, z) / u.powi(k as i32))
            .collect::<Vec<_>>();
        let jac = w_map.derivative(tc)?;
        let wt = check_finite(seq.weight(z)? * jac * qw, t)?;
        for v in &row {
            check_finite(*v * wt, t)?;
        }
        values.push(row);
        weights.push(wt);
    }
    let expected = (0..=n_max).map(|n| seq.family().norm(n)).collect::<Result<Vec<_>>>()?;
    Ok(GramReport::assemble(&values, &weights, expected))
}

/// The same integrals along an explicit geometric parameterization of Γ.
pub fn gram_transformed_contour(
    seq: &TransformedSequence,
    n_max: usize,
    scheme: &QuadratureScheme,
) -> Result<GramReport> {
    scheme.validate()?;
    let contour = seq.contour();
    if !contour.is_bounded_connected() {
        return Err(Error::UnsupportedContour(contour.kind.label().to_string()));
    }
    let map = *seq.map();
    let mut values = Vec::new();
    let mut weights = Vec::new();
    for (s, qw) in scheme.nodes_for(&Interval::finite(0.0, 1.0)) {
        let (z, dz) = contour.geometric_point(s)?;
        let u = map.denom(z);
        let row = (0..=n_max)
            .map(|k| seq.eval_q(k, z) / u.powi(k as i32))
            .collect::<Vec<_>>();
        let wt = check_finite(seq.weight(z)? * dz * qw, s)?;
        for v in &row {
            check_finite(*v * wt, s)?;
        }
        values.push(row);
        weights.push(wt);
    }
    let expected = (0..=n_max).map(|n| seq.family().norm(n)).collect::<Result<Vec<_>>>()?;
    Ok(GramReport::assemble(&values, &weights, expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_exactness() {
        for n in [1, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre(n);
            for k in 0..2 * n {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13 * exact.abs().max(1.0), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn known_integrals() {
        let s = QuadratureScheme::default();
        let v = integrate_real(|x| Ok(C64::new((-x).exp(), 0.0)), &Interval::half_line(0.0), &s).unwrap();
        assert!((v.re - 1.0).abs() < 1e-10);
        let cheb = integrate_real(
            |x| {
                let t2 = 2.0 * x * x - 1.0;
                Ok(C64::new(t2 * t2 / (1.0 - x * x).sqrt(), 0.0))
            },
            &Interval::finite(-1.0, 1.0),
            &s,
        )
        .unwrap();
        assert!((cheb.re - PI / 2.0).abs() < 1e-9 * PI, "{}", cheb.re - PI / 2.0);
        let herm = integrate_real(
            |x| Ok(C64::new(4.0 * x * x * (-x * x).exp(), 0.0)),
            &Interval::real_line(),
            &s,
        )
        .unwrap();
        assert!((herm.re - 2.0 * PI.sqrt()).abs() < 1e-9);
    }
}
