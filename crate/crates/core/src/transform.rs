//! Moebius-transformed sequences Q_n(x) = (cx+d)^n P_n(M(x)) and their structure.

use crate::error::{Error, Result};
use crate::families::{Endpoint, FamilySpec, Interval};
use crate::moebius::{ExtComplex, MoebiusMap, C64};
use crate::polynomial::{moebius_transform, ComplexPoly};
use crate::residual::Residual;
use std::f64::consts::PI;

const TRIM_ENVELOPE: f64 = 1e-13;

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn abs_poly(p: &ComplexPoly) -> ComplexPoly {
    ComplexPoly::new_untrimmed(p.abs_coeffs().into_iter().map(r).collect())
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

#[derive(Debug, Clone)]
pub struct TransformedSequence {
    fam: FamilySpec,
    map: MoebiusMap,
    q: Vec<ComplexPoly>,
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Compare every Q_n with the direct composition of P_n.
    pub verify: bool,
    pub tolerance: f64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            verify: true,
            tolerance: 1e-11,
        }
    }
}

/// Recurrence-built Q_0..Q_N.
pub fn build(fam: &FamilySpec, map: &MoebiusMap, n_max: usize) -> Result<TransformedSequence> {
    TransformedSequence::build_with(fam, map, n_max, BuildOptions::default())
}

impl TransformedSequence {
    pub fn build(fam: &FamilySpec, map: &MoebiusMap, n_max: usize) -> Result<Self> {
        Self::build_with(fam, map, n_max, BuildOptions::default())
    }

    pub fn build_with(fam: &FamilySpec, map: &MoebiusMap, n_max: usize, opts: BuildOptions) -> Result<Self> {
        let (a, b, c, d) = (map.a(), map.b(), map.c(), map.d());
        let u2 = ComplexPoly::linear(c, d).pow(2);
        let mut q = vec![ComplexPoly::one()];
        let mut prev = ComplexPoly::zero();
        // Envelopes of |Q_{n-1}| and |Q_{n-2}| in absolute-value arithmetic.
        let u2_abs = abs_poly(&u2);
        let mut env_cur = ComplexPoly::one();
        let mut env_prev = ComplexPoly::zero();
        for n in 1..=n_max {
            let (an, bn, cn) = fam.recurrence(n);
            let alpha = a * an - c * bn;
            let beta = d * bn - b * an;
            let cur = &q[n - 1];
            let next = &(&ComplexPoly::linear(alpha, -beta) * cur) - &(&u2 * &prev).scale(cn);
            let env_next = &(&ComplexPoly::linear(r(alpha.norm()), r(beta.norm())) * &env_cur)
                + &(&u2_abs * &env_prev).scale(r(cn.norm()));
            prev = cur.clone();
            q.push(next.trimmed_against(&env_next.abs_coeffs(), TRIM_ENVELOPE));
            env_prev = std::mem::replace(&mut env_cur, env_next);
        }
        let seq = TransformedSequence { fam: *fam, map: *map, q };
        if opts.verify {
            for n in 0..=n_max {
                let err = seq.dual_construction_error(n)?;
                if !(err <= opts.tolerance) {
                    return Err(Error::DualConstructionMismatch { n, error: err });
                }
            }
        }
        Ok(seq)
    }

    /// Relative coefficient distance between the recurrence-built Q_n and the composition of P_n.
    pub fn dual_construction_error(&self, n: usize) -> Result<f64> {
        let direct = moebius_transform(&self.fam.generate(n), &self.map, n)?;
        Ok(self.q[n].relative_distance(&direct))
    }

    pub fn family(&self) -> &FamilySpec {
        &self.fam
    }

    pub fn map(&self) -> &MoebiusMap {
        &self.map
    }

    pub fn n_max(&self) -> usize {
        self.q.len() - 1
    }

    pub fn q(&self, n: usize) -> &ComplexPoly {
        &self.q[n]
    }

    pub fn polys(&self) -> &[ComplexPoly] {
        &self.q
    }

    pub fn eval_q(&self, n: usize, x: C64) -> C64 {
        self.q[n].eval(x)
    }

    /// Q_n(x) and Q_n'(x) evaluated through the three-term recurrence, which stays accurate
    /// near clustered roots where the coefficient form cancels.
    pub fn eval_q_recurrence(&self, n: usize, x: C64) -> (C64, C64) {
        let (a, b, c, d) = (self.map.a(), self.map.b(), self.map.c(), self.map.d());
        let u = c * x + d;
        let (mut p0, mut d0) = (zero(), zero());
        let (mut p1, mut d1) = (r(1.0), zero());
        for k in 1..=n {
            let (ak, bk, ck) = self.fam.recurrence(k);
            let lin = (a * ak - c * bk) * x - (d * bk - b * ak);
            let slope = a * ak - c * bk;
            let p2 = lin * p1 - ck * u * u * p0;
            let d2 = slope * p1 + lin * d1 - ck * (2.0 * c * u * p0 + u * u * d0);
            (p0, d0, p1, d1) = (p1, d1, p2, d2);
        }
        (p1, d1)
    }

    /// R_n(x) = Q_n(x)/(cx+d)^n
    pub fn eval_r(&self, n: usize, x: C64) -> Result<C64> {
        let u = self.map.denom(x);
        if u == zero() {
            return Err(Error::PoleEvaluation { pole: x });
        }
        Ok(self.q[n].eval(x) / u.powi(n as i32))
    }

    /// ω(x) = Δ w(M(x))/(cx+d)².
    pub fn weight(&self, x: C64) -> Result<C64> {
        let u = self.map.denom(x);
        if u == zero() {
            return Err(Error::PoleEvaluation { pole: x });
        }
        let t = self.map.eval(x)?;
        Ok(self.map.delta() * self.fam.weight().eval(t)? / (u * u))
    }

    /// ω_{m,n}(x) = ω(x)/(cx+d)^{m+n}, with sequence indices m, n.
    pub fn varying_weight(&self, m: usize, n: usize, x: C64) -> Result<C64> {
        let u = self.map.denom(x);
        Ok(self.weight(x)? / u.powi((m + n) as i32))
    }

    pub fn contour(&self) -> ContourSpec {
        ContourSpec::new(&self.map, self.fam.interval())
    }

    /// Φ(x) = (cx+d)² f(M(x)) and Γ̃(x) = (cx+d) g(M(x)).
    pub fn helper_polys(&self) -> (ComplexPoly, ComplexPoly) {
        let phi = moebius_transform(&self.fam.ode_f(), &self.map, 2).expect("deg f ≤ 2");
        let gam = moebius_transform(&self.fam.ode_g(), &self.map, 1).expect("deg g ≤ 1");
        (phi, gam)
    }

    /// (ℱ, 𝒢_n, ℋ_n) with ℱ Q_n'' + 𝒢_n Q_n' + ℋ_n Q_n = 0.
    pub fn transformed_ode_coeffs(&self, n: usize) -> (ComplexPoly, ComplexPoly, ComplexPoly) {
        let (phi, gam) = self.helper_polys();
        let (c, delta) = (self.map.c(), self.map.delta());
        let u = ComplexPoly::linear(c, self.map.d());
        let nf = n as f64;
        let d2 = delta * delta;
        let f = (&(&u * &u) * &phi).scale(1.0 / d2);
        let g = &(&u * &phi).scale(-2.0 * c * (nf - 1.0) / d2) + &(&u * &gam).scale(1.0 / delta);
        let h = &(&phi.scale(c * c * nf * (nf - 1.0) / d2) - &gam.scale(c * nf / delta))
            + &ComplexPoly::constant(self.fam.ode_h(n));
        (ComplexPoly::new(f.coeffs().to_vec()), ComplexPoly::new(g.coeffs().to_vec()), ComplexPoly::new(h.coeffs().to_vec()))
    }

    /// (F, G, H) with F R_n'' + G R_n' + H R_n = 0; H is the constant h_n.
    pub fn transformed_ode_coeffs_rational(&self, n: usize) -> (ComplexPoly, ComplexPoly, C64) {
        let (phi, gam) = self.helper_polys();
        let (c, delta) = (self.map.c(), self.map.delta());
        let u = ComplexPoly::linear(c, self.map.d());
        let d2 = delta * delta;
        let f = (&(&u * &u) * &phi).scale(1.0 / d2);
        let g = &(&u * &phi).scale(2.0 * c / d2) + &(&u * &gam).scale(1.0 / delta);
        (f, g, self.fam.ode_h(n))
    }

    pub fn ode_residual(&self, n: usize, x: C64) -> Residual {
        let (f, g, h) = self.transformed_ode_coeffs(n);
        let q = &self.q[n];
        let (d1, d2) = (q.derivative(), q.derivative().derivative());
        let sum = f.eval(x) * d2.eval(x) + g.eval(x) * d1.eval(x) + h.eval(x) * q.eval(x);
        let scale = f.eval_abs(x) * d2.eval_abs(x) + g.eval_abs(x) * d1.eval_abs(x) + h.eval_abs(x) * q.eval_abs(x);
        Residual::new(sum, zero(), scale)
    }

    /// Residual of the R_n equation, with R_n and its derivatives evaluated through Q_n.
    pub fn ode_residual_rational(&self, n: usize, x: C64) -> Result<Residual> {
        let (f, g, h) = self.transformed_ode_coeffs_rational(n);
        let (r0, r1, r2) = self.r_derivatives(n, x)?;
        let terms = [f.eval(x) * r2, g.eval(x) * r1, h * r0];
        let scale = terms.iter().map(|t| t.norm()).sum();
        Ok(Residual::new(terms.iter().sum(), zero(), scale))
    }

    /// R_n, R_n', R_n'' at x from Q_n = u^n R_n.
    pub fn r_derivatives(&self, n: usize, x: C64) -> Result<(C64, C64, C64)> {
        let u = self.map.denom(x);
        if u == zero() {
            return Err(Error::PoleEvaluation { pole: x });
        }
        let c = self.map.c();
        let q = &self.q[n];
        let (q0, q1, q2) = (q.eval(x), q.derivative().eval(x), q.derivative().derivative().eval(x));
        let nf = n as f64;
        let un = u.powi(n as i32);
        let r0 = q0 / un;
        let r1 = q1 / un - nf * c * q0 / (un * u);
        let r2 = q2 / un - 2.0 * nf * c * q1 / (un * u) + nf * (nf + 1.0) * c * c * q0 / (un * u * u);
        Ok((r0, r1, r2))
    }

    fn check_points(&self, xs: &[C64]) -> Result<()> {
        for &x in xs {
            if self.map.denom(x) == zero() {
                return Err(Error::PoleEvaluation { pole: x });
            }
        }
        Ok(())
    }

    fn cd_sum(&self, n: usize, x: C64, y: C64) -> Result<(C64, f64, Vec<C64>)> {
        if n + 1 > self.n_max() {
            return Err(Error::InvalidArgument(format!("need Q_{} but built up to {}", n + 1, self.n_max())));
        }
        let prods = self.fam.cd_products(n)?;
        let mut lhs = zero();
        let mut scale = 0.0;
        for k in 0..=n {
            let term = self.fam.recurrence(k + 1).0 / prods[k] * self.eval_r(k, x)? * self.eval_r(k, y)?;
            lhs += term;
            scale += term.norm();
        }
        Ok((lhs, scale, prods))
    }

    /// Two-point kernel identity for Q_n.
    pub fn cd_residual(&self, n: usize, x: C64, y: C64) -> Result<Residual> {
        if x == y {
            return Err(Error::CoincidentPoints);
        }
        self.check_points(&[x, y])?;
        let (lhs, scale, prods) = self.cd_sum(n, x, y)?;
        let (ux, uy) = (self.map.denom(x), self.map.denom(y));
        let ni = n as i32;
        let num = self.eval_q(n + 1, x) * self.eval_q(n, y) * uy - ux * self.eval_q(n, x) * self.eval_q(n + 1, y);
        let rhs = num / (self.map.delta() * prods[n] * ux.powi(ni) * uy.powi(ni) * (x - y));
        Ok(Residual::new(lhs, rhs, scale))
    }

    /// Two-point kernel identity for R_n.
    pub fn cd_residual_rational(&self, n: usize, x: C64, y: C64) -> Result<Residual> {
        if x == y {
            return Err(Error::CoincidentPoints);
        }
        self.check_points(&[x, y])?;
        let (lhs, scale, prods) = self.cd_sum(n, x, y)?;
        let (ux, uy) = (self.map.denom(x), self.map.denom(y));
        let num = self.eval_r(n + 1, x)? * self.eval_r(n, y)? - self.eval_r(n, x)? * self.eval_r(n + 1, y)?;
        let rhs = ux * uy * num / (self.map.delta() * prods[n] * (x - y));
        Ok(Residual::new(lhs, rhs, scale))
    }

    /// Confluent identity for Q_n:
    /// Σ ... = [u (Q_{n+1}' Q_n - Q_n' Q_{n+1}) - c Q_{n+1} Q_n] / (Δ C_0···C_{n+1} u^{2n}).
    pub fn cd_confluent_residual(&self, n: usize, x: C64) -> Result<Residual> {
        self.check_points(&[x])?;
        let (lhs, scale, prods) = self.cd_sum(n, x, x)?;
        let u = self.map.denom(x);
        let (q0, q1) = (&self.q[n], &self.q[n + 1]);
        let wr = q1.derivative().eval(x) * q0.eval(x) - q0.derivative().eval(x) * q1.eval(x);
        let num = u * wr - self.map.c() * q1.eval(x) * q0.eval(x);
        let rhs = num / (self.map.delta() * prods[n] * u.powi(2 * n as i32));
        Ok(Residual::new(lhs, rhs, scale))
    }

    /// The confluent right-hand side with the c Q_{n+1} Q_n term divided by u^{2n-1}
    /// instead of u^{2n}; kept to document that this arrangement does not hold when c ≠ 0.
    pub fn cd_confluent_residual_unbalanced(&self, n: usize, x: C64) -> Result<Residual> {
        self.check_points(&[x])?;
        let (lhs, scale, prods) = self.cd_sum(n, x, x)?;
        let u = self.map.denom(x);
        let (q0, q1) = (&self.q[n], &self.q[n + 1]);
        let wr = q1.derivative().eval(x) * q0.eval(x) - q0.derivative().eval(x) * q1.eval(x);
        let num = wr - self.map.c() * q1.eval(x) * q0.eval(x);
        let rhs = num / (self.map.delta() * prods[n] * u.powi(2 * n as i32 - 1));
        Ok(Residual::new(lhs, rhs, scale))
    }

    /// Confluent identity for R_n.
    pub fn cd_confluent_residual_rational(&self, n: usize, x: C64) -> Result<Residual> {
        self.check_points(&[x])?;
        let (lhs, scale, prods) = self.cd_sum(n, x, x)?;
        let u = self.map.denom(x);
        let (r0, r0p, _) = self.r_derivatives(n, x)?;
        let (r1, r1p, _) = self.r_derivatives(n + 1, x)?;
        let rhs = u * u * (r1p * r0 - r0p * r1) / (self.map.delta() * prods[n]);
        Ok(Residual::new(lhs, rhs, scale))
    }

    /// ω_{m,n}'/ω_{m,n} from the chain rule through the classical weight.
    pub fn varying_weight_log_derivative(&self, m: usize, n: usize, x: C64) -> Result<C64> {
        let u = self.map.denom(x);
        if u == zero() {
            return Err(Error::PoleEvaluation { pole: x });
        }
        let t = self.map.eval(x)?;
        let dm = self.map.derivative(x)?;
        let w = self.fam.weight();
        Ok(w.log_derivative(t) * dm - ((m + n + 2) as f64) * self.map.c() / u)
    }

    /// ω_{m,n}'/ω_{m,n} - [½(𝒢_m + 𝒢_n) - ℱ']/ℱ.
    pub fn pearson_residual(&self, m: usize, n: usize, x: C64) -> Result<Residual> {
        let lhs = self.varying_weight_log_derivative(m, n, x)?;
        let (f, gm, _) = self.transformed_ode_coeffs(m);
        let (_, gn, _) = self.transformed_ode_coeffs(n);
        let fx = f.eval(x);
        let rhs = (0.5 * (gm.eval(x) + gn.eval(x)) - f.derivative().eval(x)) / fx;
        let scale = (0.5 * (gm.eval_abs(x) + gn.eval_abs(x)) + f.derivative().eval_abs(x)) / fx.norm();
        Ok(Residual::new(lhs, rhs, scale))
    }

    /// ω'/ω - (G - F')/F with the rational-form coefficients.
    pub fn pearson_residual_rational(&self, x: C64) -> Result<Residual> {
        let lhs = self.varying_weight_log_derivative(0, 0, x)?;
        let (f, g, _) = self.transformed_ode_coeffs_rational(0);
        let fx = f.eval(x);
        let rhs = (g.eval(x) - f.derivative().eval(x)) / fx;
        let scale = (g.eval_abs(x) + f.derivative().eval_abs(x)) / fx.norm();
        Ok(Residual::new(lhs, rhs, scale))
    }
}

/// Removes a common factor x^k shared by all three ODE coefficients.
pub fn reduce_common_power_of_x(
    polys: &[ComplexPoly],
    tol: f64,
) -> (usize, Vec<ComplexPoly>) {
    let scale = polys.iter().map(|p| p.max_abs()).fold(0.0, f64::max);
    let vanishes = |p: &ComplexPoly, k: usize| (0..k).all(|j| p.coeff(j).norm() <= tol * scale);
    let mut k = 0;
    while polys.iter().all(|p| p.is_zero() || (vanishes(p, k + 1) && p.degree() > k as isize)) {
        k += 1;
    }
    let out = polys
        .iter()
        .map(|p| ComplexPoly::new(p.coeffs().iter().skip(k).copied().collect()))
        .collect();
    (k, out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourKind {
    Segment { start: C64, end: C64 },
    CircularArc { center: C64, radius: f64, start_angle: f64, sweep: f64 },
    FullCircle { center: C64, radius: f64, start_angle: f64, sweep: f64 },
    FullLine,
    /// Passes through ∞; disconnected in ℂ when the pole of W is interior.
    ThroughInfinity { disconnected: bool },
}

impl ContourKind {
    pub fn label(&self) -> &'static str {
        match self {
            ContourKind::Segment { .. } => "segment",
            ContourKind::CircularArc { .. } => "circular-arc",
            ContourKind::FullCircle { .. } => "full-circle",
            ContourKind::FullLine => "full-line",
            ContourKind::ThroughInfinity { disconnected: true } => "line-through-infinity",
            ContourKind::ThroughInfinity { disconnected: false } => "ray-through-infinity",
        }
    }
}

/// Γ = W((l, r)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub kind: ContourKind,
    pub lambda: ExtComplex,
    pub rho: ExtComplex,
    pub interval: Interval,
    map: MoebiusMap,
}

fn endpoint_ext(e: Endpoint) -> ExtComplex {
    match e {
        Endpoint::Finite(x) => ExtComplex::Finite(C64::new(x, 0.0)),
        _ => ExtComplex::Infinity,
    }
}

fn circumcenter(a: C64, b: C64, c: C64) -> Option<(C64, f64)> {
    let d = 2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im));
    if d.abs() < 1e-300 {
        return None;
    }
    let (a2, b2, c2) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr());
    let ux = (a2 * (b.im - c.im) + b2 * (c.im - a.im) + c2 * (a.im - b.im)) / d;
    let uy = (a2 * (c.re - b.re) + b2 * (a.re - c.re) + c2 * (b.re - a.re)) / d;
    let center = C64::new(ux, uy);
    Some((center, (a - center).norm()))
}

fn ccw_offset(from: f64, to: f64) -> f64 {
    (to - from).rem_euclid(2.0 * PI)
}

impl ContourSpec {
    pub fn new(map: &MoebiusMap, interval: Interval) -> Self {
        let w = map.inverse();
        let lambda = w.apply(endpoint_ext(interval.lower));
        let rho = w.apply(endpoint_ext(interval.upper));
        // W has its pole at a/c (or at ∞ when c = 0).
        let pole = map.value_at_infinity();
        let image_is_line = map.pole_of_inverse_is_real();
        let pole_real = match pole {
            ExtComplex::Finite(p) if image_is_line => Some(p.re),
            _ => None,
        };
        let kind = if interval.is_real_line() {
            if image_is_line {
                ContourKind::FullLine
            } else {
                Self::fit_circle(&w, interval, true)
            }
        } else if pole_real.is_some_and(|p| interval.contains(p)) {
            ContourKind::ThroughInfinity { disconnected: true }
        } else if lambda.is_infinite() || rho.is_infinite() {
            ContourKind::ThroughInfinity { disconnected: false }
        } else if image_is_line {
            ContourKind::Segment {
                start: lambda.finite().unwrap(),
                end: rho.finite().unwrap(),
            }
        } else {
            Self::fit_circle(&w, interval, false)
        };
        ContourSpec { kind, lambda, rho, interval, map: *map }
    }

    fn fit_circle(w: &MoebiusMap, interval: Interval, full: bool) -> ContourKind {
        let s = [0.25, 0.5, 0.75].map(|u| w.eval(C64::new(interval.from_unit(u), 0.0)).unwrap());
        let (center, radius) = circumcenter(s[0], s[1], s[2]).expect("three distinct points on a circle");
        let angle = |z: C64| (z - center).arg();
        let start_pt = w
            .apply(endpoint_ext(interval.lower))
            .finite()
            .expect("circle image stays finite");
        let start_angle = angle(start_pt);
        let ccw = ccw_offset(start_angle, angle(s[0])) < ccw_offset(start_angle, angle(s[2]));
        if full {
            let sweep = if ccw { 2.0 * PI } else { -2.0 * PI };
            return ContourKind::FullCircle { center, radius, start_angle, sweep };
        }
        let end_pt = w.apply(endpoint_ext(interval.upper)).finite().expect("circle image stays finite");
        let span = ccw_offset(start_angle, angle(end_pt));
        let sweep = if ccw { span } else { span - 2.0 * PI };
        ContourKind::CircularArc { center, radius, start_angle, sweep }
    }

    pub fn is_bounded_connected(&self) -> bool {
        matches!(
            self.kind,
            ContourKind::Segment { .. } | ContourKind::CircularArc { .. } | ContourKind::FullCircle { .. }
        )
    }

    /// z(s) and z'(s) for s ∈ [0, 1] along the geometric parameterization.
    pub fn geometric_point(&self, s: f64) -> Result<(C64, C64)> {
        match self.kind {
            ContourKind::Segment { start, end } => Ok((start + (end - start) * s, end - start)),
            ContourKind::CircularArc { center, radius, start_angle, sweep }
            | ContourKind::FullCircle { center, radius, start_angle, sweep } => {
                let th = start_angle + sweep * s;
                let e = C64::from_polar(radius, th);
                Ok((center + e, C64::new(0.0, sweep) * e))
            }
            _ => Err(Error::UnsupportedContour(self.kind.label().to_string())),
        }
    }

    /// W(t)
    pub fn pullback_point(&self, t: f64) -> ExtComplex {
        self.map.inverse().apply(ExtComplex::Finite(C64::new(t, 0.0)))
    }

    /// Pullback parameter t = M(z) of a point; on Γ exactly when t is real and inside (l, r).
    pub fn pullback_parameter(&self, z: C64) -> ExtComplex {
        self.map.apply(ExtComplex::Finite(z))
    }

    /// Distance-like measure of how far z is from Γ.
    pub fn distance(&self, z: C64) -> f64 {
        match self.kind {
            ContourKind::Segment { start, end } => {
                let d = end - start;
                let s = ((z - start) * d.conj()).re / d.norm_sqr();
                let s = s.clamp(0.0, 1.0);
                (z - (start + d * s)).norm()
            }
            ContourKind::CircularArc { center, radius, .. } | ContourKind::FullCircle { center, radius, .. } => {
                let radial = ((z - center).norm() - radius).abs();
                radial.max(self.parameter_defect(z))
            }
            _ => self.parameter_defect(z),
        }
    }

    /// |Im t| plus how far Re t falls outside (l, r), with t = M(z).
    pub fn parameter_defect(&self, z: C64) -> f64 {
        match self.pullback_parameter(z) {
            ExtComplex::Infinity => {
                if self.lambda.is_infinite() || self.rho.is_infinite() {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            ExtComplex::Finite(t) => {
                let mut d = t.im.abs();
                if let Endpoint::Finite(l) = self.interval.lower {
                    d = d.max(l - t.re);
                }
                if let Endpoint::Finite(u) = self.interval.upper {
                    d = d.max(t.re - u);
                }
                d.max(0.0)
            }
        }
    }
}
