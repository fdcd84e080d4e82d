//! Polynomial roots by Aberth-Ehrlich iteration, and the location of zeros of Q_n.

use crate::error::{Error, Result};
use crate::moebius::{ExtComplex, C64};
use crate::polynomial::ComplexPoly;
use crate::transform::TransformedSequence;
use serde::Serialize;
use std::f64::consts::PI;

const MAX_ITER: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<C64>,
    /// |p(z)| / Σ|p_k||z|^k per root
    pub backward_errors: Vec<f64>,
}

fn root_radius(p: &ComplexPoly) -> f64 {
    // Fujiwara's bound
    let n = p.degree() as usize;
    let lead = p.leading().norm();
    let mut r: f64 = 0.0;
    for k in 1..=n {
        let c = p.coeff(n - k).norm() / lead;
        let c = if k == n { c / 2.0 } else { c };
        r = r.max(c.powf(1.0 / k as f64));
    }
    (2.0 * r).max(f64::MIN_POSITIVE)
}

fn backward_error(p: &ComplexPoly, z: C64) -> f64 {
    let s = p.eval_abs(z);
    if s == 0.0 {
        0.0
    } else {
        p.eval(z).norm() / s
    }
}

pub fn find_roots(p: &ComplexPoly) -> Result<RootSet> {
    let n = p.degree();
    if n < 1 {
        return Err(Error::InvalidArgument("root finding needs degree ≥ 1".into()));
    }
    let n = n as usize;
    let dp = p.derivative();
    let radius = root_radius(p);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let pz = p.eval(z[i]);
            if pz == C64::new(0.0, 0.0) {
                continue;
            }
            let ratio = pz / dp.eval(z[i]);
            let sum: C64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * sum);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm());
            }
        }
        if max_step < 1e-13 * radius {
            converged = true;
            break;
        }
    }
    // Newton polish
    for zi in &mut z {
        for _ in 0..3 {
            let d = dp.eval(*zi);
            if d == C64::new(0.0, 0.0) {
                break;
            }
            let step = p.eval(*zi) / d;
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            let cand = *zi - step;
            if backward_error(p, cand) <= backward_error(p, *zi) {
                *zi = cand;
            } else {
                break;
            }
        }
    }
    let backward_errors: Vec<f64> = z.iter().map(|&r| backward_error(p, r)).collect();
    if !converged && backward_errors.iter().any(|&e| !(e < 1e-10)) {
        return Err(Error::NoConvergence { iterations: MAX_ITER });
    }
    if backward_errors.iter().any(|&e| !(e < 1e-10)) {
        return Err(Error::NoConvergence { iterations: MAX_ITER });
    }
    Ok(RootSet { roots: z, backward_errors })
}

/// Pairs each element of `a` with a distinct element of `b` (equal lengths) and returns the
/// permutation together with the largest pair distance.
pub fn match_roots(a: &[C64], b: &[C64]) -> (Vec<usize>, f64) {
    let n = a.len();
    assert_eq!(n, b.len());
    let mut used = vec![false; n];
    let mut perm = vec![0; n];
    for i in 0..n {
        let j = (0..n)
            .filter(|&j| !used[j])
            .min_by(|&x, &y| (a[i] - b[x]).norm().total_cmp(&(a[i] - b[y]).norm()))
            .unwrap();
        used[j] = true;
        perm[i] = j;
    }
    // swap pass: exchange partners while it lowers the larger of the two distances
    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..n {
            for k in i + 1..n {
                let now = (a[i] - b[perm[i]]).norm().max((a[k] - b[perm[k]]).norm());
                let swapped = (a[i] - b[perm[k]]).norm().max((a[k] - b[perm[i]]).norm());
                if swapped < now * (1.0 - 1e-12) {
                    perm.swap(i, k);
                    improved = true;
                }
            }
        }
    }
    let worst = (0..n).map(|i| (a[i] - b[perm[i]]).norm()).fold(0.0, f64::max);
    (perm, worst)
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroMapReport {
    pub n: usize,
    pub degree: isize,
    pub dropped: usize,
    pub mapped: Vec<C64>,
    pub roots: Vec<C64>,
    pub max_distance: f64,
    pub pass: bool,
}

/// Zeros of Q_n against W of the zeros of P_n.
pub fn map_zero_check(seq: &TransformedSequence, n: usize, tol: f64) -> Result<ZeroMapReport> {
    let map = seq.map();
    let w = map.inverse();
    let q = seq.q(n);
    let degree = q.degree();
    let dropped = n - degree.max(0) as usize;
    if n == 0 {
        return Ok(ZeroMapReport { n, degree, dropped, mapped: vec![], roots: vec![], max_distance: 0.0, pass: true });
    }
    let mut xi = find_roots(&seq.family().generate(n))?.roots;
    if dropped > 0 {
        let pole = match map.value_at_infinity() {
            ExtComplex::Finite(p) => p,
            ExtComplex::Infinity => return Err(Error::InvalidArgument("degree drop without finite a/c".into())),
        };
        xi.sort_by(|a, b| (a - pole).norm().total_cmp(&(b - pole).norm()));
        xi.drain(..dropped);
    }
    let mapped = xi.iter().map(|&x| w.eval(x)).collect::<Result<Vec<_>>>()?;
    let roots = if degree >= 1 { find_roots(q)?.roots } else { vec![] };
    let (perm, max_distance) = match_roots(&mapped, &roots);
    let roots = perm.iter().map(|&j| roots[j]).collect();
    let scale = mapped.iter().map(|z| z.norm()).fold(1.0, f64::max);
    Ok(ZeroMapReport {
        n,
        degree,
        dropped,
        mapped,
        roots,
        max_distance,
        pass: max_distance < tol * scale,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OnCurveReport {
    pub n: usize,
    pub parameters: Vec<f64>,
    /// largest |Im t| / max(1, |t|)
    pub max_imag: f64,
    pub inside: bool,
    /// smallest pairwise root distance over the span of the roots
    pub min_separation: f64,
    pub pass: bool,
}

/// Zeros of Q_n lie on Γ (t = M(root) real inside (l, r)) and are simple.
pub fn on_curve_check(seq: &TransformedSequence, n: usize) -> Result<OnCurveReport> {
    let q = seq.q(n);
    let roots = if q.degree() >= 1 { find_roots(q)?.roots } else { vec![] };
    let iv = seq.family().interval();
    let mut params = Vec::new();
    let mut max_imag: f64 = 0.0;
    let mut inside = true;
    for &z in &roots {
        match seq.map().apply(ExtComplex::Finite(z)) {
            ExtComplex::Finite(t) => {
                max_imag = max_imag.max(t.im.abs() / t.norm().max(1.0));
                inside &= iv.contains(t.re);
                params.push(t.re);
            }
            ExtComplex::Infinity => inside = false,
        }
    }
    let span = roots
        .iter()
        .flat_map(|a| roots.iter().map(move |b| (a - b).norm()))
        .fold(0.0, f64::max);
    let mut min_sep = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            min_sep = min_sep.min((roots[i] - roots[j]).norm());
        }
    }
    let min_separation = if roots.len() < 2 { 1.0 } else { min_sep / span };
    params.sort_by(f64::total_cmp);
    Ok(OnCurveReport {
        n,
        parameters: params,
        max_imag,
        inside,
        min_separation,
        pass: max_imag < 1e-8 && inside && min_separation > 1e-6,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct InterlaceReport {
    pub n: usize,
    pub params_n: Vec<f64>,
    pub params_next: Vec<f64>,
    pub max_imag: f64,
    pub inside: bool,
    pub alternates: bool,
    pub pass: bool,
}

fn polish_by_recurrence(seq: &TransformedSequence, n: usize, mut z: C64) -> C64 {
    let mut last = f64::INFINITY;
    for _ in 0..8 {
        let (v, dv) = seq.eval_q_recurrence(n, z);
        let step = v / dv;
        if !(step.re.is_finite() && step.im.is_finite()) || step.norm() >= last {
            break;
        }
        last = step.norm();
        z -= step;
        if last <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Pullback parameters of the zeros of Q_n, including the points at infinity of a defective entry.
fn pullback_parameters(seq: &TransformedSequence, n: usize) -> Result<(Vec<f64>, f64, bool)> {
    let map = seq.map();
    let q = seq.q(n);
    let iv = seq.family().interval();
    let roots = if q.degree() >= 1 { find_roots(q)?.roots } else { vec![] };
    let mut params = Vec::new();
    let mut max_imag: f64 = 0.0;
    let mut inside = true;
    for z in roots {
        let z = polish_by_recurrence(seq, n, z);
        match map.apply(ExtComplex::Finite(z)) {
            ExtComplex::Finite(t) => {
                max_imag = max_imag.max(t.im.abs() / t.norm().max(1.0));
                inside &= iv.contains(t.re);
                params.push(t.re);
            }
            ExtComplex::Infinity => inside = false,
        }
    }
    let deficit = n - q.degree().max(0) as usize;
    if deficit > 0 {
        match map.value_at_infinity() {
            ExtComplex::Finite(p) => {
                max_imag = max_imag.max(p.im.abs() / p.norm().max(1.0));
                inside &= iv.contains(p.re);
                params.extend(std::iter::repeat_n(p.re, deficit));
            }
            ExtComplex::Infinity => inside = false,
        }
    }
    params.sort_by(f64::total_cmp);
    Ok((params, max_imag, inside))
}

/// Zeros of Q_n and Q_{n+1} strictly alternate in the pullback parameter.
pub fn interlacing_check(seq: &TransformedSequence, n: usize) -> Result<InterlaceReport> {
    if n + 1 > seq.n_max() {
        return Err(Error::InvalidArgument(format!("need Q_{} but built up to {}", n + 1, seq.n_max())));
    }
    let (a, ia, ina) = pullback_parameters(seq, n)?;
    let (b, ib, inb) = pullback_parameters(seq, n + 1)?;
    let mut alternates = b.len() == a.len() + 1;
    if alternates {
        for k in 0..a.len() {
            alternates &= b[k] < a[k] && a[k] < b[k + 1];
        }
    }
    let max_imag = ia.max(ib);
    let inside = ina && inb;
    Ok(InterlaceReport {
        n,
        params_n: a,
        params_next: b,
        max_imag,
        inside,
        alternates,
        pass: alternates && inside && max_imag < 1e-8,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitCircleReport {
    pub roots: Vec<C64>,
    pub max_deviation: f64,
    pub self_inversive_score: f64,
}

/// max ||z| - 1| over the roots and the distance of p from ε·conj-reversal of itself.
pub fn unit_circle_check(p: &ComplexPoly) -> Result<UnitCircleReport> {
    let roots = find_roots(p)?.roots;
    let max_deviation = roots.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    let n = p.degree() as usize;
    let s: C64 = (0..=n).map(|k| p.coeff(k) * p.coeff(n - k)).sum();
    let eps = if s.norm() == 0.0 { C64::new(1.0, 0.0) } else { s / s.norm() };
    let dev = (0..=n)
        .map(|k| (p.coeff(k) - eps * p.coeff(n - k).conj()).norm())
        .fold(0.0, f64::max);
    Ok(UnitCircleReport {
        roots,
        max_deviation,
        self_inversive_score: dev / p.max_abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::moebius::MoebiusMap;

    fn sorted_re(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn simple_roots() {
        let r = sorted_re(find_roots(&ComplexPoly::from_real(&[1.0, 0.0, 1.0])).unwrap().roots);
        assert!((r[0] - C64::new(0.0, -1.0)).norm() < 1e-14 || (r[0] - C64::new(0.0, 1.0)).norm() < 1e-14);
        let r = sorted_re(find_roots(&ComplexPoly::from_real(&[0.0, -12.0, 0.0, 8.0])).unwrap().roots);
        let s = 1.5f64.sqrt();
        for (g, w) in r.iter().zip([-s, 0.0, s]) {
            assert!((g - C64::new(w, 0.0)).norm() < 1e-13);
        }
        let r = find_roots(&ComplexPoly::from_real(&[2.0, 0.0, -1.0])).unwrap().roots;
        for z in r {
            assert!((z.norm() - 2f64.sqrt()).abs() < 1e-14 && z.im.abs() < 1e-14);
        }
    }

    #[test]
    fn chebyshev_inversion_zeros() {
        let seq = TransformedSequence::build(&FamilySpec::chebyshev(), &MoebiusMap::inversion(), 6).unwrap();
        for n in 1..=5 {
            let rep = map_zero_check(&seq, n, 1e-8).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
        let rep = map_zero_check(&seq, 3, 1e-8).unwrap();
        assert_eq!(rep.dropped, 1);
        let il = interlacing_check(&seq, 4).unwrap();
        assert!(il.pass, "{il:?}");
    }

    #[test]
    fn roots_of_unity() {
        let mut c = vec![C64::new(0.0, 0.0); 7];
        c[0] = C64::new(-1.0, 0.0);
        c[6] = C64::new(1.0, 0.0);
        let rep = unit_circle_check(&ComplexPoly::new(c)).unwrap();
        assert!(rep.max_deviation < 1e-14);
        assert!(rep.self_inversive_score < 1e-15);
    }
}
