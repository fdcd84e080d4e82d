use crate::applications::bessel::{
    bessel_defective_identity_check, bessel_generalized, bessel_ode_coeffs, bessel_ode_residual,
    bessel_orthogonality_check, VaryingParamSequence,
};
use crate::applications::limits::{
    hermite_weight_limit_check, jacobi_to_hermite_limit_check, jacobi_to_laguerre_limit_check,
    jacobi_weight_limit_check,
};
use crate::applications::romanovski::{romanovski, romanovski_finite_real_check, romanovski_orthogonality_check};
use crate::calculus::{classical_rodrigues, transformed_rodrigues, GenFunSpec};
use crate::cli::config::RunConfig;
use crate::cli::report::{cval, cvals, PlotData, Report};
use crate::error::{Error, Result};
use crate::families::{Endpoint, FamilySpec};
use crate::moebius::{ExtComplex, MoebiusMap, C64};
use crate::polynomial::{leading_coefficient_prediction, ComplexPoly};
use crate::quadrature::{gram_transformed_contour, gram_transformed_pullback};
use crate::residual::CheckStatus;
use crate::transform::{reduce_common_power_of_x, BuildOptions, ContourKind, TransformedSequence};
use crate::zeros::{interlacing_check, map_zero_check, on_curve_check, unit_circle_check};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

fn seq_of(cfg: &RunConfig, n_max: usize, verify: bool) -> Result<TransformedSequence> {
    let fam = cfg.family_spec()?;
    let opts = BuildOptions {
        verify,
        ..BuildOptions::default()
    };
    TransformedSequence::build_with(&fam, &cfg.map, n_max, opts)
}

/// Seeded points in [-1.5, 1.5]² away from the pole of u and from preimages of finite
/// interval endpoints, where weights are singular.
pub fn sample_points(seed: u64, count: usize, map: &MoebiusMap, fam: &FamilySpec) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = map.inverse();
    let mut avoid = Vec::new();
    if let Some(p) = map.pole() {
        avoid.push(p);
    }
    let iv = fam.interval();
    for e in [iv.lower, iv.upper] {
        if let Endpoint::Finite(t) = e {
            if let ExtComplex::Finite(z) = w.apply(ExtComplex::Finite(C64::new(t, 0.0))) {
                avoid.push(z);
            }
        }
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        if avoid.iter().all(|a| (z - a).norm() > 0.2) {
            out.push(z);
        }
    }
    out
}

fn poly_value(p: &ComplexPoly) -> Value {
    cvals(p.coeffs())
}

fn status_value(s: CheckStatus) -> Value {
    serde_json::to_value(s).expect("status serializes")
}

pub fn table(cfg: &RunConfig, rep: &mut Report, _plot: &mut PlotData) -> Result<()> {
    let seq = seq_of(cfg, cfg.n, false)?;
    for (k, q) in seq.polys().iter().enumerate() {
        rep.info(format!("Q_{k}"), poly_value(q));
    }
    Ok(())
}

pub fn transform(cfg: &RunConfig, rep: &mut Report, plot: &mut PlotData) -> Result<()> {
    let seq = seq_of(cfg, cfg.n, false)?;
    let tol = cfg.tol(1e-11);
    let fam = seq.family();
    for k in 0..=cfg.n {
        let q = seq.q(k);
        rep.info(format!("Q_{k}"), poly_value(q));
        rep.info(format!("degree Q_{k}"), json!(q.degree()));
        rep.bound(format!("dual construction Q_{k}"), seq.dual_construction_error(k)?, tol);
        let pred = leading_coefficient_prediction(&fam.generate(k), &cfg.map);
        let got = q.coeff(k);
        let err = (pred - got).norm() / pred.norm().max(q.max_abs());
        rep.check(format!("leading coefficient Q_{k}"), cval(got), cval(pred), tol, err < tol);
    }
    let contour = seq.contour();
    rep.info("contour", json!(contour.kind.label()));
    contour_plot(&seq, plot)?;
    Ok(())
}

fn contour_plot(seq: &TransformedSequence, plot: &mut PlotData) -> Result<()> {
    let contour = seq.contour();
    if contour.is_bounded_connected() || matches!(contour.kind, ContourKind::FullCircle { .. }) {
        for j in 0..=200 {
            plot.push("contour", contour.geometric_point(j as f64 / 200.0)?.0);
        }
    } else {
        let iv = seq.family().interval();
        for j in 1..200 {
            if let ExtComplex::Finite(z) = contour.pullback_point(iv.from_unit(j as f64 / 200.0)) {
                plot.push("contour", z);
            }
        }
    }
    Ok(())
}

pub fn gram(cfg: &RunConfig, rep: &mut Report, _plot: &mut PlotData) -> Result<()> {
    let seq = seq_of(cfg, cfg.n, true)?;
    let scheme = cfg.scheme()?;
    let g = gram_transformed_pullback(&seq, cfg.n, &scheme)?;
    let diag: Vec<C64> = (0..g.dim()).map(|k| g.matrix[k][k]).collect();
    rep.check(
        "diagonal",
        cvals(&diag),
        cvals(&g.expected),
        cfg.tol(1e-7),
        g.max_diag_error < cfg.tol(1e-7),
    );
    rep.bound("max diagonal relative error", g.max_diag_error, cfg.tol(1e-7));
    rep.bound("max off-diagonal relative size", g.max_offdiag, cfg.tol(1e-8));
    rep.info("nodes", json!(g.nodes_used));
    match gram_transformed_contour(&seq, cfg.n, &scheme) {
        Ok(direct) => rep.bound("route agreement", g.distance(&direct), cfg.tol(1e-7)),
        Err(Error::UnsupportedContour(kind)) => rep.info("route agreement", json!(format!("unsupported for {kind}"))),
        Err(e) => return Err(e),
    }
    Ok(())
}

pub fn ode_check(cfg: &RunConfig, rep: &mut Report, _plot: &mut PlotData) -> Result<()> {
    let seq = seq_of(cfg, cfg.n, true)?;
    let pts = sample_points(cfg.seed, cfg.points, &cfg.map, seq.family());
    let (mut q, mut r) = (0.0f64, 0.0f64);
    for n in 0..=cfg.n {
        for &x in &pts {
            q = q.max(seq.ode_residual(n, x).relative());
            r = r.max(seq.ode_residual_rational(n, x)?.relative());
        }
    }
    rep.bound("polynomial form residual", q, cfg.tol(1e-9));
    rep.bound("rational form residual", r, cfg.tol(1e-9));
    Ok(())
}

pub fn cd_check(cfg: &RunConfig, rep: &mut Report, _plot: &mut PlotData) -> Result<()> {
    let seq = seq_of(cfg, cfg.n + 1, true)?;
    let pts = sample_points(cfg.seed, cfg.points, &cfg.map, seq.family());
    let mut worst = [0.0f64; 5];
    for n in 0..=cfg.n {
        for (i, &x) in pts.iter().enumerate() {
            let y = pts[(i + 1) % pts.len()];
            if x != y {
                worst[0] = worst[0].max(seq.cd_residual(n, x, y)?.relative());
                worst[1] = worst[1].max(seq.cd_residual_rational(n, x, y)?.relative());
            }
            worst[2] = worst[2].max(seq.cd_confluent_residual(n, x)?.relative());
            worst[3] = worst[3].max(seq.cd_confluent_residual_rational(n, x)?.relative());
            worst[4] = worst[4].max(seq.cd_confluent_residual_unbalanced(n, x)?.relative());
        }
    }
    let tol = cfg.tol(1e-8);
    rep.bound("kernel identity", worst[0], tol);
    rep.bound("kernel identity, rational form", worst[1], tol);
    rep.bound("confluent kernel identity", worst[2], tol);
    rep.bound("confluent kernel identity, rational form", worst[3], tol);
    rep.info("confluent form with u^(2n-1) in the c-term", json!(worst[4]));
    Ok(())
}

pub fn pearson_check(cfg: &RunConfig, rep: &mut Report, _plot: &mut PlotData) -> Result<()> {
    let seq = seq_of(cfg, cfg.n, true)?;
    let pts = sample_points(cfg.seed, cfg.points, &cfg.map, seq.family());
    let (mut q, mut r) = (0.0f64, 0.0f64);
    for &x in &pts {
        r = r.max(seq.pearson_residual_rational(x)?.relative());
        for m in 0..=cfg.n {
            for n in 0..=cfg.n {
                q = q.max(seq.pearson_residual(m, n, x)?.relative());
            }
        }
    }
    rep.bound("varying weight equation", q, cfg.tol(1e-9));
    rep.bound("weight equation", r, cfg.tol(1e-9));
    Ok(())
}

pub fn rodrigues_check(cfg: &RunConfig, rep: &mut Report, _plot: &mut PlotData) -> Result<()> {
    let seq = seq_of(cfg, cfg.n, true)?;
    let fam = *seq.family();
    let pts = sample_points(cfg.seed, cfg.points, &cfg.map, &fam);
    let ident = sample_points(cfg.seed ^ 0x5eed, cfg.points, &MoebiusMap::identity(), &fam);
    let (mut pc, mut pt) = (0.0f64, 0.0f64);
    for n in 0..=cfg.n {
        let p = fam.generate(n);
        for &x in &ident {
            let v = classical_rodrigues(&fam, n, x)?;
            pc = pc.max((v - p.eval(x)).norm() / p.eval_abs(x));
        }
        for &y in &pts {
            let v = transformed_rodrigues(&seq, n, y)?;
            pt = pt.max((v - seq.eval_q(n, y)).norm() / seq.q(n).eval_abs(y));
        }
    }
    rep.bound("classical formula", pc, cfg.tol(1e-8));
    rep.bound("transformed formula", pt, cfg.tol(1e-7));
    Ok(())
}

pub fn genfun_check(cfg: &RunConfig, rep: &mut Report, _plot: &mut PlotData) -> Result<()> {
    let seq = seq_of(cfg, cfg.n, true)?;
    let fam = *seq.family();
    let spec = GenFunSpec::for_family(&fam)
        .ok_or_else(|| Error::InvalidArgument(format!("no generating function for {}", fam.name())))?;
    let pts = sample_points(cfg.seed, cfg.points, &cfg.map, &fam);
    let fact = |k: usize| -> f64 {
        if spec.is_exponential() {
            (1..=k).map(|j| j as f64).product()
        } else {
            1.0
        }
    };
    let (mut ec, mut et) = (0.0f64, 0.0f64);
    for &x in &pts {
        let s = spec.classical(x, cfg.n)?;
        let t = spec.transformed(&seq, x, cfg.n)?;
        for k in 0..=cfg.n {
            let p = fam.generate(k);
            let scale = p.eval_abs(x) / fact(k);
            ec = ec.max((s.coeffs()[k] - p.eval(x) / fact(k)).norm() / scale);
            let q = seq.q(k);
            let scale = q.eval_abs(x) / fact(k);
            et = et.max((t.coeffs()[k] - q.eval(x) / fact(k)).norm() / scale);
        }
    }
    rep.bound("classical series", ec, cfg.tol(1e-9));
    rep.bound("transformed series", et, cfg.tol(1e-9));
    Ok(())
}

fn is_unit_circle(kind: &ContourKind) -> bool {
    matches!(kind, ContourKind::FullCircle { center, radius, .. } if center.norm() < 1e-12 && (radius - 1.0).abs() < 1e-12)
}

pub fn zeros(cfg: &RunConfig, rep: &mut Report, plot: &mut PlotData) -> Result<()> {
    let seq = seq_of(cfg, cfg.n, true)?;
    let real = seq.family().is_real_orthogonal();
    let circle = is_unit_circle(&seq.contour().kind);
    let tol = cfg.tol(1e-8);
    for n in 1..=cfg.n {
        let z = map_zero_check(&seq, n, tol)?;
        rep.check(format!("mapped zeros Q_{n}"), json!(z.max_distance), Value::Null, tol, z.pass);
        for &r in &z.roots {
            plot.push(format!("Q_{n}"), r);
        }
        if real {
            let c = on_curve_check(&seq, n)?;
            rep.check(
                format!("zeros on contour Q_{n}"),
                json!(c.parameters),
                Value::Null,
                1e-8,
                c.pass,
            );
        }
        if circle && seq.q(n).degree() == n as isize {
            let u = unit_circle_check(seq.q(n))?;
            rep.bound(format!("unit circle deviation Q_{n}"), u.max_deviation, cfg.tol(1e-9));
            rep.bound(format!("self-inversive defect Q_{n}"), u.self_inversive_score, cfg.tol(1e-9));
        }
    }
    contour_plot(&seq, plot)?;
    Ok(())
}

pub fn interlace(cfg: &RunConfig, rep: &mut Report, plot: &mut PlotData) -> Result<()> {
    let seq = seq_of(cfg, cfg.n, true)?;
    if !seq.family().is_real_orthogonal() {
        return Err(Error::InvalidArgument("interlacing needs real parameters in the orthogonality range".into()));
    }
    for n in 1..cfg.n {
        let r = interlacing_check(&seq, n)?;
        for &t in &r.params_n {
            plot.push(format!("t_{n}"), C64::new(t, 0.0));
        }
        rep.check(
            format!("interlacing Q_{n}, Q_{}", n + 1),
            json!({"params_n": r.params_n, "params_next": r.params_next, "max_imag": r.max_imag}),
            Value::Null,
            1e-8,
            r.pass,
        );
    }
    Ok(())
}

pub fn cayley(cfg: &RunConfig, rep: &mut Report, plot: &mut PlotData) -> Result<()> {
    let seq = seq_of(cfg, cfg.n, true)?;
    let tol = cfg.tol(1e-9);
    rep.info("contour", json!(seq.contour().kind.label()));
    for n in 1..=cfg.n {
        let u = unit_circle_check(seq.q(n))?;
        for &z in &u.roots {
            plot.push(format!("Q_{n}"), z);
        }
        rep.bound(format!("unit circle deviation Q_{n}"), u.max_deviation, tol);
        rep.bound(format!("self-inversive defect Q_{n}"), u.self_inversive_score, tol);
    }
    contour_plot(&seq, plot)?;
    Ok(())
}

pub fn bessel(cfg: &RunConfig, rep: &mut Report, _plot: &mut PlotData) -> Result<()> {
    let gamma = C64::new(cfg.gamma.unwrap_or(2.0), 0.0);
    let beta = C64::new(cfg.beta.unwrap_or(2.0), 0.0);
    let (n, m) = (cfg.n, cfg.m.unwrap_or(cfg.n));
    let vs = VaryingParamSequence::bessel(gamma, beta);
    for k in 0..=n {
        match bessel_generalized(k, gamma, beta) {
            Ok(p) => rep.info(format!("B_{k}"), poly_value(&p)),
            Err(Error::NormalizationImpossible) => rep.info(format!("B_{k}"), json!("constant term vanishes")),
            Err(e) => return Err(e),
        }
    }
    let scheme = cfg.scheme()?;
    let o = bessel_orthogonality_check(m, n, gamma, beta, &scheme, if m == n { 1e-6 } else { 1e-8 })?;
    match o.status {
        CheckStatus::Ungated => rep.info(format!("orthogonality ({m},{n})"), status_value(o.status)),
        s => rep.check(
            format!("orthogonality ({m},{n})"),
            json!({"integral": o.computed.map(cval), "error": o.error}),
            o.expected.map(cval).unwrap_or(Value::Null),
            o.tolerance,
            s.is_ok(),
        ),
    }
    // ODE in both sign conventions; only the one that holds is judged
    let pts = sample_points(cfg.seed, cfg.points, &MoebiusMap::identity(), &FamilySpec::hermite());
    let (mut good, mut other) = (0.0f64, 0.0f64);
    let mut normalizable = true;
    for &x in &pts {
        match (bessel_ode_residual(n, gamma, beta, x, -1.0), bessel_ode_residual(n, gamma, beta, x, 1.0)) {
            (Ok(a), Ok(b)) => {
                good = good.max(a.relative());
                other = other.max(b.relative());
            }
            (Err(Error::NormalizationImpossible), _) => normalizable = false,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    if normalizable {
        rep.bound("equation x²y'' + (γx+β)y' - n(n+γ-1)y = 0", good, cfg.tol(1e-9));
        rep.info("residual with +n(n+γ-1)", json!(other));
    }
    // transformed equation of the inverted family against both printed forms
    let seq = vs.sequence(n)?;
    let (f, g, h) = seq.transformed_ode_coeffs(n);
    let (k, red) = reduce_common_power_of_x(&[f, g, h], 1e-13);
    let alpha = vs.alpha(n);
    let nf = n as f64;
    let odel = [
        ComplexPoly::from_real(&[0.0, 0.0, 1.0]),
        ComplexPoly::linear(1.0 - 2.0 * nf - alpha, beta),
        ComplexPoly::constant(nf * (nf + alpha)),
    ];
    let (bf, bg, bh) = bessel_ode_coeffs(n, gamma, beta);
    let odeb = [bf, bg, bh];
    let dist = |a: &[ComplexPoly], b: &[ComplexPoly]| {
        a.iter().zip(b).map(|(p, q)| (p - q).max_abs()).fold(0.0, f64::max)
    };
    rep.info("common power of x removed", json!(k));
    rep.bound("transformed coefficients vs Laguerre-form equation", dist(&red, &odel), cfg.tol(1e-12));
    rep.bound("transformed coefficients vs Bessel equation", dist(&red, &odeb), cfg.tol(1e-12));
    // defective identity for negative integer γ
    if gamma.re < 0.0 && gamma.re.fract() == 0.0 {
        let g = gamma.re as i32;
        let partner = 1 - g - n as i32;
        if partner >= 0 && partner as usize != n {
            let (d, ok) = bessel_defective_identity_check(n, g, beta)?;
            rep.check(format!("B_{n} = B_{partner}"), json!(d), Value::Null, 1e-11, ok);
        }
    }
    Ok(())
}

pub fn romanovski_cmd(cfg: &RunConfig, rep: &mut Report, _plot: &mut PlotData) -> Result<()> {
    let gamma = cfg.gamma.unwrap_or(0.5);
    let delta = cfg.delta.unwrap_or(1.0);
    let (n, m) = (cfg.n, cfg.m.unwrap_or(cfg.n));
    for k in 0..=n.max(m) {
        rep.info(format!("R_{k}"), poly_value(&romanovski(k, gamma, delta)?));
    }
    let scheme = cfg.scheme()?;
    let c = romanovski_orthogonality_check(m, n, gamma, delta, &scheme)?;
    if c.status == CheckStatus::Ungated {
        rep.info(format!("imaginary axis ({m},{n})"), status_value(c.status));
    } else {
        rep.check(
            format!("imaginary axis ({m},{n})"),
            json!({"pullback": c.pullback.map(cval), "segment": c.segment.map(cval), "error": c.error}),
            c.expected.map(cval).unwrap_or(Value::Null),
            c.tolerance,
            c.error.unwrap_or(f64::INFINITY) < c.tolerance,
        );
        rep.bound("route agreement", c.route_agreement.unwrap_or(f64::INFINITY), 1e-7);
        rep.info(
            "weight as written, dx integral vs i(-1)^n K_n",
            json!({"value": c.display.map(cval), "error": c.display_error}),
        );
    }
    let real = romanovski_finite_real_check(m, n, gamma, delta, &scheme)?;
    match real.status {
        CheckStatus::Ungated => rep.info(format!("real line ({m},{n})"), status_value(real.status)),
        s => rep.check(
            format!("real line ({m},{n})"),
            json!({"integral": real.computed.map(cval), "error": real.error}),
            real.expected.map(cval).unwrap_or(Value::Null),
            real.tolerance,
            s.is_ok(),
        ),
    }
    Ok(())
}

pub fn limits(cfg: &RunConfig, rep: &mut Report, _plot: &mut PlotData) -> Result<()> {
    let alphas = cfg.alphas.clone().unwrap_or_else(|| vec![1e2, 1e3, 1e4]);
    let beta = cfg.beta.unwrap_or(0.5);
    for n in 0..=cfg.n {
        let l = jacobi_to_laguerre_limit_check(n, beta, &alphas)?;
        rep.check(
            format!("Laguerre limit n={n}"),
            serde_json::to_value(&l).expect("table serializes"),
            json!([0.05, 0.2]),
            0.2,
            l.pass,
        );
        let h = jacobi_to_hermite_limit_check(n, &alphas)?;
        rep.check(
            format!("Hermite limit n={n}"),
            serde_json::to_value(&h).expect("table serializes"),
            json!([0.05, 0.2]),
            0.2,
            h.pass,
        );
    }
    let xs = [0.5, 1.0, 2.0, 5.0];
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let wl = jacobi_weight_limit_check(&alphas, beta, &xs);
    let e: Vec<f64> = wl.iter().map(|r| r.max_rel_error).collect();
    rep.check("Laguerre weight limit", json!(e), Value::Null, 0.0, decreasing(&e));
    let wh = hermite_weight_limit_check(&alphas, &xs);
    let e: Vec<f64> = wh.iter().map(|r| r.max_rel_error).collect();
    rep.check("Hermite weight limit", json!(e), Value::Null, 0.0, decreasing(&e));
    Ok(())
}
