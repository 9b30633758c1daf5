//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Criteria are checked exactly as stated; a failing criterion is reported,
//! never relaxed.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;

use mtlab_core::curvature::report::Axis;
use mtlab_core::curvature::{
    classify, compare, fundamental_data, gauss_curvature, CurvatureMethod, Grid, MTReport,
    Tolerances,
};
use mtlab_core::expr::{Expr, Scope};
use mtlab_core::spaces::{
    complex_structure, metric, null_normal_criterion, signature, symplectic, validate,
    GeodesicPoint, SpaceId, TangentVec,
};
use mtlab_core::surfaces::{
    euclidean_rank_one, euclidean_section, euclidean_torus, hyperbolic_graph,
    hyperbolic_profile_graph, hyperbolic_rank_one, hyperbolic_sphere_family,
    hyperbolic_weingarten_family, Immersion, Variant, WeingartenKind,
};
use mtlab_core::{Complex64, Coordinate, Jet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type C = Complex64;
type Outcome = Result<String, String>;

const ORDER: usize = 4;

fn grid(a: (f64, f64), b: (f64, f64), n: usize) -> Grid {
    Grid::new(Axis::new(a.0, a.1, n), Axis::new(b.0, b.1, n))
}

fn report(imm: &Immersion, g: &Grid) -> MTReport {
    classify(imm, g, ORDER, &Tolerances::default())
}

fn max_of(r: &MTReport, key: &str) -> f64 {
    r.stats.get(key).map_or(f64::NAN, |s| s.max)
}

/// Fails unless at least `fraction` of the grid was evaluated.
fn coverage(r: &MTReport, fraction: f64, what: &str) -> Result<(), String> {
    let n = r.grid.len();
    if (r.points.len() as f64) < fraction * n as f64 {
        return Err(format!(
            "{what}: only {} of {n} points evaluated",
            r.points.len()
        ));
    }
    Ok(())
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn coeff(rng: &mut StdRng, scale: f64) -> f64 {
    (rng.gen_range(-1.0..1.0) * scale * 1000.0).round() / 1000.0
}

/// Random polynomial of degree <= `degree` in `var`, literal coefficients.
fn poly(rng: &mut StdRng, var: &str, degree: usize, scale: f64) -> String {
    let mut terms = vec![format!("{}", coeff(rng, scale))];
    for k in 1..=degree {
        terms.push(format!("({})*{var}^{k}", coeff(rng, scale)));
    }
    terms.join(" + ")
}

// 1
fn rotational_sections() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let g = grid((0.2, 1.1), (0.1, 0.9), 20);
    let mut worst = 0.0f64;
    for k in 0..10 {
        let p = poly(&mut rng, "R^2", 4, 0.5);
        let src = if k % 2 == 0 {
            format!("exp({p})")
        } else {
            format!("sin({p})")
        };
        let r = report(
            &euclidean_section(&src).map_err(|e| format!("{src}: {e}"))?,
            &g,
        );
        coverage(&r, 0.9, &src)?;
        let m = max_of(&r, "mt_defect_rel");
        ensure(m <= 1e-8, || {
            format!("{src}: max relative mt_defect {m:.3e}")
        })?;
        worst = worst.max(m);
    }
    Ok(format!(
        "10 supports, worst max relative mt_defect {worst:.2e}"
    ))
}

// 2
fn torus_family() -> Outcome {
    let g = Grid::new(
        Axis::new(-2.0, 2.0, 21),
        Axis::new(0.0, TAU * 19.0 / 20.0, 20),
    );
    let (mut lag, mut mt) = (0.0f64, 0.0f64);
    for (a, b, n) in [(1.0, 0.0, 0), (1.0, 0.5, 1), (1.0, 0.5, 2), (2.0, 1.0, 3)] {
        let l = format!("{a} + {b}*cos({n}*theta)");
        let r = report(&euclidean_torus(&l, 0.0).map_err(|e| e.to_string())?, &g);
        ensure(r.points.iter().any(|p| p.p[0] == 0.0), || {
            format!("{l}: R = 0 not evaluated")
        })?;
        coverage(&r, 1.0, &l)?;
        let (dl, dm) = (max_of(&r, "lagrangian_defect"), max_of(&r, "mt_defect"));
        ensure(dl <= 1e-10, || format!("{l}: lagrangian_defect {dl:.3e}"))?;
        ensure(dm <= 1e-8, || format!("{l}: mt_defect {dm:.3e}"))?;
        lag = lag.max(dl);
        mt = mt.max(dm);
    }
    Ok(format!(
        "4 tori over R in [-2, 2], lagrangian_defect {lag:.1e}, mt_defect {mt:.1e}"
    ))
}

// 3
fn euclidean_rank_one_surfaces() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let g = grid((-1.0, 1.0), (0.5, 1.5), 8);
    let mut worst = 0.0f64;
    let mut curved = 0;
    for k in 0..10 {
        // the normal bundle is affine: a and b are affine in t
        let a = format!(
            "{} + ({})*t + ({})*s*t + ({})*s^2*t",
            poly(&mut rng, "s", 2, 1.0),
            coeff(&mut rng, 1.0),
            0.5 + rng.gen_range(0.0..0.5),
            coeff(&mut rng, 0.3)
        );
        // b_t = c0 + c1 s with c0 >= 1 > |c1|: bounded away from 0
        let b = format!(
            "({})*t + ({})*s*t + ({})*s^2",
            1.0 + rng.gen_range(0.0..1.0),
            coeff(&mut rng, 0.5),
            coeff(&mut rng, 1.0)
        );
        let (variant, r0) = if k % 2 == 0 {
            (Variant::Equator, None)
        } else {
            (Variant::Latitude, Some(0.4 + 0.1 * k as f64))
        };
        let imm = euclidean_rank_one(variant, r0, &a, &b).map_err(|e| format!("{a} / {b}: {e}"))?;
        let r = report(&imm, &g);
        coverage(&r, 1.0, &a)?;
        let m = max_of(&r, "mt_defect");
        ensure(m <= 1e-8, || format!("a = {a}, b = {b}: mt_defect {m:.3e}"))?;
        worst = worst.max(m);
        ensure(max_of(&r, "minimality") > 1e-3, || {
            format!("a = {a}, b = {b}: H vanishes on the grid")
        })?;
        curved += 1;
    }
    // separable a over the equator: minimal
    let mut minimal = 0.0f64;
    for (a, b) in [
        ("sin(s)", "t + 0.3*s*t"),
        ("s + t", "t"),
        ("sin(s) + 0.5*t", "t + 0.3*s*t"),
        ("s^3 - 2*t", "2*t + s"),
    ] {
        let r = report(
            &euclidean_rank_one(Variant::Equator, None, a, b).map_err(|e| e.to_string())?,
            &g,
        );
        let h = max_of(&r, "minimality");
        ensure(r.verdicts.minimal == Some(true), || {
            format!("equator a = {a}, b = {b}: minimality {h:.3e}")
        })?;
        minimal = minimal.max(h);
    }
    Ok(format!(
        "10 pairs with mt_defect <= {worst:.1e} and H != 0 in {curved}; separable equator cases minimal to {minimal:.1e}"
    ))
}

// 4
fn hyperbolic_rank_one_surfaces() -> Outcome {
    let cases: [([&str; 2], [&str; 2]); 5] = [
        (["s", "0"], ["0", "t"]),
        (["s", "0.2*s^2"], ["t", "1 + 0.1*s*t"]),
        (["cos(s)", "sin(s)"], ["0.3*t", "0.2*s + t"]),
        (["s + 0.1*s^3", "0.5"], ["t*s", "t + 0.2"]),
        (["0.5*s", "s^2"], ["exp(0.2*t) - 1", "0.4*t*s + t"]),
    ];
    let g = grid((-0.4, 0.4), (0.1, 0.5), 10);
    let (mut hmu, mut mt) = (0.0f64, 0.0f64);
    for (mu1, mu2) in cases {
        let imm = hyperbolic_rank_one(mu1, mu2).map_err(|e| format!("{mu1:?} {mu2:?}: {e}"))?;
        let mut evaluated = 0;
        for (_, p) in g.points() {
            let Ok(fd) = fundamental_data(&imm, p) else {
                continue;
            };
            evaluated += 1;
            let (h1, m) = (fd.h.v1.norm(), fd.mt_defect.abs());
            ensure(h1 <= 1e-10, || {
                format!("{mu1:?} {mu2:?} at {p:?}: |H^mu1| {h1:.3e}")
            })?;
            ensure(m <= 1e-8, || {
                format!("{mu1:?} {mu2:?} at {p:?}: mt_defect {m:.3e}")
            })?;
            hmu = hmu.max(h1);
            mt = mt.max(m);
        }
        ensure(evaluated >= 90, || {
            format!("{mu1:?} {mu2:?}: {evaluated} points evaluated")
        })?;
    }
    Ok(format!(
        "5 surfaces, |H^mu1| <= {hmu:.1e}, mt_defect <= {mt:.1e}"
    ))
}

fn graph_grid() -> Grid {
    grid((-0.3, 0.3), (0.05, 0.35), 20)
}

fn diagonal() -> C {
    C::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)
}

// 5
fn graph_criterion_both_directions() -> Outcome {
    let tau60 = C::from_polar(1.0, PI / 3.0);
    let profiles: [(&str, C); 10] = [
        ("x^2", diagonal()),
        ("exp(x)", C::new(1.0, 0.0)),
        ("ln(cosh(x))", C::new(0.0, 1.0)),
        ("x^3 + 3*x", tau60),
        ("cosh(x)", diagonal()),
        ("x^4 + x^2", C::new(0.0, 1.0)),
        ("atan(x) + x", tau60),
        ("exp(0.5*x) + x^2", C::new(1.0, 0.0)),
        ("sin(x) + 2*x", diagonal()),
        ("x", C::from_polar(1.0, 0.3)),
    ];
    let mut worst = (0.0f64, 0.0f64);
    for (f, tau) in profiles {
        let r = report(
            &hyperbolic_profile_graph(f, tau).map_err(|e| format!("{f}: {e}"))?,
            &graph_grid(),
        );
        coverage(&r, 1.0, f)?;
        let crit = max_of(&r, "residual_minus").min(max_of(&r, "residual_plus"));
        let mt = max_of(&r, "mt_defect");
        ensure(crit <= 1e-8, || {
            format!("profile {f}: criterion {crit:.3e}")
        })?;
        ensure(mt <= 1e-8, || format!("profile {f}: mt_defect {mt:.3e}"))?;
        worst = (worst.0.max(crit), worst.1.max(mt));
    }
    let perturbed = [
        "t^2 + 0.2*mu*mubar",
        "u*v + 0.3*u^2 + v",
        "exp(0.3*u) + v^2",
        "t^2 + 0.5*u^3",
        "t^2 + 0.3*u*v^2 + 0.2*v",
    ];
    for h in perturbed {
        let r = report(
            &hyperbolic_graph(h, diagonal()).map_err(|e| format!("{h}: {e}"))?,
            &graph_grid(),
        );
        let common = r.points.iter().any(|p| {
            p.criterion.is_some_and(|c| c[0] > 1e-3 && c[1] > 1e-3) && p.mt_defect.abs() > 1e-3
        });
        ensure(common, || {
            format!("perturbed {h}: no grid point with both residuals and mt_defect above 1e-3")
        })?;
    }
    Ok(format!(
        "10 profiles with criterion <= {:.1e}, mt_defect <= {:.1e}; 5 perturbed graphs fail at a common point",
        worst.0, worst.1
    ))
}

/// Point with `t = tau mu + conj(tau mu) = t0` on the imaginary-`t` axis.
fn point_with_t(tau: C, t0: f64, offset: f64) -> [f64; 2] {
    let mu = (C::new(t0 / 2.0, offset)) / tau;
    [mu.re, mu.im]
}

// 6
fn gauss_curvature_closed_form() -> Outcome {
    let graphs = [
        "t^2",
        "t^2 + 0.2*mu*mubar",
        "u*v + 0.3*u^2 + v",
        "exp(0.3*u) + v^2",
        "t^2 + 0.5*u^3",
    ];
    let mut worst = 0.0f64;
    for h in graphs {
        let imm = hyperbolic_graph(h, diagonal()).map_err(|e| e.to_string())?;
        for (_, p) in graph_grid().points() {
            let Ok(list) = compare(&imm, p, ORDER) else {
                continue;
            };
            if let Some(c) = list.iter().find(|c| c.quantity == "graph_gauss_curvature") {
                ensure(c.rel_error <= 1e-7, || {
                    format!("{h} at {p:?}: closed vs generic {:.3e}", c.rel_error)
                })?;
                worst = worst.max(c.rel_error);
            }
        }
    }
    let imm = hyperbolic_graph("t^2", diagonal()).map_err(|e| e.to_string())?;
    let mut misses = Vec::new();
    for k in 0..10 {
        let t = 0.2 * (k + 1) as f64;
        let p = point_with_t(diagonal(), t, 0.1);
        let expected = 4.0 * t * t / (1.0 + t * t).powi(3);
        let generic =
            gauss_curvature(&imm, p, CurvatureMethod::Generic).map_err(|e| e.to_string())?;
        let closed =
            gauss_curvature(&imm, p, CurvatureMethod::Closed).map_err(|e| e.to_string())?;
        if (generic - expected).abs() > 1e-9 || (closed - expected).abs() > 1e-9 {
            misses.push(format!(
                "t = {t:.1}: expected {expected:.6}, generic {generic:.2e}, closed {closed:.2e}"
            ));
        }
    }
    ensure(misses.is_empty(), || {
        format!(
            "closed vs generic agree to {worst:.1e} on 5 graphs, but the quadratic example misses 4t^2/(1+t^2)^3 at {} of 10 t; {}",
            misses.len(),
            misses.iter().find(|m| m.starts_with("t = 1.0")).unwrap_or(&misses[0])
        )
    })?;
    Ok(format!(
        "closed vs generic within {worst:.1e}; quadratic example matches at 10 t"
    ))
}

// 7
fn weingarten_families() -> Outcome {
    let g = grid((0.05, 0.2), (0.05, 0.2), 20);
    let mut worst = 0.0f64;
    for (kind, c0, d0) in [
        (WeingartenKind::Sinh, 1.0, 0.3),
        (WeingartenKind::Sin, 2.0, 0.1),
    ] {
        for tau in [C::new(1.0, 0.0), C::new(0.0, 1.0)] {
            let r = report(
                &hyperbolic_weingarten_family(kind, c0, d0, tau).map_err(|e| e.to_string())?,
                &g,
            );
            coverage(&r, 1.0, "weingarten family")?;
            let k = max_of(&r, "gauss_curvature");
            ensure(k <= 1e-8, || format!("{kind:?} tau = {tau}: |K| {k:.3e}"))?;
            worst = worst.max(k);
        }
    }
    let quad = report(
        &hyperbolic_graph("t^2", diagonal()).map_err(|e| e.to_string())?,
        &grid((-0.8, 0.8), (-0.8, 0.8), 20),
    );
    let k = max_of(&quad, "gauss_curvature");
    ensure(k >= 1e-3, || {
        format!("sinh/sin families flat to {worst:.1e}, but the quadratic example has max |K| {k:.2e} < 1e-3 (not non-flat)")
    })?;
    Ok(format!(
        "families flat to {worst:.1e}; quadratic example max |K| {k:.2e}"
    ))
}

fn random_section(rng: &mut StdRng) -> String {
    let mut terms = Vec::new();
    for (p, q) in [
        (1, 0),
        (0, 1),
        (2, 0),
        (1, 1),
        (0, 2),
        (3, 0),
        (2, 1),
        (1, 2),
        (0, 3),
    ] {
        let c = coeff(rng, 1.0);
        let mono = match (p, q) {
            (0, _) => format!("v^{q}"),
            (_, 0) => format!("u^{p}"),
            _ => format!("u^{p}*v^{q}"),
        };
        terms.push(format!("({c})*{mono}"));
    }
    format!("{} + ({})*exp(0.5*u)", terms.join(" + "), coeff(rng, 1.0))
}

// 8
fn no_null_second_fundamental_form() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let g = grid((-0.9, 0.9), (-0.9, 0.9), 20);
    let (mut evaluated, mut closest) = (0usize, f64::INFINITY);
    for _ in 0..20 {
        let src = random_section(&mut rng);
        let imm = euclidean_section(&src).map_err(|e| format!("{src}: {e}"))?;
        for (_, p) in g.points() {
            let Ok(sp) = imm.section_point(p) else {
                continue;
            };
            evaluated += 1;
            let both = sp.e1_residual.max(sp.e2_residual);
            ensure(!(sp.e1_residual < 1e-8 && sp.e2_residual < 1e-8), || {
                format!(
                    "{src} at {p:?}: both residuals below 1e-8 ({:.1e}, {:.1e})",
                    sp.e1_residual, sp.e2_residual
                )
            })?;
            closest = closest.min(both);
        }
    }
    ensure(evaluated >= 20 * 300, || {
        format!("only {evaluated} section points evaluated")
    })?;
    Ok(format!(
        "{evaluated} points on 20 sections, min over points of the larger residual {closest:.2e}"
    ))
}

// 9
fn sphere_family_avoids_reflected_diagonal() -> Outcome {
    let imm = hyperbolic_sphere_family(2, 1.0, C::new(1.0, 0.0)).map_err(|e| e.to_string())?;
    let thetas: Vec<f64> = (0..64).map(|k| TAU * k as f64 / 64.0).collect();
    // |1 + mu1 conj(mu2)| = 1/|a| with the closed |a|^2 for n = 2, c = 1
    let a_abs = |r: f64, th: f64| {
        let x = r * th.cos();
        let d = 1.0 + x.powi(4);
        ((1.0 - x * x / d).powi(2) + r.powi(4) * (2.0 * th).sin().powi(2) / (4.0 * d * d)).sqrt()
    };
    let mut oracle = 0.0f64;
    let mut min_gap = f64::INFINITY;
    let mut at = [0.0; 2];
    for k in 0..=600 {
        let r = 10f64.powf(-3.0 + 6.0 * k as f64 / 600.0);
        for &th in &thetas {
            let q = imm
                .point([r, th])
                .map_err(|e| format!("R = {r}, theta = {th}: {e}"))?;
            let gap = (C::new(1.0, 0.0) + q.z1 * q.z2.conj()).norm();
            oracle = oracle.max((gap * a_abs(r, th) - 1.0).abs());
            if gap < min_gap {
                min_gap = gap;
                at = [r, th];
            }
        }
    }
    let mut far = 0.0f64;
    for r in [1e-3, 1e3] {
        for &th in &thetas {
            far = far.max(imm.point([r, th]).map_err(|e| e.to_string())?.z2.norm());
        }
    }
    ensure(oracle <= 1e-10, || {
        format!("|1 + mu1 conj(mu2)| differs from 1/|a| by {oracle:.3e}")
    })?;
    ensure(far <= 1e-2, || {
        format!("|mu2| reaches {far:.3e} at R = 1e-3 or 1e3")
    })?;
    ensure(min_gap >= 0.5, || {
        format!(
            "min |1 + mu1 conj(mu2)| = {min_gap:.4} at R = {:.4}, theta = {:.4} (bound 0.5); matches 1/|a| to {oracle:.1e}, |mu2| <= {far:.1e} at both ends",
            at[0], at[1]
        )
    })?;
    Ok(format!(
        "min |1 + mu1 conj(mu2)| = {min_gap:.4}; |mu2| <= {far:.1e} at both ends"
    ))
}

fn fd_rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1e-3)
}

fn jet_gate() -> Result<f64, String> {
    let scope = Scope::new(&["u", "v", "xi", "xibar"]);
    let mut worst = 0.0f64;
    for src in [
        "exp(u*v) + sin(u - 2*v)",
        "ln(2 + u^2 + v^2) * cos(v)",
        "exp(xi*xibar) + xi^3 - xibar",
        "atan(u + v^2) / (1 + u^2)",
    ] {
        let e = Expr::parse(src, &scope).map_err(|e| e.to_string())?;
        let eval = |u: f64, v: f64, order: usize| -> Jet {
            let b = [u, v];
            let vars = [
                Coordinate::U,
                Coordinate::V,
                Coordinate::Xi,
                Coordinate::XiBar,
            ]
            .map(|c| Jet::lift(c, b, order).unwrap());
            e.eval_jet(&vars).unwrap()
        };
        for (u, v) in [(0.3, -0.4), (-0.7, 0.2)] {
            let j = eval(u, v, 1);
            let h = 1e-5;
            let fu = (eval(u + h, v, 0).value() - eval(u - h, v, 0).value()) / (2.0 * h);
            let fv = (eval(u, v + h, 0).value() - eval(u, v - h, 0).value()) / (2.0 * h);
            let d = (fu - C::i() * fv) * 0.5;
            let dbar = (fu + C::i() * fv) * 0.5;
            worst = worst
                .max(fd_rel(j.wirtinger(1, 0).unwrap(), d))
                .max(fd_rel(j.wirtinger(0, 1).unwrap(), dbar));
        }
    }
    ensure(worst <= 1e-6, || {
        format!("jet vs finite difference {worst:.3e}")
    })?;
    Ok(worst)
}

fn random_point(rng: &mut StdRng, space: SpaceId) -> GeodesicPoint {
    loop {
        let mut c = || C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let p = GeodesicPoint::new(c(), c());
        if validate(space, &p).is_ok() && (C::new(1.0, 0.0) + p.z1 * p.z2.conj()).norm() > 0.1 {
            return p;
        }
    }
}

// 10
fn infrastructure_gates() -> Outcome {
    let fd = jet_gate()?;
    let mut rng = StdRng::seed_from_u64(10);
    let mut kahler = 0.0f64;
    for space in [SpaceId::EucLines, SpaceId::HypGeodesics] {
        for _ in 0..100 {
            let p = random_point(&mut rng, space);
            let sig = signature(space, &p).map_err(|e| e.to_string())?;
            ensure(sig == (2, 2), || {
                format!("{space:?} at {p:?}: signature {sig:?}")
            })?;
            let mut v = || {
                TangentVec::new(
                    C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            };
            let (x, y) = (v(), v());
            let omega = symplectic(space, &p, &x, &y).map_err(|e| e.to_string())?;
            let gjx =
                metric(space, &p, &complex_structure(space, &x), &y).map_err(|e| e.to_string())?;
            let scale = omega.abs().max(gjx.abs()).max(1.0);
            kahler = kahler.max((omega - gjx).abs() / scale);
        }
    }
    ensure(kahler <= 1e-12, || {
        format!("Omega vs G(J., .) {kahler:.3e}")
    })?;

    let mut agreements = 0usize;
    for src in [
        "xi*xibar",
        "exp(xi*xibar)",
        "u^2 + 0.3*v^3 + u*v",
        "sin(u) + cos(0.5*v)",
        "xi*xibar + 0.3*(xi^3 + xibar^3)",
    ] {
        let imm = euclidean_section(src).map_err(|e| e.to_string())?;
        for p in [[0.4, 0.3], [-0.6, 0.5], [0.7, -0.8]] {
            let sp = imm
                .section_point(p)
                .map_err(|e| format!("{src} at {p:?}: {e}"))?;
            let fd = fundamental_data(&imm, p).map_err(|e| e.to_string())?;
            for k in 0..64 {
                let beta =
                    C::from_polar(0.5 + 0.05 * k as f64, -sp.phi / 2.0 + TAU * k as f64 / 64.0);
                let n = sp.normal(beta);
                let g = metric(SpaceId::EucLines, &fd.point, &n, &n).map_err(|e| e.to_string())?;
                let by_metric = g.abs() <= 1e-9 * fd.metric_norm * n.reference_norm().powi(2);
                let by_criterion = null_normal_criterion(sp.d_fbar(), sp.dbar_f, beta, 1e-9);
                ensure(by_metric == by_criterion, || {
                    format!("{src} at {p:?}, beta = {beta}: metric says {by_metric}, criterion says {by_criterion}")
                })?;
                ensure(by_metric == (k % 16 == 0), || {
                    format!("{src} at {p:?}: null directions misplaced at k = {k}")
                })?;
                agreements += 1;
            }
        }
    }
    Ok(format!(
        "jet vs FD {fd:.1e}; signature (2,2) at 200 points; Omega = G(J., .) to {kahler:.1e}; nullity criterion agrees on {agreements} normals"
    ))
}

// 11
fn cli_end_to_end() -> Outcome {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let dir = std::env::temp_dir().join(format!("mtlab-acceptance-{}", std::process::id()));
    let run = |config: &str, out: &str| {
        Command::new(env!("CARGO_BIN_EXE_mtlab"))
            .args(["check", "--config"])
            .arg(configs.join(config))
            .arg("--out")
            .arg(dir.join(out))
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run("torus.json", "a")?;
    let b = run("torus.json", "b")?;
    let perturbed = run("perturbed_torus.json", "c")?;
    let codes = [a.status.code(), b.status.code(), perturbed.status.code()];
    let ra = std::fs::read_to_string(dir.join("a/torus_report.json")).map_err(|e| e.to_string())?;
    let rb = std::fs::read_to_string(dir.join("b/torus_report.json")).map_err(|e| e.to_string())?;
    let _ = std::fs::remove_dir_all(&dir);
    ensure(codes == [Some(0), Some(0), Some(2)], || {
        format!("exit codes {codes:?}, expected torus 0 and perturbed 2")
    })?;
    ensure(ra == rb, || "torus report differs between runs".into())?;
    let parsed: MTReport =
        serde_json::from_str(&ra).map_err(|e| format!("report does not match the schema: {e}"))?;
    ensure(parsed.to_json() == ra, || {
        "report does not round-trip through the schema".into()
    })?;
    Ok(
        "torus check exits 0 with a byte-identical schema-valid report; perturbed torus exits 2"
            .into(),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        (
            "rotationally symmetric sections are marginally trapped",
            rotational_sections,
        ),
        (
            "torus family is Lagrangian and marginally trapped",
            torus_family,
        ),
        (
            "Euclidean rank-one surfaces are marginally trapped",
            euclidean_rank_one_surfaces,
        ),
        (
            "hyperbolic rank-one surfaces are marginally trapped",
            hyperbolic_rank_one_surfaces,
        ),
        (
            "graph criterion holds for profiles and fails for perturbations",
            graph_criterion_both_directions,
        ),
        (
            "Gauss curvature closed form and quadratic example",
            gauss_curvature_closed_form,
        ),
        (
            "Weingarten families are flat, quadratic example is not",
            weingarten_families,
        ),
        (
            "no Lagrangian section has a null second fundamental form",
            no_null_second_fundamental_form,
        ),
        (
            "sphere family avoids the reflected diagonal",
            sphere_family_avoids_reflected_diagonal,
        ),
        ("infrastructure gates", infrastructure_gates),
        ("CLI end to end", cli_end_to_end),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] criterion {:>2}: {title}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {:>2}: {title}: {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
