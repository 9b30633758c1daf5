//! Finite-difference oracles for the jet engine and for the generic
//! fundamental forms.
//!
//! The surface oracle never touches jets: it differentiates the point map
//! and the ambient metric matrix numerically, builds the Levi-Civita symbols
//! from those differences and projects to the normal bundle by plain linear
//! algebra.

use mtlab_core::curvature::fundamental_data;
use mtlab_core::expr::{Expr, Scope};
use mtlab_core::spaces::{metric_matrix, GeodesicPoint, SpaceId, TangentVec};
use mtlab_core::surfaces::{
    euclidean_rank_one, euclidean_section, euclidean_torus, generic_immersion, hyperbolic_graph,
    hyperbolic_rank_one, Immersion, Variant,
};
use mtlab_core::{Complex64, Coordinate, Jet};
use nalgebra::{Matrix2, Matrix4, Vector4};

type C = Complex64;

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1e-3)
}

/// First and second Wirtinger derivatives from central differences.
struct FdWirtinger {
    d: C,
    dbar: C,
    dd: C,
    ddbar: C,
    dbardbar: C,
}

fn fd_wirtinger(f: &dyn Fn(f64, f64) -> C, u: f64, v: f64) -> FdWirtinger {
    let h1 = 1e-5;
    let fu = (f(u + h1, v) - f(u - h1, v)) / (2.0 * h1);
    let fv = (f(u, v + h1) - f(u, v - h1)) / (2.0 * h1);
    let h2 = 1e-3;
    let fuu = second(|h| f(u + h, v), h2);
    let fvv = second(|h| f(u, v + h), h2);
    let fuv = {
        let g = |h: f64, k: f64| f(u + h, v + k);
        let m = |h: f64| (g(h, h) - g(h, -h) - g(-h, h) + g(-h, -h)) / (4.0 * h * h);
        (m(h2 / 2.0) * 4.0 - m(h2)) / 3.0
    };
    let i = C::i();
    FdWirtinger {
        d: (fu - i * fv) * 0.5,
        dbar: (fu + i * fv) * 0.5,
        dd: (fuu - i * fuv * 2.0 - fvv) * 0.25,
        ddbar: (fuu + fvv) * 0.25,
        dbardbar: (fuu + i * fuv * 2.0 - fvv) * 0.25,
    }
}

/// Richardson-extrapolated second difference of `g` at 0.
fn second(g: impl Fn(f64) -> C, h: f64) -> C {
    let s = |h: f64| (g(h) - g(0.0) * 2.0 + g(-h)) / (h * h);
    (s(h / 2.0) * 4.0 - s(h)) / 3.0
}

#[test]
fn jet_wirtinger_derivatives_match_finite_differences() {
    let sources = [
        "exp(u*v) + sin(u - 2*v)",
        "ln(2 + u^2 + v^2) * cos(v)",
        "atan(u + v^2) / (1 + u^2)",
        "tan(0.3*u) * sinh(v) + sqrt(3 + u)",
        "exp(xi*xibar) + xi^3 - xibar",
        "cos(xi) * exp(xibar)",
    ];
    let scope = Scope::new(&["u", "v", "xi", "xibar"]);
    for src in sources {
        let e = Expr::parse(src, &scope).unwrap();
        let eval_at = |u: f64, v: f64, order: usize| {
            let b = [u, v];
            let vars = [
                Jet::lift(Coordinate::U, b, order).unwrap(),
                Jet::lift(Coordinate::V, b, order).unwrap(),
                Jet::lift(Coordinate::Xi, b, order).unwrap(),
                Jet::lift(Coordinate::XiBar, b, order).unwrap(),
            ];
            e.eval_jet(&vars).unwrap()
        };
        for (u, v) in [(0.3, -0.4), (-0.7, 0.2), (0.1, 0.9)] {
            let j = eval_at(u, v, 2);
            let fd = fd_wirtinger(&|a, b| eval_at(a, b, 0).value(), u, v);
            let pairs = [
                (j.wirtinger(1, 0).unwrap(), fd.d),
                (j.wirtinger(0, 1).unwrap(), fd.dbar),
                (j.wirtinger(2, 0).unwrap(), fd.dd),
                (j.wirtinger(1, 1).unwrap(), fd.ddbar),
                (j.wirtinger(0, 2).unwrap(), fd.dbardbar),
            ];
            for (k, (jet, oracle)) in pairs.iter().enumerate() {
                assert!(
                    rel(*jet, *oracle) < 1e-6,
                    "{src} at ({u},{v}) derivative {k}: {jet} vs {oracle}"
                );
            }
        }
    }
}

fn real(p: &GeodesicPoint) -> Vector4<f64> {
    Vector4::new(p.z1.re, p.z1.im, p.z2.re, p.z2.im)
}

fn from_real(x: &Vector4<f64>) -> GeodesicPoint {
    GeodesicPoint::new(C::new(x[0], x[1]), C::new(x[2], x[3]))
}

struct Oracle {
    h: Vector4<f64>,
    mt_defect: f64,
    g: Matrix2<f64>,
}

/// Mean curvature from differences of the point map and the metric matrix.
fn oracle(imm: &Immersion, space: SpaceId, p: [f64; 2]) -> Oracle {
    let x = |a: f64, b: f64| real(&imm.point([p[0] + a, p[1] + b]).unwrap());
    let hd = 1e-3;
    let d1 = |dir: usize| {
        let m = |h: f64| {
            let (a, b) = if dir == 0 { (h, 0.0) } else { (0.0, h) };
            (x(a, b) - x(-a, -b)) / (2.0 * h)
        };
        (m(hd / 2.0) * 4.0 - m(hd)) / 3.0
    };
    let d2 = |i: usize, j: usize| {
        let m = |h: f64| {
            if i == j {
                let (a, b) = if i == 0 { (h, 0.0) } else { (0.0, h) };
                (x(a, b) - x(0.0, 0.0) * 2.0 + x(-a, -b)) / (h * h)
            } else {
                (x(h, h) - x(h, -h) - x(-h, h) + x(-h, -h)) / (4.0 * h * h)
            }
        };
        (m(hd / 2.0) * 4.0 - m(hd)) / 3.0
    };
    let x0 = x(0.0, 0.0);
    let gm = metric_matrix(space, &from_real(&x0)).unwrap();
    let ginv_amb = gm.try_inverse().unwrap();
    // d_l G by Richardson differences in each ambient direction
    let dg: Vec<Matrix4<f64>> = (0..4)
        .map(|l| {
            let m = |h: f64| {
                let mut e = Vector4::zeros();
                e[l] = h;
                (metric_matrix(space, &from_real(&(x0 + e))).unwrap()
                    - metric_matrix(space, &from_real(&(x0 - e))).unwrap())
                    / (2.0 * h)
            };
            (m(1e-4) * 4.0 - m(2e-4)) / 3.0
        })
        .collect();
    let gamma = |v: &Vector4<f64>, w: &Vector4<f64>| {
        let mut low = Vector4::zeros();
        for l in 0..4 {
            let mut s = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    s += 0.5 * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]) * v[i] * w[j];
                }
            }
            low[l] = s;
        }
        ginv_amb * low
    };
    let t = [d1(0), d1(1)];
    let g = Matrix2::from_fn(|a, b| (t[a].transpose() * gm * t[b])[0]);
    let ginv = g.try_inverse().unwrap();
    let normal = |v: Vector4<f64>| {
        let mut out = v;
        for a in 0..2 {
            for b in 0..2 {
                out -= t[b] * (ginv[(a, b)] * (t[a].transpose() * gm * v)[0]);
            }
        }
        out
    };
    let mut h = Vector4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            h += normal(d2(a, b) + gamma(&t[a], &t[b])) * ginv[(a, b)];
        }
    }
    Oracle {
        mt_defect: (h.transpose() * gm * h)[0],
        h,
        g,
    }
}

fn check(imm: &Immersion, space: SpaceId, points: &[[f64; 2]]) {
    for &p in points {
        let fd = fundamental_data(imm, p).unwrap();
        let o = oracle(imm, space, p);
        let hv = TangentVec::from_real([o.h[0], o.h[1], o.h[2], o.h[3]]);
        let gscale = o.g.norm();
        for a in 0..2 {
            for b in 0..2 {
                assert!(
                    (fd.g[a][b] - o.g[(a, b)]).abs() <= 1e-6 * gscale,
                    "{p:?} g: {:?} vs {}",
                    fd.g,
                    o.g
                );
            }
        }
        let ginv = fd.g_inv.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
        let scale = ginv * fd.ii_norm();
        let err = (fd.h - hv).reference_norm();
        assert!(
            err <= 1e-6 * scale.max(1e-3),
            "{p:?} H: {:?} vs {:?} (scale {scale})",
            fd.h,
            hv
        );
        let mscale = fd.metric_norm * scale.max(1e-3).powi(2);
        assert!(
            (fd.mt_defect - o.mt_defect).abs() <= 1e-6 * mscale,
            "{p:?} G(H,H): {} vs {}",
            fd.mt_defect,
            o.mt_defect
        );
    }
}

const POINTS: [[f64; 2]; 3] = [[0.3, 0.4], [-0.6, 0.9], [0.8, -0.35]];

#[test]
fn section_mean_curvature_matches_oracle() {
    let imm = euclidean_section("xi*xibar + 0.3*(xi^3 + xibar^3) + 0.2*u*v^2").unwrap();
    check(&imm, SpaceId::EucLines, &POINTS);
    let imm = euclidean_section("(xi + xibar)/2").unwrap();
    check(&imm, SpaceId::EucLines, &POINTS);
}

#[test]
fn torus_mean_curvature_matches_oracle() {
    let imm = euclidean_torus("1 + 0.5*cos(2*theta)", 0.0).unwrap();
    check(
        &imm,
        SpaceId::EucLines,
        &[[0.7, 0.3], [-1.2, 2.0], [1.5, 4.0]],
    );
}

#[test]
fn rank_one_mean_curvature_matches_oracle() {
    let imm = euclidean_rank_one(Variant::Equator, None, "s*t", "t").unwrap();
    check(&imm, SpaceId::EucLines, &[[0.3, 0.6], [1.0, 1.4]]);
    let imm = euclidean_rank_one(Variant::Latitude, Some(0.5), "sin(s)", "t + 0.3*s*t").unwrap();
    check(&imm, SpaceId::EucLines, &[[0.3, 0.6], [1.0, 1.4]]);
    let imm = hyperbolic_rank_one(["s", "0.2*s^2"], ["t", "1 + 0.1*s*t"]).unwrap();
    check(&imm, SpaceId::HypGeodesics, &[[0.2, 0.3], [-0.3, 0.5]]);
}

#[test]
fn graph_mean_curvature_matches_oracle() {
    let tau = C::new(1.0, 1.0) / 2f64.sqrt();
    let imm = hyperbolic_graph("t^2 + 0.2*mu*mubar", tau).unwrap();
    check(&imm, SpaceId::HypGeodesics, &[[0.1, 0.2], [-0.2, 0.1]]);
    let imm = hyperbolic_graph("u*v + 0.3*u^2 + v", C::new(1.0, 0.0)).unwrap();
    check(&imm, SpaceId::HypGeodesics, &[[0.1, 0.2], [0.3, -0.1]]);
}

#[test]
fn generic_mean_curvature_matches_oracle() {
    let imm = generic_immersion(["u", "v"], ["0.3*u*v", "u^2 - 0.5*v"], SpaceId::EucLines).unwrap();
    check(&imm, SpaceId::EucLines, &POINTS);
    let imm = generic_immersion(
        ["u", "0.5*v"],
        ["0.2*u + 0.1*v^2", "0.3*v*u"],
        SpaceId::HypGeodesics,
    )
    .unwrap();
    check(&imm, SpaceId::HypGeodesics, &[[0.1, 0.2], [-0.3, 0.4]]);
}
