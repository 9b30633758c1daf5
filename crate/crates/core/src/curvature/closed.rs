//! Cross-checks of the closed-form family formulas against the generic
//! engine.
//!
//! Each comparison carries the factor that aligns the closed value with the
//! generic one. The rank-one Euclidean formulas are written in the Frenet
//! splitting, whose metric is twice the chart metric. The extrinsic
//! curvature there uses the opposite symplectic sign, and the mean curvature
//! is a half-trace.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::spaces::{complex_structure, TangentVec};
use crate::surfaces::{Immersion, Repr, SurfaceJets};

use super::{fundamental_from_jets, gauss_from_jets, FundamentalData, CURVATURE_ORDER};

/// Generic `E, F, G` over the Frenet-splitting values.
pub const RANK_ONE_METRIC_FACTOR: f64 = 0.5;
/// Generic `G(J Psi_s, nabla_s Psi_t)` over the closed `h_112`.
pub const RANK_ONE_H112_FACTOR: f64 = -0.5;
/// Generic trace `H` over the closed mean curvature vector.
pub const RANK_ONE_MEAN_CURVATURE_FACTOR: f64 = -4.0;

/// Below this `|a_t| / |b_t|` a rank-one surface counts as Lagrangian.
const LAGRANGIAN_RANK_ONE: f64 = 1e-12;

/// One closed-versus-generic discrepancy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub quantity: &'static str,
    /// `generic ~ factor * closed`
    pub factor: f64,
    pub abs_error: f64,
    /// `abs_error / max(scale, 1)`
    pub rel_error: f64,
    /// Whether the closed formula's hypotheses hold here.
    pub hypotheses_hold: bool,
}

/// `scale` is floored at 1, so quantities that vanish at a point are
/// compared absolutely there.
fn entry(
    quantity: &'static str,
    factor: f64,
    abs_error: f64,
    scale: f64,
    hypotheses_hold: bool,
) -> Comparison {
    let rel_error = if abs_error == 0.0 {
        0.0
    } else {
        abs_error / scale.max(1.0)
    };
    Comparison {
        quantity,
        factor,
        abs_error,
        rel_error,
        hypotheses_hold,
    }
}

fn vec_error(generic: &TangentVec, closed: &TangentVec, factor: f64) -> f64 {
    (*generic - closed.scale(factor)).reference_norm()
}

/// Reference size for vectors built from `II`.
fn ii_scale(fd: &FundamentalData) -> f64 {
    fd.curvature_scale.max(f64::MIN_POSITIVE)
}

/// Runs every comparison available for the family at `p`.
pub fn compare(imm: &Immersion, p: [f64; 2], order: usize) -> Result<Vec<Comparison>> {
    let jets = imm.eval(p, order.max(CURVATURE_ORDER))?;
    compare_with_jets(imm, p, &jets)
}

pub(crate) fn compare_with_jets(
    imm: &Immersion,
    p: [f64; 2],
    jets: &SurfaceJets,
) -> Result<Vec<Comparison>> {
    let fd = fundamental_from_jets(imm.space(), jets)?;
    let mut out = Vec::new();
    match imm.repr() {
        Repr::Section(_) | Repr::Torus(_) => {
            let sp = imm.section_point(p)?;
            let c = [
                fd.tangent_coordinates(&sp.frame[0])?,
                fd.tangent_coordinates(&sp.frame[1])?,
            ];
            let closed = sp.second_fundamental();
            let scale = fd.ii_norm().max(f64::MIN_POSITIVE);
            let err = [(0, 0), (1, 1), (0, 1)]
                .iter()
                .map(|&(a, b)| vec_error(&fd.ii_at(c[a], c[b]), &closed[a][b], 1.0))
                .fold(0.0, f64::max);
            let frame_scale = [(0, 0), (1, 1), (0, 1)]
                .iter()
                .map(|&(a, b)| fd.ii_at(c[a], c[b]).reference_norm())
                .fold(0.0, f64::max)
                .max(f64::MIN_POSITIVE);
            out.push(entry(
                "section_second_fundamental",
                1.0,
                err,
                frame_scale.max(scale),
                true,
            ));
            let herr = vec_error(&fd.h, &sp.mean_curvature(), 1.0);
            out.push(entry(
                "section_mean_curvature",
                1.0,
                herr,
                ii_scale(&fd),
                true,
            ));
        }
        Repr::Graph(_) => {
            let gp = imm.graph_point(p)?;
            let k = gauss_from_jets(imm.space(), jets)?;
            let kerr = (k - gp.gauss_curvature).abs();
            out.push(entry(
                "graph_gauss_curvature",
                1.0,
                kerr,
                k.abs().max(gp.gauss_curvature.abs()).max(1.0),
                true,
            ));
            let jh = complex_structure(imm.space(), &fd.h);
            let cj = fd.tangent_coordinates(&jh)?;
            let a = fd.tangents[0].v1 * cj[0] + fd.tangents[1].v1 * cj[1];
            let tangency = vec_error(
                &jh,
                &(fd.tangents[0].scale(cj[0]) + fd.tangents[1].scale(cj[1])),
                1.0,
            );
            let aerr = (a - gp.jh_coeff).norm() + tangency;
            out.push(entry(
                "graph_jh",
                1.0,
                aerr,
                a.norm().max(gp.jh_coeff.norm()).max(1.0),
                true,
            ));
            if let Some(via) = gp.sigma0_via_chart {
                out.push(entry(
                    "graph_sigma0",
                    1.0,
                    (via - gp.sigma0).norm(),
                    gp.sigma0.norm(),
                    true,
                ));
            }
        }
        Repr::RankOneEuc(_) => {
            let rp = imm.rank_one_euc_point(p)?;
            let f = RANK_ONE_METRIC_FACTOR;
            let err = (fd.g[0][0] - f * rp.e)
                .abs()
                .max((fd.g[0][1] - f * rp.f).abs())
                .max((fd.g[1][1] - f * rp.g).abs());
            let scale = fd.g.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
            out.push(entry(
                "rank_one_first_fundamental",
                f,
                err,
                scale.max(f64::MIN_POSITIVE),
                true,
            ));

            let gamma = crate::spaces::christoffels(imm.space(), &fd.point)?;
            let cov = jets.second(0, 1)?
                + crate::spaces::contract(&gamma, &fd.tangents[0], &fd.tangents[1]);
            let js = complex_structure(imm.space(), &fd.tangents[0]);
            let h112 = crate::spaces::metric(imm.space(), &fd.point, &js, &cov)?;
            let hscale = fd.metric_norm * js.reference_norm() * cov.reference_norm();
            out.push(entry(
                "rank_one_h112",
                RANK_ONE_H112_FACTOR,
                (h112 - RANK_ONE_H112_FACTOR * rp.h112).abs(),
                hscale.max(f64::MIN_POSITIVE),
                true,
            ));

            let lagrangian = rp.a_t.abs() <= LAGRANGIAN_RANK_ONE * rp.b_t.abs();
            let herr = vec_error(&fd.h, &rp.mean_curvature, RANK_ONE_MEAN_CURVATURE_FACTOR);
            out.push(entry(
                "rank_one_mean_curvature",
                RANK_ONE_MEAN_CURVATURE_FACTOR,
                herr,
                ii_scale(&fd),
                lagrangian,
            ));
        }
        Repr::RankOneHyp(_) => {
            let rp = imm.rank_one_hyp_point(p)?;
            let err = (fd.g[0][0] - rp.g_ss)
                .abs()
                .max((fd.g[0][1] - rp.g_st).abs())
                .max((fd.g[1][1] - rp.g_tt).abs());
            let scale = fd.g.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
            out.push(entry(
                "rank_one_induced_metric",
                1.0,
                err,
                scale.max(f64::MIN_POSITIVE),
                true,
            ));
            // the closed mean curvature has no mu1-component
            out.push(entry(
                "rank_one_h_mu1",
                1.0,
                fd.h.v1.norm(),
                ii_scale(&fd),
                true,
            ));
        }
        Repr::Generic(_) => {}
    }
    Ok(out)
}

/// `a` with `J H = a d + conj(a) dbar` computed by the generic engine.
pub fn generic_jh_coefficient(fd: &FundamentalData) -> Result<Complex64> {
    let jh = complex_structure(fd.space, &fd.h);
    let cj = fd.tangent_coordinates(&jh)?;
    Ok(fd.tangents[0].v1 * cj[0] + fd.tangents[1].v1 * cj[1])
}
