//! Surface families and their immersions into the two geodesic spaces.
//!
//! Every family is described by a serializable [`FamilySpec`] and turned
//! into an [`Immersion`], which evaluates the chart coordinates `(z1, z2)`
//! as jets in the two surface parameters.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Expr, Scope};
use crate::jet::{Coordinate, Jet, MAX_ORDER};
use crate::spaces::{validate, GeodesicPoint, SpaceId, TangentVec};

pub mod graph;
pub mod profile;
pub mod rank_one;
pub mod section;

pub use graph::{GraphFamily, GraphPoint, Potential};
pub use profile::{SphereProfile, WeingartenKind};
pub use rank_one::{Curve, EucRankOne, HypRankOne, RankOneEucPoint, RankOneHypPoint};
pub use section::{SectionFamily, SectionPoint, Sheet, Support};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    EucSection,
    EucTorus,
    EucRankOne,
    HypGraph,
    HypProfileGraph,
    HypWeingartenFamily,
    HypSphereFamily,
    HypRankOne,
    GenericImmersion,
}

/// An expression slot of a family kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub name: &'static str,
    pub variables: &'static [&'static str],
    pub required: bool,
}

macro_rules! slot {
    ($name:expr, $vars:expr, $req:expr) => {
        Slot {
            name: $name,
            variables: $vars,
            required: $req,
        }
    };
}

const ST: &[&str] = &["s", "t"];
const S: &[&str] = &["s"];

impl FamilyKind {
    pub const ALL: [FamilyKind; 9] = [
        FamilyKind::EucSection,
        FamilyKind::EucTorus,
        FamilyKind::EucRankOne,
        FamilyKind::HypGraph,
        FamilyKind::HypProfileGraph,
        FamilyKind::HypWeingartenFamily,
        FamilyKind::HypSphereFamily,
        FamilyKind::HypRankOne,
        FamilyKind::GenericImmersion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::EucSection => "EucSection",
            FamilyKind::EucTorus => "EucTorus",
            FamilyKind::EucRankOne => "EucRankOne",
            FamilyKind::HypGraph => "HypGraph",
            FamilyKind::HypProfileGraph => "HypProfileGraph",
            FamilyKind::HypWeingartenFamily => "HypWeingartenFamily",
            FamilyKind::HypSphereFamily => "HypSphereFamily",
            FamilyKind::HypRankOne => "HypRankOne",
            FamilyKind::GenericImmersion => "GenericImmersion",
        }
    }

    pub fn space(self) -> Option<SpaceId> {
        match self {
            FamilyKind::EucSection | FamilyKind::EucTorus | FamilyKind::EucRankOne => {
                Some(SpaceId::EucLines)
            }
            FamilyKind::GenericImmersion => None,
            _ => Some(SpaceId::HypGeodesics),
        }
    }

    /// Expression slots. Generic immersions use the configured variables.
    pub fn slots(self) -> &'static [Slot] {
        match self {
            FamilyKind::EucSection => &[slot!("r", &section::SUPPORT_VARIABLES, true)],
            FamilyKind::EucTorus => &[slot!("L", &["theta"], true)],
            FamilyKind::EucRankOne => &[
                slot!("a", ST, true),
                slot!("b", ST, true),
                slot!("xi_re", S, false),
                slot!("xi_im", S, false),
            ],
            FamilyKind::HypGraph => &[slot!("h", &graph::POTENTIAL_VARIABLES, true)],
            FamilyKind::HypProfileGraph => &[slot!("f", &["x"], true)],
            FamilyKind::HypWeingartenFamily | FamilyKind::HypSphereFamily => &[],
            FamilyKind::HypRankOne => &[
                slot!("mu1_re", S, true),
                slot!("mu1_im", S, true),
                slot!("mu2_re", ST, true),
                slot!("mu2_im", ST, true),
            ],
            FamilyKind::GenericImmersion => &[
                slot!("z1_re", &[], true),
                slot!("z1_im", &[], true),
                slot!("z2_re", &[], true),
                slot!("z2_im", &[], true),
            ],
        }
    }

    /// Named real parameters with a structural meaning.
    pub fn structural_params(self) -> &'static [&'static str] {
        match self {
            FamilyKind::EucTorus => &["r0"],
            FamilyKind::EucRankOne => &["R0"],
            FamilyKind::HypWeingartenFamily => &["c0", "d0"],
            FamilyKind::HypSphereFamily => &["n", "c"],
            _ => &[],
        }
    }

    /// Default parameter names of the surface.
    pub fn default_parameters(self, chart: Chart) -> [&'static str; 2] {
        match (self, chart) {
            (FamilyKind::EucTorus, _) => ["R", "theta"],
            (FamilyKind::EucRankOne | FamilyKind::HypRankOne, _) => ["s", "t"],
            (_, Chart::Polar) => ["R", "theta"],
            _ => ["u", "v"],
        }
    }

    /// Whether a polar chart may be requested.
    pub fn supports_polar(self) -> bool {
        matches!(
            self,
            FamilyKind::EucSection
                | FamilyKind::HypGraph
                | FamilyKind::HypProfileGraph
                | FamilyKind::HypWeingartenFamily
                | FamilyKind::HypSphereFamily
        )
    }
}

/// Parametrization of rank-two families by their base coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// `z1 = u + i v`
    #[default]
    Cartesian,
    /// `z1 = R e^{i theta}`
    Polar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Sinh,
    Sin,
    Equator,
    Latitude,
    Custom,
}

fn default_tau() -> [f64; 2] {
    [1.0, 0.0]
}

fn default_sign() -> f64 {
    1.0
}

fn default_true() -> bool {
    true
}

/// Serializable description of a surface family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    #[serde(default)]
    pub exprs: BTreeMap<String, String>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default = "default_tau")]
    pub tau: [f64; 2],
    #[serde(default = "default_sign")]
    pub orientation_sign: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<Chart>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<[String; 2]>,
    #[serde(default = "default_true")]
    pub quadrature: bool,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        Self {
            kind,
            exprs: BTreeMap::new(),
            params: BTreeMap::new(),
            tau: default_tau(),
            orientation_sign: 1.0,
            variant: None,
            chart: None,
            space: None,
            variables: None,
            quadrature: true,
        }
    }

    pub fn expr(mut self, slot: &str, source: &str) -> Self {
        self.exprs.insert(slot.to_string(), source.to_string());
        self
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn tau(mut self, tau: Complex64) -> Self {
        self.tau = [tau.re, tau.im];
        self
    }

    pub fn variant(mut self, v: Variant) -> Self {
        self.variant = Some(v);
        self
    }

    pub fn chart(mut self, c: Chart) -> Self {
        self.chart = Some(c);
        self
    }

    pub fn space(mut self, s: SpaceId) -> Self {
        self.space = Some(s);
        self
    }

    pub fn variables(mut self, a: &str, b: &str) -> Self {
        self.variables = Some([a.to_string(), b.to_string()]);
        self
    }

    pub fn tau_complex(&self) -> Complex64 {
        Complex64::new(self.tau[0], self.tau[1])
    }

    fn required_param(&self, name: &str) -> Result<f64> {
        self.params.get(name).copied().ok_or_else(|| {
            Error::InvalidFamily(format!("{} needs parameter `{name}`", self.kind.name()))
        })
    }

    fn expr_in(&self, slot: &str, variables: &[&str]) -> Result<Expr> {
        let src = self.exprs.get(slot).ok_or_else(|| {
            Error::InvalidFamily(format!("{} needs expression `{slot}`", self.kind.name()))
        })?;
        Expr::parse(src, &Scope::new(variables).with_params(&self.params))
    }

    fn checked_tau(&self) -> Result<Complex64> {
        let tau = self.tau_complex();
        if (tau.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidFamily(format!(
                "|tau| must be 1, got {}",
                tau.norm()
            )));
        }
        Ok(tau)
    }
}

/// Chart-coordinate jets of a surface at a parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceJets {
    pub z1: Jet,
    pub z2: Jet,
}

impl SurfaceJets {
    pub fn point(&self) -> GeodesicPoint {
        GeodesicPoint::new(self.z1.value(), self.z2.value())
    }

    /// Coordinate tangent vector `d_a X` (`a = 0` or `1`).
    pub fn tangent(&self, a: usize) -> Result<TangentVec> {
        let (p, q) = if a == 0 { (1, 0) } else { (0, 1) };
        Ok(TangentVec::new(
            self.z1.partial(p, q)?,
            self.z2.partial(p, q)?,
        ))
    }

    /// Coordinate second derivative `d_a d_b X`.
    pub fn second(&self, a: usize, b: usize) -> Result<TangentVec> {
        let (p, q) = (2 - a - b, a + b);
        Ok(TangentVec::new(
            self.z1.partial(p, q)?,
            self.z2.partial(p, q)?,
        ))
    }
}

/// `e^{i psi / 2}` from the jet of `e^{i psi}`, continuous around the
/// principal value at the base point.
pub(crate) fn half_angle(unit: &Jet) -> Result<Jet> {
    let w0 = unit.value().sqrt();
    let rel = unit.scale(w0.conj() * w0.conj());
    Ok(rel.sqrt()?.scale(w0))
}

#[derive(Debug, Clone)]
pub struct TorusFamily {
    pub l: Expr,
    pub r0: f64,
    pub sign: f64,
}

impl TorusFamily {
    pub fn chart_jets(&self, p: [f64; 2], order: usize) -> Result<(Jet, Jet)> {
        let r = Jet::lift(Coordinate::U, p, order + 1)?;
        let theta = Jet::lift(Coordinate::V, p, order + 1)?;
        let l = self.l.eval_jet(std::slice::from_ref(&theta))?;
        let lp = l.d_v()?;
        let (r, theta, l) = (r.truncate(order), theta.truncate(order), l.truncate(order));
        let i = Complex64::new(0.0, 1.0);
        let rot = (&theta * i).exp();
        let r2 = &r * &r;
        let inner = &(&(&r2.real_like(1.0) - &r2) * &l) + &(&(&(&r2 + 1.0) * &lp) * i);
        let eta = &(&inner * &rot) * (0.5 * self.sign);
        Ok((&r * &rot, eta))
    }

    /// The same surface viewed as a section on the sheet of `(R, theta)`.
    pub fn as_section(&self) -> SectionFamily {
        SectionFamily {
            support: Support::Torus {
                l: self.l.clone(),
                r0: self.r0,
            },
            sign: self.sign,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GenericFamily {
    pub z1: (Expr, Expr),
    pub z2: (Expr, Expr),
}

impl GenericFamily {
    pub fn chart_jets(&self, p: [f64; 2], order: usize) -> Result<(Jet, Jet)> {
        let vars = [
            Jet::lift(Coordinate::U, p, order)?,
            Jet::lift(Coordinate::V, p, order)?,
        ];
        let i = Complex64::new(0.0, 1.0);
        let z1 = &self.z1.0.eval_jet(&vars)? + &(&self.z1.1.eval_jet(&vars)? * i);
        let z2 = &self.z2.0.eval_jet(&vars)? + &(&self.z2.1.eval_jet(&vars)? * i);
        Ok((z1, z2))
    }
}

#[derive(Debug, Clone)]
pub enum Repr {
    Section(SectionFamily),
    Torus(TorusFamily),
    RankOneEuc(EucRankOne),
    Graph(GraphFamily),
    RankOneHyp(HypRankOne),
    Generic(GenericFamily),
}

/// A parametrized surface in one of the geodesic spaces.
#[derive(Debug, Clone)]
pub struct Immersion {
    kind: FamilyKind,
    space: SpaceId,
    chart: Chart,
    parameters: [String; 2],
    repr: Repr,
}

impl Immersion {
    pub fn from_spec(spec: &FamilySpec) -> Result<Self> {
        let kind = spec.kind;
        let chart = spec
            .chart
            .unwrap_or(if kind == FamilyKind::HypSphereFamily {
                Chart::Polar
            } else {
                Chart::Cartesian
            });
        if chart == Chart::Polar && !kind.supports_polar() {
            return Err(Error::InvalidFamily(format!(
                "{} does not take a polar chart",
                kind.name()
            )));
        }
        let sign = spec.orientation_sign;
        if sign != 1.0 && sign != -1.0 {
            return Err(Error::InvalidFamily(format!(
                "orientation_sign must be +1 or -1, got {sign}"
            )));
        }
        let variant_err = |v: Option<Variant>| {
            Error::InvalidFamily(format!("{} does not accept variant {v:?}", kind.name()))
        };
        let mut parameters = kind.default_parameters(chart).map(str::to_string);
        let repr = match kind {
            FamilyKind::EucSection => Repr::Section(SectionFamily {
                support: Support::Expr(spec.expr_in("r", &section::SUPPORT_VARIABLES)?),
                sign,
            }),
            FamilyKind::EucTorus => Repr::Torus(TorusFamily {
                l: spec.expr_in("L", &["theta"])?,
                r0: spec.params.get("r0").copied().unwrap_or(0.0),
                sign,
            }),
            FamilyKind::EucRankOne => {
                let curve = match spec.variant.unwrap_or(Variant::Equator) {
                    Variant::Equator => Curve::Equator,
                    Variant::Latitude => Curve::latitude(spec.required_param("R0")?)?,
                    Variant::Custom => Curve::Custom {
                        re: spec.expr_in("xi_re", S)?,
                        im: spec.expr_in("xi_im", S)?,
                    },
                    v => return Err(variant_err(Some(v))),
                };
                Repr::RankOneEuc(EucRankOne {
                    curve,
                    a: spec.expr_in("a", ST)?,
                    b: spec.expr_in("b", ST)?,
                    sign,
                })
            }
            FamilyKind::HypGraph => Repr::Graph(GraphFamily {
                potential: Potential::General(spec.expr_in("h", &graph::POTENTIAL_VARIABLES)?),
                tau: spec.checked_tau()?,
            }),
            FamilyKind::HypProfileGraph => Repr::Graph(GraphFamily {
                potential: Potential::Profile(spec.expr_in("f", &["x"])?),
                tau: spec.checked_tau()?,
            }),
            FamilyKind::HypWeingartenFamily => {
                let wk = match spec.variant {
                    Some(Variant::Sinh) | None => WeingartenKind::Sinh,
                    Some(Variant::Sin) => WeingartenKind::Sin,
                    v => return Err(variant_err(v)),
                };
                let c0 = spec.required_param("c0")?;
                if c0 == 0.0 {
                    return Err(Error::InvalidFamily("c0 must be nonzero".into()));
                }
                let d0 = spec.params.get("d0").copied().unwrap_or(0.0);
                let scope = Scope::new(&["x"]).param("c0", c0).param("d0", d0);
                Repr::Graph(GraphFamily {
                    potential: Potential::Profile(Expr::parse(wk.profile_source(), &scope)?),
                    tau: spec.checked_tau()?,
                })
            }
            FamilyKind::HypSphereFamily => {
                let n = spec.required_param("n")?;
                if n.fract() != 0.0 || !(2.0..=64.0).contains(&n) {
                    return Err(Error::InvalidFamily(format!(
                        "n must be an integer >= 2, got {n}"
                    )));
                }
                let profile =
                    SphereProfile::new(n as u32, spec.required_param("c")?, spec.quadrature)?;
                Repr::Graph(GraphFamily {
                    potential: Potential::Sphere(profile),
                    tau: spec.checked_tau()?,
                })
            }
            FamilyKind::HypRankOne => Repr::RankOneHyp(HypRankOne {
                mu1: (spec.expr_in("mu1_re", S)?, spec.expr_in("mu1_im", S)?),
                mu2: (spec.expr_in("mu2_re", ST)?, spec.expr_in("mu2_im", ST)?),
            }),
            FamilyKind::GenericImmersion => {
                if let Some(v) = &spec.variables {
                    parameters = v.clone();
                }
                let vars = [parameters[0].as_str(), parameters[1].as_str()];
                Repr::Generic(GenericFamily {
                    z1: (spec.expr_in("z1_re", &vars)?, spec.expr_in("z1_im", &vars)?),
                    z2: (spec.expr_in("z2_re", &vars)?, spec.expr_in("z2_im", &vars)?),
                })
            }
        };
        if kind != FamilyKind::EucRankOne
            && spec.variant.is_some()
            && kind != FamilyKind::HypWeingartenFamily
        {
            return Err(variant_err(spec.variant));
        }
        let space = match (kind.space(), spec.space) {
            (Some(s), None) => s,
            (Some(s), Some(t)) if s == t => s,
            (Some(_), Some(t)) => {
                return Err(Error::InvalidFamily(format!(
                    "{} lives in {:?}, not {t:?}",
                    kind.name(),
                    kind.space()
                )))
            }
            (None, Some(t)) => t,
            (None, None) => {
                return Err(Error::InvalidFamily(
                    "GenericImmersion needs a `space`".into(),
                ))
            }
        };
        Ok(Self {
            kind,
            space,
            chart,
            parameters,
            repr,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn parameters(&self) -> [&str; 2] {
        [&self.parameters[0], &self.parameters[1]]
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    /// Base coordinate `z1` at a parameter point of a rank-two chart.
    fn base_coordinate(&self, p: [f64; 2]) -> Complex64 {
        match self.chart {
            Chart::Cartesian => Complex64::new(p[0], p[1]),
            Chart::Polar => Complex64::from_polar(p[0], p[1]),
        }
    }

    fn sheet(&self, p: [f64; 2]) -> Sheet {
        match self.chart {
            Chart::Cartesian => Sheet::principal(self.base_coordinate(p)),
            Chart::Polar => Sheet::from_polar(p[0], p[1]),
        }
    }

    /// Jets at `order` of a rank-two family given in its base coordinate.
    fn rank_two_jets(
        &self,
        p: [f64; 2],
        order: usize,
        cartesian: impl Fn(&Jet) -> Result<(Jet, Jet)>,
    ) -> Result<(Jet, Jet)> {
        let z = self.base_coordinate(p);
        let xi = Jet::lift(Coordinate::Xi, [z.re, z.im], order + 1)?;
        let (z1, z2) = cartesian(&xi)?;
        match self.chart {
            Chart::Cartesian => Ok((z1, z2)),
            Chart::Polar => {
                let r = Jet::lift(Coordinate::U, p, order)?;
                let th = Jet::lift(Coordinate::V, p, order)?;
                let u = &r * &th.cos();
                let v = &r * &th.sin();
                Ok((z1.compose(&u, &v)?, z2.compose(&u, &v)?))
            }
        }
    }

    /// Chart-coordinate jets at the parameter point `p`. Degenerate
    /// sections and graphs are rejected once derivatives are requested.
    pub fn eval(&self, p: [f64; 2], order: usize) -> Result<SurfaceJets> {
        if order > MAX_ORDER - 1 {
            return Err(Error::OrderTooLarge(order));
        }
        let (z1, z2) = match &self.repr {
            Repr::Section(fam) => {
                let sheet = self.sheet(p);
                let z = self.base_coordinate(p);
                let f1 = fam.graph_jet(&Jet::lift(Coordinate::Xi, [z.re, z.im], 2)?, sheet)?;
                let sigma = f1.conj().wirtinger(1, 0)?;
                if order >= 1 && sigma.norm() < section::SIGMA_FLOOR {
                    return Err(Error::DegenerateSection(sigma.norm()));
                }
                self.rank_two_jets(p, order, |xi| {
                    Ok((xi.truncate(order), fam.graph_jet(xi, sheet)?))
                })?
            }
            Repr::Graph(fam) => {
                let z = self.base_coordinate(p);
                let (c1, c2) = fam.chart_jets(&Jet::lift(Coordinate::Xi, [z.re, z.im], 2)?)?;
                let mubar2 = c2.conj();
                let d = 1.0 + c1.value() * mubar2.value();
                let s0 = mubar2.wirtinger(1, 0)? / (d * d);
                if order >= 1 && s0.norm() < graph::SIGMA0_FLOOR {
                    return Err(Error::DegenerateGraph(s0.norm()));
                }
                self.rank_two_jets(p, order, |mu| fam.chart_jets(mu))?
            }
            Repr::Torus(fam) => fam.chart_jets(p, order)?,
            Repr::RankOneEuc(fam) => fam.chart_jets(p, order)?,
            Repr::RankOneHyp(fam) => fam.chart_jets(p, order)?,
            Repr::Generic(fam) => fam.chart_jets(p, order)?,
        };
        validate(self.space, &GeodesicPoint::new(z1.value(), z2.value()))?;
        Ok(SurfaceJets { z1, z2 })
    }

    /// The geodesic at the parameter point `p`.
    pub fn point(&self, p: [f64; 2]) -> Result<GeodesicPoint> {
        Ok(self.eval(p, 0)?.point())
    }

    /// Closed-form section data, for Euclidean sections and tori (`R != 0`).
    pub fn section_point(&self, p: [f64; 2]) -> Result<SectionPoint> {
        match &self.repr {
            Repr::Section(fam) => fam.point(self.base_coordinate(p), self.sheet(p)),
            Repr::Torus(fam) => {
                if p[0] == 0.0 {
                    return Err(Error::ClosedFormUnavailable("torus section data at R = 0"));
                }
                fam.as_section().point(
                    Complex64::from_polar(p[0], p[1]),
                    Sheet::from_polar(p[0], p[1]),
                )
            }
            _ => Err(Error::ClosedFormUnavailable(
                "section data of a non-section family",
            )),
        }
    }

    /// Closed-form graph data, for hyperbolic graphs.
    pub fn graph_point(&self, p: [f64; 2]) -> Result<GraphPoint> {
        match &self.repr {
            Repr::Graph(fam) => fam.point(self.base_coordinate(p)),
            _ => Err(Error::ClosedFormUnavailable(
                "graph data of a non-graph family",
            )),
        }
    }

    /// Support function up to its constant, for hyperbolic graphs.
    pub fn graph_support(&self, p: [f64; 2]) -> Result<f64> {
        match &self.repr {
            Repr::Graph(fam) => fam.support(self.base_coordinate(p)),
            _ => Err(Error::ClosedFormUnavailable(
                "support of a non-graph family",
            )),
        }
    }

    pub fn rank_one_euc_point(&self, p: [f64; 2]) -> Result<RankOneEucPoint> {
        match &self.repr {
            Repr::RankOneEuc(fam) => fam.point(p),
            _ => Err(Error::ClosedFormUnavailable("Euclidean rank-one data")),
        }
    }

    pub fn rank_one_hyp_point(&self, p: [f64; 2]) -> Result<RankOneHypPoint> {
        match &self.repr {
            Repr::RankOneHyp(fam) => fam.point(p),
            _ => Err(Error::ClosedFormUnavailable("hyperbolic rank-one data")),
        }
    }
}

/// `r(xi, conj xi)` as a Lagrangian section.
pub fn euclidean_section(r: &str) -> Result<Immersion> {
    Immersion::from_spec(&FamilySpec::new(FamilyKind::EucSection).expr("r", r))
}

/// Torus with graph function `[(1 - R^2) L + i (1 + R^2) L'] e^{i theta} / 2`.
pub fn euclidean_torus(l: &str, r0: f64) -> Result<Immersion> {
    Immersion::from_spec(
        &FamilySpec::new(FamilyKind::EucTorus)
            .expr("L", l)
            .param("r0", r0),
    )
}

/// Rank-one surface `(xi(s), (a + i b) xi'(s))` over a preset curve.
pub fn euclidean_rank_one(curve: Variant, r0: Option<f64>, a: &str, b: &str) -> Result<Immersion> {
    let mut spec = FamilySpec::new(FamilyKind::EucRankOne)
        .variant(curve)
        .expr("a", a)
        .expr("b", b);
    if let Some(r0) = r0 {
        spec = spec.param("R0", r0);
    }
    Immersion::from_spec(&spec)
}

/// Graph of the potential `h(u, v, mu, mubar, t)`.
pub fn hyperbolic_graph(h: &str, tau: Complex64) -> Result<Immersion> {
    Immersion::from_spec(&FamilySpec::new(FamilyKind::HypGraph).expr("h", h).tau(tau))
}

/// Graph of the potential `f(tau mu + conj(tau mu))`.
pub fn hyperbolic_profile_graph(f: &str, tau: Complex64) -> Result<Immersion> {
    Immersion::from_spec(
        &FamilySpec::new(FamilyKind::HypProfileGraph)
            .expr("f", f)
            .tau(tau),
    )
}

pub fn hyperbolic_weingarten_family(
    kind: WeingartenKind,
    c0: f64,
    d0: f64,
    tau: Complex64,
) -> Result<Immersion> {
    let v = match kind {
        WeingartenKind::Sinh => Variant::Sinh,
        WeingartenKind::Sin => Variant::Sin,
    };
    Immersion::from_spec(
        &FamilySpec::new(FamilyKind::HypWeingartenFamily)
            .variant(v)
            .param("c0", c0)
            .param("d0", d0)
            .tau(tau),
    )
}

/// Sphere family in polar parameters `(R, theta)`.
pub fn hyperbolic_sphere_family(n: u32, c: f64, tau: Complex64) -> Result<Immersion> {
    Immersion::from_spec(
        &FamilySpec::new(FamilyKind::HypSphereFamily)
            .param("n", n as f64)
            .param("c", c)
            .tau(tau),
    )
}

/// Rank-one surface `(mu1(s), mu2(s, t))`.
pub fn hyperbolic_rank_one(mu1: [&str; 2], mu2: [&str; 2]) -> Result<Immersion> {
    Immersion::from_spec(
        &FamilySpec::new(FamilyKind::HypRankOne)
            .expr("mu1_re", mu1[0])
            .expr("mu1_im", mu1[1])
            .expr("mu2_re", mu2[0])
            .expr("mu2_im", mu2[1]),
    )
}

/// Surface given by the four real chart components in `(u, v)`.
pub fn generic_immersion(z1: [&str; 2], z2: [&str; 2], space: SpaceId) -> Result<Immersion> {
    Immersion::from_spec(
        &FamilySpec::new(FamilyKind::GenericImmersion)
            .space(space)
            .expr("z1_re", z1[0])
            .expr("z1_im", z1[1])
            .expr("z2_re", z2[0])
            .expr("z2_im", z2[1]),
    )
}
