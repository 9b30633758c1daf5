use thiserror::Error;

/// Everything that can go wrong while building or measuring a surface.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // jet algebra
    #[error("jets differ in base point or order ({0})")]
    OrderMismatch(String),
    #[error("division by a jet whose value vanishes")]
    DivisionByZeroJet,
    #[error("{func} evaluated on its branch cut at {value}")]
    BranchPointError { func: &'static str, value: String },
    #[error("derivative of total order {requested} needs a jet of at least that order (have {available})")]
    InsufficientOrder { requested: usize, available: usize },
    #[error("jet order {0} exceeds the supported maximum")]
    OrderTooLarge(usize),
    #[error("{0} requires a real-valued jet")]
    NonRealJet(&'static str),

    // expressions
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("exponent at byte {offset} is not an integer literal")]
    NonIntegerExponent { offset: usize },

    // ambient spaces
    #[error("point lies on (or within 1e-12 of) the reflected diagonal")]
    OnReflectedDiagonal,
    #[error("chart coordinate {0:e} is too close to chart infinity")]
    ChartOverflow(f64),
    #[error("ambient metric matrix is singular")]
    SingularMetric,

    // surfaces
    #[error("degenerate section: |sigma| = {0:e}")]
    DegenerateSection(f64),
    #[error("degenerate rank-one surface: {0}")]
    DegenerateRankOne(String),
    #[error("degenerate graph: |sigma0| = {0:e}")]
    DegenerateGraph(f64),
    #[error("curve is not parametrized by arc length (speed {0})")]
    NotArcLength(f64),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("no closed-form potential for n = {n}, c = {c} and quadrature is disabled")]
    QuadratureUnavailable { n: u32, c: f64 },
    #[error("invalid family specification: {0}")]
    InvalidFamily(String),

    // curvature
    #[error("induced metric is degenerate (det = {0:e})")]
    DegenerateInducedMetric(f64),
    #[error("no closed form available: {0}")]
    ClosedFormUnavailable(&'static str),
    #[error("Lagrangian angle jumps by {jump:.3} rad between neighbours at grid index {index:?}")]
    PhaseUnwrap { index: (usize, usize), jump: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
