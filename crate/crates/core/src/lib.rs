//! Numerical laboratory for the neutral Kähler geometry of the spaces of
//! oriented geodesics of Euclidean and hyperbolic 3-space.
//!
//! The crate is layered bottom-up:
//!
//! * [`jet`]: truncated bivariate Taylor jets with Wirtinger derivatives,
//!   the only differentiation mechanism used anywhere.
//! * [`expr`]: a small expression language compiled to jet evaluators.
//! * [`spaces`]: the two ambient neutral Kähler 4-manifolds.
//! * [`surfaces`]: parametrized surface families.
//! * [`curvature`]: fundamental forms, mean curvature, Gauss curvature and
//!   the marginally-trapped criteria, plus grid classification reports.

pub mod curvature;
pub mod error;
pub mod expr;
pub mod jet;
mod series;
pub mod spaces;
pub mod surfaces;

pub use error::{Error, Result};
pub use jet::{Coordinate, Jet};
pub use num_complex::Complex64;
