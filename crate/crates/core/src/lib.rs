//! Differential geometry in the Galilean 3-space G₃.
//!
//! G₃ is an affine 3-space carrying the degenerate Cayley–Klein metric of
//! signature (0,0,+,+): vectors with a nonzero first component are measured
//! by that component alone, while *isotropic* vectors (first component zero)
//! are measured with the Euclidean metric of the yz-plane.
//!
//! The crate evaluates:
//!
//! * the degenerate vector algebra itself ([`galgebra`]),
//! * exact derivatives of user expressions via truncated Taylor jets,
//!   with an independent finite-difference oracle ([`jets`]),
//! * a small expression / scene language for defining parametric curves
//!   and surfaces ([`exprscene`]),
//! * Frenet and Darboux data of admissible curves, intrinsic curve
//!   reconstruction and a curve taxonomy ([`curves`]),
//! * fundamental forms, Gaussian/mean curvature, Christoffel symbols and
//!   geodesic integration for parametric surfaces ([`surfaces`]),
//! * normal/binormal ruled surfaces along geodesics together with the
//!   curvature-identity verification and the plane-vs-circular-hyperboloid
//!   classification pipeline ([`ruled`]).

pub mod error;
pub mod galgebra;
pub mod interval;
pub mod exprscene;
pub mod jets;
pub mod curves;
pub mod surfaces;
pub mod ruled;

pub use error::{Error, Result};
pub use galgebra::GVec3;
pub use interval::Interval;
