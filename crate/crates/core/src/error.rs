//! Crate-wide error type. Every failure carries the parameter value it
//! occurred at, so numeric diagnostics always name a concrete point.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The elliptic involution is only defined on isotropic vectors.
    #[error("non-isotropic input: x = {x} (the involution acts only on vectors with x = 0)")]
    NonIsotropicInput { x: f64 },

    /// A function was evaluated outside its domain (ln of a nonpositive
    /// value, sqrt of a negative value, a nonpositive base under a
    /// non-integer power).
    #[error("domain error: {message}")]
    Domain { message: String },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("bad domain for `{name}`: {lo} {hi} (need lo < hi)")]
    BadDomain { name: String, lo: f64, hi: f64 },

    #[error("`{0}` is not defined in the scene")]
    MissingName(String),

    /// A curve failed the x' > 0 admissibility requirement.
    #[error("curve not admissible: x'({s}) = {xprime}, need x' > 0")]
    NotAdmissible { s: f64, xprime: f64 },

    /// Curvature dropped below the frame threshold where a full Frenet
    /// frame was demanded.
    #[error("Frenet frame undefined at s = {s}: kappa = {kappa} < {kappa_min}")]
    FrameUndefined { s: f64, kappa: f64, kappa_min: f64 },

    #[error("surface singular at (s, t) = ({s}, {t}): w = {w}")]
    SurfaceSingular { s: f64, t: f64, w: f64 },

    /// Both metric coefficients g1 = x_s and g2 = x_t vanish: the tangent
    /// plane is Euclidean and the shape coefficients are undefined there.
    #[error("Euclidean tangent plane at (s, t) = ({s}, {t}): g1 = g2 = 0")]
    BothGZero { s: f64, t: f64 },

    #[error("degenerate tangent plane at (s, t) = ({s}, {t}): partials are linearly dependent")]
    DegenerateTangent { s: f64, t: f64 },

    /// The base curve of a ruled construction failed the geodesic test.
    #[error("not a geodesic: max |k_g| = {max_kg} at u = {u} exceeds {tol}")]
    NotAGeodesic { max_kg: f64, u: f64, tol: f64 },

    /// A space curve handed in as a surface curve does not lie on the surface.
    #[error("curve does not lie on the surface: residual {residual} at u = {u}")]
    NotOnSurface { u: f64, residual: f64 },

    /// Catch-all for non-finite values and failed numeric subroutines;
    /// `context` names the operation and the parameter point.
    #[error("numeric failure in {context}: {message}")]
    Numeric { context: String, message: String },
}

impl Error {
    pub fn domain(message: impl Into<String>) -> Self {
        Error::Domain { message: message.into() }
    }

    pub fn numeric(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Numeric { context: context.into(), message: message.into() }
    }
}
