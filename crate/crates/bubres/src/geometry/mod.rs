//! Closed boundaries: Fourier-parametrised curves, their differential
//! geometry, offset (coated) curves and the equispaced Nystrom grid.
//!
//! Orientation is normalised to counterclockwise at construction, so the
//! normal `nu = (y', -x')/|x'|` points outward and the signed curvature
//! `tau = (x' y'' - y' x'')/|x'|^3` is positive on convex arcs.

mod curve;
mod discrete;
mod vec2;

pub use curve::{offset_curve, signed_curvature, CurvePoint, ParametricCurve, Shape};
pub(crate) use discrete::min_distance;
pub use discrete::{discretize, enclosed_area, DiscreteBoundary};
pub use vec2::Vec2;
