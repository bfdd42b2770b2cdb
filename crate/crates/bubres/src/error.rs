use crate::C64;

/// Errors raised by the numerical layers of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A special function was called outside its supported domain.
    #[error("argument {z} outside the supported domain: {reason}")]
    Domain { z: C64, reason: &'static str },

    /// A curve is not closed, not regular, or an offset would self-intersect.
    #[error("invalid geometry: {0}")]
    Geometry(String),

    /// Source and target boundaries are too close for plain quadrature.
    #[error("near-singular quadrature: boundary distance {distance:.3e} is below the required {required:.3e}")]
    NearSingular { distance: f64, required: f64 },

    /// The kernel of `-1/2 I + K*` is not numerically one-dimensional.
    #[error("kernel of -1/2 I + K* is not one-dimensional: smallest singular values {s0:.3e} and {s1:.3e}")]
    DegenerateKernel { s0: f64, s1: f64 },

    /// A formula hit a vanishing denominator.
    #[error("singular denominator in {0}")]
    SingularDenominator(&'static str),

    /// An iterative solver stopped without meeting its tolerances.
    #[error("no convergence after {iterations} iterations (last iterate {last}, residual {residual:.3e})")]
    NoConvergence { iterations: usize, last: C64, residual: f64 },

    /// A root was found but it is not the physical resonance.
    #[error("root {0} is not on the physical branch (need Re > 0, Im <= 0)")]
    WrongBranch(C64),

    /// Invalid arguments such as odd node counts or non-positive moduli.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
