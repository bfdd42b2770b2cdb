//! Subwavelength (Minnaert) resonances of two-dimensional gas bubbles in a
//! liquid, with and without a thin encapsulating layer.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: Bessel and Hankel functions of complex argument and the
//!   logarithmic expansion of the Helmholtz fundamental solution.
//! * [`geometry`]: Fourier-parametrised closed curves, offset curves and
//!   their periodic-trapezoid discretisation.
//! * [`layerpot`]: Nystrom matrices of the single layer, double layer and
//!   Neumann-Poincare operators, plus the spectral constants of a boundary.
//! * [`rootfind`]: Muller's method and characteristic values of analytic
//!   matrix-valued functions.
//! * [`resonance`]: the asymptotic resonance formulas, the boundary-element
//!   characteristic-value solvers and the multipole solver for circles.
//! * [`cli`]: the `bubres` command-line front end.
//!
//! ```
//! use bubres::geometry::{discretize, ParametricCurve};
//! use bubres::layerpot::spectral_quantities;
//! use bubres::resonance::{minnaert_uncoated, PhysicalConfig};
//!
//! let curve = ParametricCurve::circle(0.5, [0.0, 0.0]).unwrap();
//! let boundary = discretize(&curve, 64).unwrap();
//! let q = spectral_quantities(&boundary).unwrap();
//! let cfg = PhysicalConfig::from_contrasts(1.0, 1.0, 1.0, 1e-3, 1.0).unwrap();
//! let res = minnaert_uncoated(&q, &cfg).unwrap();
//! assert!(res.omega.re > 0.0 && res.omega.im < 0.0);
//! ```

pub mod cli;
mod error;
pub mod geometry;
pub mod layerpot;
mod linalg;
pub mod resonance;
pub mod rootfind;
pub mod specfun;

pub use error::{Error, Result};

/// Complex double precision scalar used throughout.
pub type C64 = num_complex::Complex64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/special-functions.md")]
    mod special_functions {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/layer-potentials.md")]
    mod layer_potentials {}
    #[doc = include_str!("../../../book/src/root-finding.md")]
    mod root_finding {}
    #[doc = include_str!("../../../book/src/resonance.md")]
    mod resonance {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
