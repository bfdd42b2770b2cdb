//! Resonances of uncoated and coated bubbles.
//!
//! * [`minnaert_uncoated`]: the leading-order Minnaert equation for an
//!   arbitrary shape, solved in complex `omega`.
//! * [`coated_shift`]: the first-order shift of that resonance caused by a
//!   layer of thickness `eps`.
//! * [`bem_resonance`]: characteristic values of the full boundary integral
//!   systems, uncoated (`2n x 2n`) or coated (`4n x 4n`).
//! * [`multipole_resonance`]: the exact separation-of-variables solution
//!   for concentric circles, used as the reference solution.

mod bem;
mod config;
mod formula;
mod multipole;

pub use bem::{assemble_coated_system, assemble_uncoated_system, bem_resonance, CoatedSystem, UncoatedSystem};
pub use config::PhysicalConfig;
pub use formula::{coated_shift, minnaert_equation, minnaert_initial_guess, minnaert_uncoated, shift_coefficient};
pub use multipole::{multipole_det, multipole_matrix, multipole_reduced_matrix, multipole_resonance};

use crate::geometry::Shape;
use crate::{Error, Result, C64};

/// How a resonance was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MinnaertFormula,
    CoatedFormula,
    BemUncoated,
    BemCoated,
    Multipole,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::MinnaertFormula => "minnaert_formula",
            Method::CoatedFormula => "coated_formula",
            Method::BemUncoated => "bem_uncoated",
            Method::BemCoated => "bem_coated",
            Method::Multipole => "multipole",
        };
        f.write_str(s)
    }
}

/// Inputs recorded with a result.
#[derive(Debug, Clone, PartialEq)]
pub struct Inputs {
    pub shape: Option<Shape>,
    pub epsilon: f64,
    pub config: PhysicalConfig,
    pub n: Option<usize>,
}

/// A resonance frequency with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceResult {
    pub omega: C64,
    pub method: Method,
    pub residual: f64,
    pub iterations: usize,
    pub inputs: Inputs,
}

/// Physical resonances decay: `Re omega > 0` and `Im omega <= 1e-12`.
pub(crate) fn check_branch(omega: C64) -> Result<C64> {
    if omega.re > 0.0 && omega.im <= 1e-12 {
        Ok(omega)
    } else {
        Err(Error::WrongBranch(omega))
    }
}

/// Seeds `{0.95, 1, 1.05} * omega` around an initial guess.
pub fn seeds_around(omega: C64) -> [C64; 3] {
    [omega * 0.95, omega, omega * 1.05]
}
