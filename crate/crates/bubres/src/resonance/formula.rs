use super::{check_branch, seeds_around, Inputs, Method, PhysicalConfig, ResonanceResult};
use crate::layerpot::{a_constant, SpectralQuantities};
use crate::rootfind::{muller, Tolerances};
use crate::specfun::{eta, EULER_GAMMA};
use crate::{Error, Result, C64};
use std::f64::consts::{LN_2, PI};

const B1: f64 = -1.0 / (8.0 * PI);

/// `c_1 / b_1 = gamma - ln 2 - i pi/2 - 1`.
fn c1_over_b1() -> C64 {
    C64::new(EULER_GAMMA - LN_2 - 1.0, -PI / 2.0)
}

/// Left side of the Minnaert equation
/// `w^2 ln w + [(1 + c1/b1 - ln v_b) + 2 pi gamma0/c] w^2 - v_b^2 a(w) delta/(4 |D| b1)`,
/// where `a(w)` follows `w` through `eta_{k_b}` and `eta_{k_w}`.
pub fn minnaert_equation(q: &SpectralQuantities, cfg: &PhysicalConfig, omega: C64) -> Result<C64> {
    let a = a_constant(q, cfg.k_b(omega), cfg.k_w(omega))?;
    let vb = cfg.v_b();
    let coef = c1_over_b1() + 1.0 - vb.ln() + 2.0 * PI * q.gamma0 / q.c;
    let w2 = omega * omega;
    Ok(w2 * omega.ln() + coef * w2 - a * (vb * vb * cfg.delta() / (4.0 * q.area * B1)))
}

/// One fixed-point pass from `omega_g = sqrt(delta)`:
/// `omega_0^2 = v_b^2 a(omega_g) delta / (4 |D| b1 ln omega_g)`.
pub fn minnaert_initial_guess(q: &SpectralQuantities, cfg: &PhysicalConfig) -> Result<C64> {
    let g = C64::new(cfg.delta().sqrt(), 0.0);
    let a = a_constant(q, cfg.k_b(g), cfg.k_w(g))?;
    let vb = cfg.v_b();
    let w2 = a * (vb * vb * cfg.delta()) / (g.ln() * (4.0 * q.area * B1));
    Ok(w2.sqrt())
}

/// The uncoated Minnaert resonance of the shape described by `q`.
pub fn minnaert_uncoated(q: &SpectralQuantities, cfg: &PhysicalConfig) -> Result<ResonanceResult> {
    if cfg.delta() > 0.1 {
        return Err(Error::InvalidInput(format!(
            "the asymptotic formula needs delta <= 0.1, got {}",
            cfg.delta()
        )));
    }
    let w0 = minnaert_initial_guess(q, cfg)?;
    let vb = cfg.v_b();
    let scale = vb * vb * cfg.delta() / (4.0 * q.area * B1.abs());
    let mut failure = None;
    let f = |w: C64| match minnaert_equation(q, cfg, w) {
        Ok(v) => v / scale,
        Err(e) => {
            failure.get_or_insert(e);
            C64::new(f64::NAN, f64::NAN)
        }
    };
    let r = muller(f, seeds_around(w0), Tolerances::default());
    if let Some(e) = failure {
        return Err(e);
    }
    let r = r?;
    Ok(ResonanceResult {
        omega: check_branch(r.root)?,
        method: Method::MinnaertFormula,
        residual: r.residual,
        iterations: r.iterations,
        inputs: Inputs { shape: None, epsilon: 0.0, config: *cfg, n: None },
    })
}

/// First-order coefficient
/// `2 pi w a (delta_lw - 1) / (4 pi c (gamma0 + eta_{k_b} c) - c^2 (1 - a))`
/// at `w = omega_m`, with `a = a(omega_m)`.
pub fn shift_coefficient(omega_m: C64, q: &SpectralQuantities, cfg: &PhysicalConfig) -> Result<C64> {
    let a = a_constant(q, cfg.k_b(omega_m), cfg.k_w(omega_m))?;
    let eb = eta(cfg.k_b(omega_m))?;
    let c = q.c;
    let den = (eb * c + q.gamma0) * (4.0 * PI * c) - (C64::new(1.0, 0.0) - a) * (c * c);
    if den.norm() <= 1e-300 || !den.re.is_finite() {
        return Err(Error::SingularDenominator("coated shift"));
    }
    Ok(omega_m * a * (2.0 * PI * (cfg.delta_lw() - 1.0)) / den)
}

/// Resonance of the coated bubble to first order in the thickness `eps`.
pub fn coated_shift(omega_m: C64, q: &SpectralQuantities, cfg: &PhysicalConfig, eps: f64) -> Result<ResonanceResult> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::InvalidInput(format!("coating thickness must be non-negative, got {eps}")));
    }
    let omega = omega_m + shift_coefficient(omega_m, q, cfg)? * eps;
    Ok(ResonanceResult {
        omega: check_branch(omega)?,
        method: Method::CoatedFormula,
        residual: 0.0,
        iterations: 0,
        inputs: Inputs { shape: None, epsilon: eps, config: *cfg, n: None },
    })
}
