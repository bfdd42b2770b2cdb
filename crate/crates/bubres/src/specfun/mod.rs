//! Bessel and Hankel functions of integer order and complex argument, and the
//! logarithmic expansion of the 2D Helmholtz fundamental solution
//! `-(i/4) H_0^{(1)}(k|x-y|)`.
//!
//! Two evaluation methods are used, split at [`CROSSOVER`]:
//!
//! * `|z| < CROSSOVER`: ascending power series ([`series`]), with
//!   `H = J + iY` and the principal branch of `ln(z/2)` inside `Y`.
//! * `|z| >= CROSSOVER`: continued fractions with Wronskian closure
//!   ([`continued`]). Orders above one follow by recurrence: forward for the
//!   Hankel functions, backward ratios for `J`.
//!
//! ```
//! use bubres::specfun::{bessel_j, hankel1};
//! use bubres::C64;
//!
//! let z = C64::new(1.0, 0.0);
//! assert!((bessel_j(0, z).unwrap().re - 0.7651976865579666).abs() < 1e-14);
//! assert!((hankel1(0, z).unwrap().im - 0.08825696421567696).abs() < 1e-14);
//! ```

pub mod continued;
mod expansion;
pub mod series;

pub use expansion::{eta, expansion_coeffs, ExpansionCoeffs};

use crate::{Error, Result, C64};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest supported order.
pub const MAX_ORDER: u32 = 10;

/// Overflow guard on `|z|`.
pub const MAX_ARG: f64 = 700.0;

/// Radius at which evaluation switches from the power series to the
/// continued fractions.
pub const CROSSOVER: f64 = 4.0;

fn check_arg(n: u32, z: C64, has_cut: bool) -> Result<()> {
    if n > MAX_ORDER {
        return Err(Error::Domain { z, reason: "order above 10" });
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain { z, reason: "non-finite argument" });
    }
    if z.norm() >= MAX_ARG {
        return Err(Error::Domain { z, reason: "|z| >= 700" });
    }
    if has_cut {
        if z.re == 0.0 && z.im == 0.0 {
            return Err(Error::Domain { z, reason: "z = 0" });
        }
        if z.im == 0.0 && z.re < 0.0 {
            return Err(Error::Domain { z, reason: "z on the negative real axis" });
        }
    }
    Ok(())
}

/// `J_k(z)` for `k = 0..=nmax`, `z` off the cut when `|z|` is large.
fn j_orders_large(nmax: usize, z: C64) -> Vec<C64> {
    let [j0, ..] = continued::cylinder01(z);
    let ratios = continued::j_ratios(z, nmax);
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(j0);
    for r in ratios {
        let last = *out.last().unwrap();
        out.push(last * r);
    }
    out
}

/// `H_k^{(1)}(z)` for `k = 0..=nmax`.
fn hankel_orders(nmax: usize, z: C64) -> Vec<C64> {
    if z.norm() < CROSSOVER {
        return (0..=nmax as u32)
            .map(|k| {
                let (j, y) = series::bessel_jy(k, z);
                j + C64::i() * y
            })
            .collect();
    }
    let [_, _, h0, h1] = continued::cylinder01(z);
    let mut out = vec![h0, h1];
    let zi = z.inv();
    for k in 1..nmax {
        let next = out[k] * zi * (2.0 * k as f64) - out[k - 1];
        out.push(next);
    }
    out.truncate(nmax + 1);
    out
}

fn j_orders(nmax: usize, z: C64) -> Vec<C64> {
    if z.norm() < CROSSOVER {
        return (0..=nmax as u32).map(|k| series::bessel_j(k, z)).collect();
    }
    if z.im == 0.0 && z.re < 0.0 {
        // J_k(-z) = (-1)^k J_k(z)
        let mut v = j_orders_large(nmax, -z);
        for (k, x) in v.iter_mut().enumerate() {
            if k % 2 == 1 {
                *x = -*x;
            }
        }
        return v;
    }
    j_orders_large(nmax, z)
}

/// Bessel function of the first kind `J_n(z)`.
pub fn bessel_j(n: u32, z: C64) -> Result<C64> {
    check_arg(n, z, false)?;
    Ok(j_orders(n as usize, z)[n as usize])
}

/// Derivative `J_n'(z)`.
pub fn bessel_j_deriv(n: u32, z: C64) -> Result<C64> {
    check_arg(n, z, false)?;
    let j = j_orders(n as usize + 1, z);
    Ok(deriv_from_orders(&j, n as usize))
}

/// Bessel function of the second kind `Y_n(z)`, principal branch.
pub fn bessel_y(n: u32, z: C64) -> Result<C64> {
    check_arg(n, z, true)?;
    if z.norm() < CROSSOVER {
        return Ok(series::bessel_jy(n, z).1);
    }
    let h = hankel_orders(n as usize, z)[n as usize];
    let j = j_orders(n as usize, z)[n as usize];
    Ok((h - j) * C64::new(0.0, -1.0))
}

/// Hankel function of the first kind `H_n^{(1)}(z) = J_n(z) + i Y_n(z)`.
pub fn hankel1(n: u32, z: C64) -> Result<C64> {
    check_arg(n, z, true)?;
    Ok(hankel_orders(n as usize, z)[n as usize])
}

/// Derivative `H_n^{(1)'}(z)`.
pub fn hankel1_deriv(n: u32, z: C64) -> Result<C64> {
    check_arg(n, z, true)?;
    let h = hankel_orders(n as usize + 1, z);
    Ok(deriv_from_orders(&h, n as usize))
}

fn deriv_from_orders(v: &[C64], n: usize) -> C64 {
    if n == 0 {
        -v[1]
    } else {
        (v[n - 1] - v[n + 1]) * 0.5
    }
}

/// `[J_0, J_1, H_0^{(1)}, H_1^{(1)}]` at one argument, the kernel hot path.
pub(crate) fn cylinder01(z: C64) -> Result<[C64; 4]> {
    check_arg(1, z, true)?;
    if z.norm() < CROSSOVER {
        let [j0, j1, y0, y1] = series::jy01(z);
        Ok([j0, j1, j0 + C64::i() * y0, j1 + C64::i() * y1])
    } else {
        Ok(continued::cylinder01(z))
    }
}
