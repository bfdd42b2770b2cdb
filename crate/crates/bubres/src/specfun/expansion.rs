use super::EULER_GAMMA;
use crate::{Error, Result, C64};
use std::f64::consts::{LN_2, PI};

/// Coefficients of
/// `-(i/4) H_0(kr) = (1/2pi) ln r + eta_k + sum_j (b_j ln(kr) + c_j)(kr)^{2j}`.
///
/// `b` and `c` are indexed by `j`, starting at `j = 0`, where
/// `b_0 = 1/(2 pi)` and `b_0 ln k + c_0 = eta_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoeffs {
    pub eta_k: C64,
    pub b: Vec<f64>,
    pub c: Vec<C64>,
    pub euler_gamma: f64,
}

impl ExpansionCoeffs {
    pub fn j_max(&self) -> usize {
        self.b.len() - 1
    }

    /// Truncated expansion of `-(i/4) H_0(k r)`, given `k` and `r > 0`.
    pub fn evaluate(&self, k: C64, r: f64) -> C64 {
        let z = k * r;
        let lz = z.ln();
        let z2 = z * z;
        let mut p = z2;
        let mut sum = C64::new(r.ln() / (2.0 * PI), 0.0) + self.eta_k;
        for j in 1..self.b.len() {
            sum += (lz * self.b[j] + self.c[j]) * p;
            p *= z2;
        }
        sum
    }
}

fn check_k(k: C64) -> Result<()> {
    if k.re == 0.0 && k.im == 0.0 {
        return Err(Error::Domain { z: k, reason: "k = 0" });
    }
    if k.im == 0.0 && k.re < 0.0 {
        return Err(Error::Domain { z: k, reason: "k on the negative real axis" });
    }
    Ok(())
}

/// `eta_k = (ln k + gamma - ln 2)/(2 pi) - i/4`, principal branch.
pub fn eta(k: C64) -> Result<C64> {
    check_k(k)?;
    Ok((k.ln() + EULER_GAMMA - LN_2) / (2.0 * PI) - C64::new(0.0, 0.25))
}

/// `eta_k`, `b_j` and `c_j` for `j = 0..=j_max`.
pub fn expansion_coeffs(k: C64, j_max: usize) -> Result<ExpansionCoeffs> {
    if j_max < 1 {
        return Err(Error::InvalidInput("j_max must be at least 1".into()));
    }
    let eta_k = eta(k)?;
    let mut b = Vec::with_capacity(j_max + 1);
    let mut c = Vec::with_capacity(j_max + 1);
    let mut fact = 1.0;
    let mut harmonic = 0.0;
    for j in 0..=j_max {
        if j > 0 {
            fact *= j as f64;
            harmonic += 1.0 / j as f64;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let bj = sign / (2.0 * PI * 4f64.powi(j as i32) * fact * fact);
        b.push(bj);
        c.push(C64::new(EULER_GAMMA - LN_2 - harmonic, -PI / 2.0) * bj);
    }
    Ok(ExpansionCoeffs { eta_k, b, c, euler_gamma: EULER_GAMMA })
}
