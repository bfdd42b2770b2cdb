//! Ascending power series for `J_n` and `Y_n`.
//!
//! Accurate where `|z|` is moderate: the largest term grows like `e^{|z|/2}`
//! relative to the result, so the library only uses this region for
//! `|z| < CROSSOVER`.

use super::EULER_GAMMA;
use crate::C64;
use std::f64::consts::{FRAC_1_PI, FRAC_2_PI};

const MAX_TERMS: usize = 400;
const REL_STOP: f64 = 1e-17;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `J_n(z)` by its power series. Entire in `z`.
pub fn bessel_j(n: u32, z: C64) -> C64 {
    let h = z * 0.5;
    let q = -h * h;
    let mut t = h.powu(n) / factorial(n);
    let mut sum = C64::new(0.0, 0.0);
    for k in 0..MAX_TERMS {
        sum += t;
        let kf = k as f64;
        t *= q / ((kf + 1.0) * (kf + 1.0 + f64::from(n)));
        if kf > h.norm() && t.norm() <= REL_STOP * sum.norm() {
            break;
        }
        if t.norm() == 0.0 {
            break;
        }
    }
    sum
}

/// `(J_n(z), Y_n(z))` by the power series, principal branch of `ln(z/2)`.
///
/// `z` must be non-zero; callers guard the branch cut.
pub fn bessel_jy(n: u32, z: C64) -> (C64, C64) {
    let h = z * 0.5;
    let q = -h * h;
    let nf = f64::from(n);
    let mut t = h.powu(n) / factorial(n);
    let mut hk = 0.0;
    let mut hnk: f64 = (1..=n).map(|m| 1.0 / f64::from(m)).sum();
    let mut sj = C64::new(0.0, 0.0);
    let mut sy = C64::new(0.0, 0.0);
    for k in 0..MAX_TERMS {
        sj += t;
        sy += t * (hk + hnk);
        let kf = k as f64;
        t *= q / ((kf + 1.0) * (kf + 1.0 + nf));
        hk += 1.0 / (kf + 1.0);
        hnk += 1.0 / (kf + 1.0 + nf);
        let tail = t.norm() * (1.0 + hk + hnk);
        if kf > h.norm() && tail <= REL_STOP * (sj.norm() + sy.norm()) {
            break;
        }
        if t.norm() == 0.0 {
            break;
        }
    }
    // finite part: sum_{k<n} (n-k-1)!/k! (z/2)^{2k-n}
    let mut finite = C64::new(0.0, 0.0);
    if n > 0 {
        let hinv = h.inv();
        for k in 0..n {
            let c = factorial(n - k - 1) / factorial(k);
            let p = 2 * k as i32 - n as i32;
            let pw = if p >= 0 { h.powi(p) } else { hinv.powi(-p) };
            finite += pw * c;
        }
    }
    let y = (h.ln() + EULER_GAMMA) * sj * FRAC_2_PI - (finite + sy) * FRAC_1_PI;
    (sj, y)
}

/// `J_0, J_1, Y_0, Y_1` in a single pass; the layer-potential hot path.
pub fn jy01(z: C64) -> [C64; 4] {
    let h = z * 0.5;
    let q = -h * h;
    // t0_k = q^k/(k!)^2, t1_k = h q^k/(k!(k+1)!)
    let mut t0 = C64::new(1.0, 0.0);
    let mut t1 = h;
    let mut hk = 0.0;
    let mut j0 = C64::new(0.0, 0.0);
    let mut j1 = C64::new(0.0, 0.0);
    let mut s0 = C64::new(0.0, 0.0);
    let mut s1 = C64::new(0.0, 0.0);
    let hn = h.norm();
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let hk1 = hk + 1.0 / (kf + 1.0);
        j0 += t0;
        j1 += t1;
        s0 += t0 * (2.0 * hk);
        s1 += t1 * (hk + hk1);
        t0 *= q / ((kf + 1.0) * (kf + 1.0));
        t1 *= q / ((kf + 1.0) * (kf + 2.0));
        hk = hk1;
        let tail = (t0.norm() + t1.norm()) * (1.0 + 2.0 * hk);
        if kf > hn && tail <= REL_STOP * (j0.norm() + j1.norm()) {
            break;
        }
        if tail == 0.0 {
            break;
        }
    }
    let lg = h.ln() + EULER_GAMMA;
    let y0 = lg * j0 * FRAC_2_PI - s0 * FRAC_1_PI;
    let y1 = lg * j1 * FRAC_2_PI - (h.inv() + s1) * FRAC_1_PI;
    [j0, j1, y0, y1]
}
