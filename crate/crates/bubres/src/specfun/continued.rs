//! Large-argument evaluation by continued fractions.
//!
//! `K_0, K_1` at `x = -iz` come from the Temme-Steed continued fraction, which
//! gives `H_0^{(1)}, H_1^{(1)}` in the closed upper half plane without the
//! `J + iY` cancellation. Ratios `J_k/J_{k-1}` come from backward recurrence,
//! and `J_0` itself from the Wronskian with whichever Hankel function is
//! recessive. Valid for `|z| >= 2`; the library switches at `CROSSOVER`.

use crate::C64;
use std::f64::consts::PI;

const MAX_IT: usize = 20_000;
const EPS: f64 = 1e-16;

/// `(K_0(x), K_1(x))` for `Re x >= 0`, `|x| >= 2`.
pub fn bessel_k01(x: C64) -> (C64, C64) {
    let one = C64::new(1.0, 0.0);
    let mut b = (one + x) * 2.0;
    let mut d = b.inv();
    let mut h = d;
    let mut delh = d;
    let mut q1 = C64::new(0.0, 0.0);
    let mut q2 = one;
    let a1 = 0.25;
    let mut q = C64::new(a1, 0.0);
    let mut c = C64::new(a1, 0.0);
    let mut a = -a1;
    let mut s = one + q * delh;
    for i in 2..MAX_IT {
        a -= 2.0 * (i as f64 - 1.0);
        c = -c * a / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = (b + d * a).inv();
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).norm() < EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (C64::new(PI, 0.0) / (x * 2.0)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// `(H_0^{(1)}(z), H_1^{(1)}(z))` for `Im z >= 0`.
fn hankel01_upper(z: C64) -> (C64, C64) {
    let (k0, k1) = bessel_k01(C64::new(z.im, -z.re));
    (k0 * C64::new(0.0, -2.0 / PI), k1 * (-2.0 / PI))
}

/// Ratios `r[k-1] = J_k(z)/J_{k-1}(z)` for `k = 1..=n` by backward recurrence.
pub fn j_ratios(z: C64, n: usize) -> Vec<C64> {
    let start = n + z.norm().ceil() as usize + 60;
    let zi = z.inv();
    let mut r = C64::new(0.0, 0.0);
    let mut out = vec![C64::new(0.0, 0.0); n];
    for k in (1..=start).rev() {
        r = (zi * (2.0 * k as f64) - r).inv();
        if k <= n {
            out[k - 1] = r;
        }
    }
    out
}

/// `(J_0, J_1, H_0^{(1)}, H_1^{(1)})` for `|z| >= 2`, `z` off the cut.
pub fn cylinder01(z: C64) -> [C64; 4] {
    let r1 = j_ratios(z, 1)[0];
    // J_0'/J_0 = -J_1/J_0
    let f = -r1;
    let w = C64::new(0.0, 2.0 / PI) / z;
    if z.im >= 0.0 {
        let (h0, h1) = hankel01_upper(z);
        // J0 H0' - J0' H0 = 2i/(pi z), with H0' = -H1
        let j0 = w / (-h1 - f * h0);
        [j0, j0 * r1, h0, h1]
    } else {
        let (g0, g1) = hankel01_upper(z.conj());
        let (h20, h21) = (g0.conj(), g1.conj());
        // J0 H2' - J0' H2 = -2i/(pi z)
        let j0 = -w / (-h21 - f * h20);
        let j1 = j0 * r1;
        [j0, j1, j0 * 2.0 - h20, j1 * 2.0 - h21]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::series;

    #[test]
    fn agrees_with_series_on_a_ring() {
        for m in 0..24 {
            let th = -2.3 + 4.6 * m as f64 / 23.0;
            let z = C64::from_polar(4.5, th);
            let cf = cylinder01(z);
            let [j0, j1, y0, y1] = series::jy01(z);
            let sr = [j0, j1, j0 + C64::i() * y0, j1 + C64::i() * y1];
            for (a, b) in cf.iter().zip(sr.iter()) {
                assert!((a - b).norm() <= 1e-11 * b.norm(), "z={z} {a} {b}");
            }
        }
    }

    #[test]
    fn k0_known_value() {
        // K_0(2) = 0.11389387274953344
        let (k0, _) = bessel_k01(C64::new(2.0, 0.0));
        assert!((k0.re - 0.113_893_872_749_533_44).abs() < 1e-15);
    }
}
