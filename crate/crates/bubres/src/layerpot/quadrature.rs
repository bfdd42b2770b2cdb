//! Product quadrature for `ln(4 sin^2((t-s)/2))` on `n = 2N` equispaced nodes
//! and trigonometric interpolation between grids.

use faer::Mat;
use std::f64::consts::PI;

/// Weights `R_j`, `j = 0..n`, with
/// `int_0^{2pi} ln(4 sin^2((t_i - s)/2)) f(s) ds ~ sum_j R_{|i-j|} f(t_j)`.
pub(crate) fn kress_weights(n: usize) -> Vec<f64> {
    let big_n = n / 2;
    let nf = big_n as f64;
    (0..n)
        .map(|j| {
            let tj = PI * j as f64 / nf;
            let s: f64 = (1..big_n).map(|m| (m as f64 * tj).cos() / m as f64).sum();
            let alt = if j % 2 == 0 { 1.0 } else { -1.0 };
            -2.0 * PI / nf * s - PI / (nf * nf) * alt
        })
        .collect()
}

/// `ln(4 sin^2(pi d / n))` for `d = 0..n`; entry 0 is unused.
pub(crate) fn log_sin2(n: usize) -> Vec<f64> {
    (0..n)
        .map(|d| {
            if d == 0 {
                0.0
            } else {
                (4.0 * (PI * d as f64 / n as f64).sin().powi(2)).ln()
            }
        })
        .collect()
}

/// Interpolation matrix (`m x n`) from values at `t_j = 2 pi j/n` to
/// `s_p = 2 pi p/m` using the even-`n` trigonometric interpolant.
pub(crate) fn trig_interp(n: usize, m: usize) -> Mat<f64> {
    Mat::from_fn(m, n, |p, j| {
        let theta = 2.0 * PI * (p as f64 / m as f64 - j as f64 / n as f64);
        let half = 0.5 * theta;
        if half.sin().abs() < 1e-14 {
            1.0
        } else {
            (0.5 * n as f64 * theta).sin() / (n as f64 * half.tan())
        }
    })
}
