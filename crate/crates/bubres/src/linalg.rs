//! Small dense helpers on top of faer.

use crate::C64;
use faer::linalg::solvers::{PartialPivLu, Solve};
use faer::{Mat, MatRef};

/// `ln det A` (any branch of the imaginary part) from a partial-pivoting LU,
/// and the ratio of smallest to largest pivot modulus.
#[cfg(test)]
pub(crate) fn log_det(a: MatRef<'_, C64>) -> (C64, f64) {
    let lu = a.partial_piv_lu();
    log_det_from_lu(&lu)
}

pub(crate) fn log_det_from_lu(lu: &PartialPivLu<C64>) -> (C64, f64) {
    let u = lu.U();
    let n = u.nrows();
    let mut sum = C64::new(0.0, 0.0);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..n {
        let d = u[(i, i)];
        // an exactly zero pivot leaves NaN in the trailing block
        if d.norm() == 0.0 || !d.norm().is_finite() {
            return (C64::new(f64::NEG_INFINITY, 0.0), 0.0);
        }
        lo = lo.min(d.norm());
        hi = hi.max(d.norm());
        sum += d.ln();
    }
    if permutation_is_odd(lu.P().arrays().0) {
        sum += C64::new(0.0, std::f64::consts::PI);
    }
    (sum, if hi > 0.0 { lo / hi } else { 0.0 })
}

fn permutation_is_odd(fwd: &[usize]) -> bool {
    let mut seen = vec![false; fwd.len()];
    let mut transpositions = 0usize;
    for start in 0..fwd.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = fwd[j];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 1
}

fn start_vector(n: usize) -> Mat<C64> {
    let mut x = Mat::from_fn(n, 1, |i, _| C64::new(1.0 + 0.5 * (0.7 * i as f64).sin(), 0.25 * (1.3 * i as f64).cos()));
    let nrm = x.norm_l2();
    x *= faer::Scale(C64::new(1.0 / nrm, 0.0));
    x
}

/// Smallest singular value by inverse iteration on `(A^H A)^{-1}`, reusing the
/// LU of `A`. The estimate is `1/||A^{-H} x||` for the current iterate `x`.
pub(crate) fn sigma_min_from_lu(lu: &PartialPivLu<C64>, n: usize) -> f64 {
    let mut x = start_vector(n);
    let mut prev = f64::INFINITY;
    let mut est = 0.0;
    for _ in 0..200 {
        let y = lu.solve_adjoint(&x);
        let ny = y.norm_l2();
        if !(ny.is_finite()) || ny == 0.0 {
            return 0.0;
        }
        est = 1.0 / ny;
        if (est - prev).abs() <= 1e-15 * est {
            break;
        }
        prev = est;
        let mut z = lu.solve(&y);
        let nz = z.norm_l2();
        if !(nz.is_finite()) || nz == 0.0 {
            return 0.0;
        }
        z *= faer::Scale(C64::new(1.0 / nz, 0.0));
        x = z;
    }
    est
}

/// Largest singular value by power iteration on `A^H A`.
pub(crate) fn sigma_max(a: MatRef<'_, C64>) -> f64 {
    let n = a.ncols();
    let mut x = start_vector(n);
    let mut est = 0.0;
    for _ in 0..60 {
        let y = a * &x;
        let ny = y.norm_l2();
        let mut z = a.adjoint() * &y;
        let nz = z.norm_l2();
        if nz == 0.0 {
            return ny;
        }
        let prev = est;
        est = ny;
        z *= faer::Scale(C64::new(1.0 / nz, 0.0));
        x = z;
        if (est - prev).abs() <= 1e-12 * est {
            break;
        }
    }
    est
}

/// Dense matrix-vector product.
pub(crate) fn matvec(a: MatRef<'_, C64>, x: &[C64]) -> Vec<C64> {
    let xm = Mat::from_fn(x.len(), 1, |i, _| x[i]);
    let y = a * &xm;
    (0..y.nrows()).map(|i| y[(i, 0)]).collect()
}
