use crate::{Error, Result, C64};

/// Stopping rules shared by the root finders.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative step tolerance: stop once `|step| <= tol_x |root|`.
    pub tol_x: f64,
    /// Residual tolerance on the (normalised) function value.
    pub tol_f: f64,
    pub max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { tol_x: 1e-10, tol_f: 1e-10, max_iter: 60 }
    }
}

/// Outcome of a root search.
#[derive(Debug, Clone, PartialEq)]
pub struct RootResult {
    pub root: C64,
    /// `|f(root)|`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Every iterate after the seeds, in order.
    pub history: Vec<C64>,
}

/// Muller's method: each step fits a parabola through the last three
/// iterates and moves to its root nearest the latest iterate. A degenerate
/// parabola falls back to a secant step.
///
/// Stops with `converged = true` once the last step is at most
/// `tol_x |root|` and `|f(root)| <= tol_f`, or when `f` vanishes exactly.
///
/// ```
/// use bubres::rootfind::{muller, Tolerances};
/// use bubres::C64;
///
/// let f = |z: C64| z * z + 1.0;
/// let seeds = [C64::new(0.0, 0.5), C64::new(0.0, 0.9), C64::new(0.0, 1.2)];
/// let r = muller(f, seeds, Tolerances::default()).unwrap();
/// assert!((r.root - C64::i()).norm() < 1e-12);
/// ```
pub fn muller<F>(mut f: F, seeds: [C64; 3], tol: Tolerances) -> Result<RootResult>
where
    F: FnMut(C64) -> C64,
{
    let [mut x0, mut x1, mut x2] = seeds;
    if x0 == x1 || x1 == x2 || x0 == x2 {
        return Err(Error::InvalidInput("Muller seeds must be distinct".into()));
    }
    let (mut f0, mut f1, mut f2) = (f(x0), f(x1), f(x2));
    let mut history = Vec::new();
    for it in 1..=tol.max_iter {
        if ![f0, f1, f2].iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NoConvergence { iterations: it - 1, last: x2, residual: f64::NAN });
        }
        if f2.norm() == 0.0 {
            return Ok(RootResult { root: x2, residual: 0.0, iterations: it - 1, converged: true, history });
        }
        let h1 = x1 - x0;
        let h2 = x2 - x1;
        let d1 = (f1 - f0) / h1;
        let d2 = (f2 - f1) / h2;
        let a = (d2 - d1) / (h2 + h1);
        let b = a * h2 + d2;
        let disc = (b * b - a * f2 * 4.0).sqrt();
        let den = if (b + disc).norm() >= (b - disc).norm() { b + disc } else { b - disc };
        let step = if den.norm() > 0.0 && den.re.is_finite() && den.im.is_finite() {
            -f2 * 2.0 / den
        } else if d2.norm() > 0.0 {
            -f2 / d2
        } else {
            return Err(Error::NoConvergence { iterations: it, last: x2, residual: f2.norm() });
        };
        let x3 = x2 + step;
        let f3 = f(x3);
        history.push(x3);
        log::debug!("muller {it}: x = {x3}, |f| = {:.3e}", f3.norm());
        x0 = x1;
        x1 = x2;
        x2 = x3;
        f0 = f1;
        f1 = f2;
        f2 = f3;
        let small_step = step.norm() <= tol.tol_x * x3.norm();
        if (small_step && f3.norm() <= tol.tol_f) || f3.norm() == 0.0 {
            return Ok(RootResult { root: x3, residual: f3.norm(), iterations: it, converged: true, history });
        }
        if small_step && step.norm() == 0.0 {
            break;
        }
    }
    Err(Error::NoConvergence { iterations: history.len(), last: x2, residual: f2.norm() })
}

/// Empirical convergence order from successive errors against `root`.
pub fn observed_order(history: &[C64], root: C64) -> Option<f64> {
    let e: Vec<f64> = history.iter().map(|x| (x - root).norm()).collect();
    let mut best: Option<f64> = None;
    for k in 2..e.len() {
        let (a, b, c) = (e[k - 2], e[k - 1], e[k]);
        // only steps resolved well above rounding
        if c > 1e-13 * root.norm().max(1.0) && b < a && c < b {
            let p = (c / b).ln() / (b / a).ln();
            best = Some(best.map_or(p, |q: f64| q.max(p)));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_real_root() {
        let f = |z: C64| z * z * z - z * 2.0 - 5.0;
        let s = [C64::new(2.0, 0.0), C64::new(2.1, 0.0), C64::new(2.2, 0.0)];
        let r = muller(f, s, Tolerances::default()).unwrap();
        // bisection oracle
        let (mut lo, mut hi) = (2.0f64, 2.2f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid.powi(3) - 2.0 * mid - 5.0 > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!((r.root.re - lo).abs() < 1e-12 && r.root.im.abs() < 1e-12);
        assert!((lo - 2.094_551_481_5).abs() < 1e-10);
        assert!(r.converged);
    }

    #[test]
    fn rejects_repeated_seeds() {
        let s = [C64::new(1.0, 0.0); 3];
        assert!(muller(|z| z, s, Tolerances::default()).is_err());
    }

    #[test]
    fn reports_failure() {
        let f = |z: C64| z.exp();
        let s = [C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(2.0, 0.0)];
        let t = Tolerances { max_iter: 5, ..Tolerances::default() };
        assert!(matches!(muller(f, s, t), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn convergence_order() {
        let f = |z: C64| (z - 0.3).sin() * (z + 2.0);
        let s = [C64::new(1.0, 0.4), C64::new(0.9, 0.2), C64::new(1.1, 0.1)];
        let r = muller(f, s, Tolerances { tol_x: 1e-15, tol_f: 1e-15, max_iter: 60 }).unwrap();
        let p = observed_order(&r.history, C64::new(0.3, 0.0)).unwrap();
        assert!(p >= 1.8, "order {p}");
    }
}
