//! Complex root finding: Muller's method for scalar analytic functions and
//! characteristic values of analytic matrix-valued functions.

mod muller;

pub use muller::{muller, observed_order, RootResult, Tolerances};

use crate::linalg::{log_det_from_lu, sigma_max, sigma_min_from_lu};
use crate::{Result, C64};
use faer::Mat;
use rayon::prelude::*;

/// How the singularity of `F(omega)` is detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharMode {
    /// Muller on `det F(omega) / det F(seed_0)`.
    Det,
    /// Muller on `d_x sigma_min^2 + i d_y sigma_min^2` by central differences;
    /// the root is the point where `sigma_min` vanishes.
    #[default]
    InvSigmaMin,
}

/// Options for [`char_value`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharOptions {
    pub mode: CharMode,
    pub tolerances: Tolerances,
    /// Evaluate independent matrix functions concurrently. The caller
    /// asserts that `F` is safe to call from several threads at once.
    pub parallel: bool,
}

impl Default for CharOptions {
    fn default() -> Self {
        CharOptions { mode: CharMode::InvSigmaMin, tolerances: Tolerances::default(), parallel: false }
    }
}

const ILL_CONDITIONED: f64 = 1e-14;

/// `(sigma_min, sigma_max)` of a square matrix.
pub fn sigma_extremes(a: &Mat<C64>) -> (f64, f64) {
    let lu = a.partial_piv_lu();
    (sigma_min_from_lu(&lu, a.nrows()), sigma_max(a.as_ref()))
}

/// Characteristic value of `F` near the seeds.
///
/// In `Det` mode the residual is `|det F(root) / det F(seed_0)|`; in
/// `InvSigmaMin` mode it is `sigma_min/sigma_max` at the root. Either mode
/// reports `converged` only when the residual is below `tol_f`.
///
/// ```
/// use bubres::rootfind::{char_value, CharMode, CharOptions};
/// use bubres::C64;
/// use faer::Mat;
///
/// let f = |w: C64| Ok(Mat::from_fn(2, 2, |i, j| if i == j { w } else { C64::new(1.0, 0.0) }));
/// let seeds = [C64::new(0.9, 0.0), C64::new(1.05, 0.01), C64::new(1.1, -0.02)];
/// let opts = CharOptions { mode: CharMode::Det, ..CharOptions::default() };
/// let r = char_value(f, seeds, opts).unwrap();
/// assert!((r.root - 1.0).norm() < 1e-10);
/// ```
pub fn char_value<F>(f: F, seeds: [C64; 3], opts: CharOptions) -> Result<RootResult>
where
    F: Fn(C64) -> Result<Mat<C64>> + Sync,
{
    match opts.mode {
        CharMode::Det => det_mode(&f, seeds, opts),
        CharMode::InvSigmaMin => sigma_mode(&f, seeds, opts),
    }
}

fn det_mode<F>(f: &F, seeds: [C64; 3], opts: CharOptions) -> Result<RootResult>
where
    F: Fn(C64) -> Result<Mat<C64>> + Sync,
{
    let logdet = |w: C64| -> Result<(C64, f64)> {
        let a = f(w)?;
        Ok(log_det_from_lu(&a.partial_piv_lu()))
    };
    let (l0, ratio) = logdet(seeds[0])?;
    if ratio < ILL_CONDITIONED {
        log::warn!("matrix at seed {} is ill-conditioned (pivot ratio {ratio:.2e})", seeds[0]);
    }
    let mut failure = None;
    let g = |w: C64| match logdet(w) {
        Ok((l, _)) => (l - l0).exp(),
        Err(e) => {
            failure.get_or_insert(e);
            C64::new(f64::NAN, f64::NAN)
        }
    };
    let out = muller(g, seeds, opts.tolerances);
    if let Some(e) = failure {
        return Err(e);
    }
    out
}

fn sigma_sq<F>(f: &F, w: C64) -> Result<f64>
where
    F: Fn(C64) -> Result<Mat<C64>> + Sync,
{
    let a = f(w)?;
    let lu = a.partial_piv_lu();
    Ok(sigma_min_from_lu(&lu, a.nrows()).powi(2))
}

fn sigma_mode<F>(f: &F, seeds: [C64; 3], opts: CharOptions) -> Result<RootResult>
where
    F: Fn(C64) -> Result<Mat<C64>> + Sync,
{
    let a0 = f(seeds[0])?;
    let (smin, smax) = sigma_extremes(&a0);
    if smin < ILL_CONDITIONED * smax {
        log::warn!("matrix at seed {} is ill-conditioned (sigma ratio {:.2e})", seeds[0], smin / smax);
    }
    let grad = |w: C64| -> Result<C64> {
        let h = 1e-6 * w.norm().max(1e-300);
        let pts = [w + h, w - h, w + C64::new(0.0, h), w - C64::new(0.0, h)];
        let v: Vec<f64> = if opts.parallel {
            pts.par_iter().map(|&p| sigma_sq(f, p)).collect::<Result<_>>()?
        } else {
            pts.iter().map(|&p| sigma_sq(f, p)).collect::<Result<_>>()?
        };
        Ok(C64::new(v[0] - v[1], v[2] - v[3]) / (2.0 * h))
    };
    let g0 = grad(seeds[0])?;
    let scale = if g0.norm() > 0.0 { g0.norm() } else { 1.0 };
    let mut failure = None;
    let g = |w: C64| match grad(w) {
        Ok(v) => v / scale,
        Err(e) => {
            failure.get_or_insert(e);
            C64::new(f64::NAN, f64::NAN)
        }
    };
    let inner = Tolerances { tol_f: f64::INFINITY, ..opts.tolerances };
    let out = muller(g, seeds, inner);
    if let Some(e) = failure {
        return Err(e);
    }
    let mut r = out?;
    let a = f(r.root)?;
    let (smin, smax) = sigma_extremes(&a);
    r.residual = smin / smax;
    r.converged = r.residual <= opts.tolerances.tol_f;
    if !r.converged {
        return Err(crate::Error::NoConvergence { iterations: r.iterations, last: r.root, residual: r.residual });
    }
    Ok(r)
}
