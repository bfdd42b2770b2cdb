use super::{check_branch, Inputs, Method, PhysicalConfig, ResonanceResult};
use crate::geometry::{discretize, offset_curve, DiscreteBoundary};
use crate::layerpot::{cross_pair, self_ops, Want};
use crate::rootfind::{char_value, CharOptions};
use crate::{Error, Result, C64};
use faer::Mat;

fn both() -> Want {
    Want { s: true, kstar: true, d: false }
}

/// `S` and `K*` on a boundary for each distinct wavenumber in `ks`.
fn ops_for(ks: &[C64], b: &DiscreteBoundary) -> Result<Vec<(Mat<C64>, Mat<C64>)>> {
    let mut out: Vec<(Mat<C64>, Mat<C64>)> = Vec::with_capacity(ks.len());
    for (i, &k) in ks.iter().enumerate() {
        if let Some(j) = ks[..i].iter().position(|&q| q == k) {
            let (s, ks) = (out[j].0.clone(), out[j].1.clone());
            out.push((s, ks));
        } else {
            let o = self_ops(k, b, both())?;
            out.push((o.s.unwrap(), o.kstar.unwrap()));
        }
    }
    Ok(out)
}

fn check_omega(omega: C64) -> Result<()> {
    if !(omega.re.is_finite() && omega.im.is_finite()) || omega.norm() == 0.0 {
        return Err(Error::Domain { z: omega, reason: "frequency must be finite and nonzero" });
    }
    Ok(())
}

/// Copies `src` into `dst` at block `(bi, bj)` scaled by `alpha`, adding
/// `shift` on the diagonal.
fn put(dst: &mut Mat<C64>, bi: usize, bj: usize, src: &Mat<C64>, alpha: C64, shift: f64) {
    let n = src.nrows();
    for j in 0..n {
        for i in 0..n {
            let mut v = src[(i, j)] * alpha;
            if i == j {
                v += shift;
            }
            dst[(bi * n + i, bj * n + j)] = v;
        }
    }
}

/// The uncoated boundary system on a fixed grid.
#[derive(Debug, Clone)]
pub struct UncoatedSystem {
    pub boundary: DiscreteBoundary,
    pub config: PhysicalConfig,
}

impl UncoatedSystem {
    pub fn new(boundary: DiscreteBoundary, config: PhysicalConfig) -> Self {
        Self { boundary, config }
    }

    /// `[[S^{k_b}, -S^{k_w}], [-I/2 + K*^{k_b}, -delta (I/2 + K*^{k_w})]]`.
    pub fn matrix(&self, omega: C64) -> Result<Mat<C64>> {
        check_omega(omega)?;
        let b = &self.boundary;
        let n = b.n;
        let cfg = &self.config;
        let ops = ops_for(&[cfg.k_b(omega), cfg.k_w(omega)], b)?;
        let one = C64::new(1.0, 0.0);
        let delta = C64::new(cfg.delta(), 0.0);
        let mut m = Mat::zeros(2 * n, 2 * n);
        put(&mut m, 0, 0, &ops[0].0, one, 0.0);
        put(&mut m, 0, 1, &ops[1].0, -one, 0.0);
        put(&mut m, 1, 0, &ops[0].1, one, -0.5);
        put(&mut m, 1, 1, &ops[1].1, -delta, -0.5 * cfg.delta());
        Ok(m)
    }
}

/// The coated boundary system: the bubble boundary `D`, its offset `Dd` at
/// distance `eps`, and the cross interactions between them.
#[derive(Debug, Clone)]
pub struct CoatedSystem {
    pub inner: DiscreteBoundary,
    pub outer: DiscreteBoundary,
    pub epsilon: f64,
    pub config: PhysicalConfig,
}

impl CoatedSystem {
    /// Builds the offset grid with the same number of nodes as `boundary`.
    pub fn new(boundary: DiscreteBoundary, eps: f64, config: PhysicalConfig) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::InvalidInput(format!("coating thickness must be positive, got {eps}")));
        }
        let outer = discretize(&offset_curve(&boundary.curve, eps)?, boundary.n)?;
        Ok(Self { inner: boundary, outer, epsilon: eps, config })
    }

    /// The `4n x 4n` matrix acting on `(phi_1, phi_2, phi_3, phi_4)`;
    /// `phi_1` lives on `D` with `k_b`, `phi_2` on `D` with `k_l`, `phi_3` on
    /// `Dd` with `k_l` and `phi_4` on `Dd` with `k_w`.
    pub fn matrix(&self, omega: C64) -> Result<Mat<C64>> {
        check_omega(omega)?;
        let (d, dd) = (&self.inner, &self.outer);
        let n = d.n;
        let cfg = &self.config;
        let (kb, kl, kw) = (cfg.k_b(omega), cfg.k_l(omega), cfg.k_w(omega));
        let on_d = ops_for(&[kb, kl], d)?;
        let on_dd = ops_for(&[kl, kw], dd)?;
        let [s_dd_d, ds_dd_d, s_d_dd, ds_d_dd] = cross_pair(kl, d, dd)?;
        let one = C64::new(1.0, 0.0);
        let dbl = cfg.delta_bl();
        let dlw = cfg.delta_lw();
        let mut m = Mat::zeros(4 * n, 4 * n);
        // continuity on D
        put(&mut m, 0, 0, &on_d[0].0, one, 0.0);
        put(&mut m, 0, 1, &on_d[1].0, -one, 0.0);
        put(&mut m, 0, 2, &s_d_dd, -one, 0.0);
        // continuity on Dd
        put(&mut m, 1, 1, &s_dd_d, one, 0.0);
        put(&mut m, 1, 2, &on_dd[0].0, one, 0.0);
        put(&mut m, 1, 3, &on_dd[1].0, -one, 0.0);
        // flux on D
        put(&mut m, 2, 0, &on_d[0].1, one, -0.5);
        put(&mut m, 2, 1, &on_d[1].1, C64::new(-dbl, 0.0), -0.5 * dbl);
        put(&mut m, 2, 2, &ds_d_dd, C64::new(-dbl, 0.0), 0.0);
        // flux on Dd
        put(&mut m, 3, 1, &ds_dd_d, one, 0.0);
        put(&mut m, 3, 2, &on_dd[0].1, one, -0.5);
        put(&mut m, 3, 3, &on_dd[1].1, C64::new(-dlw, 0.0), -0.5 * dlw);
        Ok(m)
    }
}

/// Uncoated system matrix at `omega`.
pub fn assemble_uncoated_system(omega: C64, boundary: &DiscreteBoundary, cfg: &PhysicalConfig) -> Result<Mat<C64>> {
    UncoatedSystem::new(boundary.clone(), *cfg).matrix(omega)
}

/// Coated system matrix at `omega`.
pub fn assemble_coated_system(
    omega: C64,
    boundary: &DiscreteBoundary,
    eps: f64,
    cfg: &PhysicalConfig,
) -> Result<Mat<C64>> {
    CoatedSystem::new(boundary.clone(), eps, *cfg)?.matrix(omega)
}

/// Characteristic value of the uncoated (`eps = 0`) or coated system near
/// `seeds`.
pub fn bem_resonance(
    boundary: &DiscreteBoundary,
    cfg: &PhysicalConfig,
    eps: f64,
    seeds: [C64; 3],
    opts: CharOptions,
) -> Result<ResonanceResult> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::InvalidInput(format!("coating thickness must be non-negative, got {eps}")));
    }
    let (res, method) = if eps == 0.0 {
        let sys = UncoatedSystem::new(boundary.clone(), *cfg);
        (char_value(|w| sys.matrix(w), seeds, opts)?, Method::BemUncoated)
    } else {
        let sys = CoatedSystem::new(boundary.clone(), eps, *cfg)?;
        (char_value(|w| sys.matrix(w), seeds, opts)?, Method::BemCoated)
    };
    Ok(ResonanceResult {
        omega: check_branch(res.root)?,
        method,
        residual: res.residual,
        iterations: res.iterations,
        inputs: Inputs {
            shape: Some(boundary.curve.shape().clone()),
            epsilon: eps,
            config: *cfg,
            n: Some(boundary.n),
        },
    })
}
