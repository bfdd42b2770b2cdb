use super::{check_branch, Inputs, Method, PhysicalConfig, ResonanceResult};
use crate::geometry::Shape;
use crate::rootfind::{muller, Tolerances};
use crate::specfun::{bessel_j, bessel_j_deriv, hankel1, hankel1_deriv};
use crate::{Error, Result, C64};
use faer::Mat;

/// The `4 x 4` matrix of the radially symmetric mode for a circle of radius
/// `r` with a concentric layer of thickness `eps`. Rows are continuity at
/// `r`, continuity at `r + eps`, flux at `r` (with `delta_bl`) and flux at
/// `r + eps` (with `delta_lw`).
pub fn multipole_matrix(omega: C64, r: f64, eps: f64, cfg: &PhysicalConfig) -> Result<Mat<C64>> {
    if !(r > 0.0 && eps > 0.0 && r.is_finite() && eps.is_finite()) {
        return Err(Error::InvalidInput(format!("need R > 0 and eps > 0, got R = {r}, eps = {eps}")));
    }
    let (kb, kl, kw) = (cfg.k_b(omega), cfg.k_l(omega), cfg.k_w(omega));
    let r2 = r + eps;
    let (dbl, dlw) = (cfg.delta_bl(), cfg.delta_lw());
    let z = C64::new(0.0, 0.0);
    let rows = [
        [bessel_j(0, kb * r)?, -bessel_j(0, kl * r)?, -hankel1(0, kl * r)?, z],
        [z, bessel_j(0, kl * r2)?, hankel1(0, kl * r2)?, -hankel1(0, kw * r2)?],
        [
            kb * bessel_j_deriv(0, kb * r)?,
            -kl * bessel_j_deriv(0, kl * r)? * dbl,
            -kl * hankel1_deriv(0, kl * r)? * dbl,
            z,
        ],
        [
            z,
            kl * bessel_j_deriv(0, kl * r2)?,
            kl * hankel1_deriv(0, kl * r2)?,
            -kw * hankel1_deriv(0, kw * r2)? * dlw,
        ],
    ];
    Ok(Mat::from_fn(4, 4, |i, j| rows[i][j]))
}

/// The uncoated `2 x 2` system obtained by eliminating the layer at
/// `eps = 0`: `[[J0(k_b R), -H0(k_w R)], [k_b J0'(k_b R), -delta k_w H0'(k_w R)]]`.
pub fn multipole_reduced_matrix(omega: C64, r: f64, cfg: &PhysicalConfig) -> Result<Mat<C64>> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidInput(format!("need R > 0, got {r}")));
    }
    let (kb, kw) = (cfg.k_b(omega), cfg.k_w(omega));
    let rows = [
        [bessel_j(0, kb * r)?, -hankel1(0, kw * r)?],
        [kb * bessel_j_deriv(0, kb * r)?, -kw * hankel1_deriv(0, kw * r)? * cfg.delta()],
    ];
    Ok(Mat::from_fn(2, 2, |i, j| rows[i][j]))
}

/// Determinant of the multipole system; the reduced one when `eps = 0`.
pub fn multipole_det(omega: C64, r: f64, eps: f64, cfg: &PhysicalConfig) -> Result<C64> {
    let m = if eps == 0.0 { multipole_reduced_matrix(omega, r, cfg)? } else { multipole_matrix(omega, r, eps, cfg)? };
    Ok(m.determinant())
}

/// Muller root of the multipole determinant, normalised by its value at the
/// first seed.
pub fn multipole_resonance(r: f64, eps: f64, cfg: &PhysicalConfig, seeds: [C64; 3]) -> Result<ResonanceResult> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::InvalidInput(format!("coating thickness must be non-negative, got {eps}")));
    }
    let d0 = multipole_det(seeds[0], r, eps, cfg)?;
    if d0.norm() == 0.0 {
        return Err(Error::InvalidInput("multipole determinant vanishes at the first seed".into()));
    }
    let mut failure = None;
    let f = |w: C64| match multipole_det(w, r, eps, cfg) {
        Ok(d) => d / d0,
        Err(e) => {
            failure.get_or_insert(e);
            C64::new(f64::NAN, f64::NAN)
        }
    };
    let res = muller(f, seeds, Tolerances::default());
    if let Some(e) = failure {
        return Err(e);
    }
    let res = res?;
    Ok(ResonanceResult {
        omega: check_branch(res.root)?,
        method: Method::Multipole,
        residual: res.residual,
        iterations: res.iterations,
        inputs: Inputs {
            shape: Some(Shape::Circle { radius: r, center: [0.0, 0.0] }),
            epsilon: eps,
            config: *cfg,
            n: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonance::seeds_around;

    #[test]
    fn homogeneous_medium_has_no_resonance() {
        let cfg = PhysicalConfig::new([1.0; 3], [1.0; 3]).unwrap();
        for i in 1..=20 {
            for j in 0..=10 {
                let w = C64::new(0.1 * i as f64, -0.05 * j as f64);
                assert!(multipole_det(w, 0.5, 0.05, &cfg).unwrap().norm() > 1e-12);
            }
        }
    }

    #[test]
    fn smoke_entries() {
        let cfg = PhysicalConfig::from_contrasts(1.0, 1.0, 1.0, 1e-3, 0.5).unwrap();
        let m = multipole_matrix(C64::new(0.1, 0.0), 0.5, 0.05, &cfg).unwrap();
        let zeros = [(0, 3), (1, 0), (2, 3), (3, 0)];
        for i in 0..4 {
            for j in 0..4 {
                let v = m[(i, j)];
                assert!(v.re.is_finite() && v.im.is_finite());
                assert_eq!(v.norm() == 0.0, zeros.contains(&(i, j)));
            }
        }
    }

    #[test]
    fn thin_layer_limit_matches_reduced_system() {
        let cfg = PhysicalConfig::from_contrasts(1.0, 1.0, 1.0, 1e-3, 0.5).unwrap();
        let w0 = C64::new(0.042, -0.009);
        let base = multipole_resonance(0.5, 0.0, &cfg, seeds_around(w0)).unwrap().omega;
        let thin = multipole_resonance(0.5, 1e-7, &cfg, seeds_around(w0)).unwrap().omega;
        assert!((base - thin).norm() < 1e-6 * base.norm());
    }

    #[test]
    fn direction_of_shift() {
        let w0 = C64::new(0.042, -0.009);
        for (dlw, up) in [(0.5, true), (1.5, false)] {
            let cfg = PhysicalConfig::from_contrasts(1.0, 1.0, 1.0, 1e-3, dlw).unwrap();
            let base = multipole_resonance(0.5, 0.0, &cfg, seeds_around(w0)).unwrap().omega;
            let r = multipole_resonance(0.5, 0.05, &cfg, seeds_around(base)).unwrap();
            assert!(r.residual < 1e-10);
            assert_eq!(r.omega.re > base.re, up);
        }
    }
}
