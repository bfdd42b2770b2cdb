use super::kernels::{self_ops, Want};
use crate::geometry::DiscreteBoundary;
use crate::specfun::eta;
use crate::{Error, Result, C64};
use faer::Mat;

/// Constants of a boundary that enter the resonance formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralQuantities {
    /// Nodal values of the unit-norm kernel density of `-1/2 I + K*`,
    /// with `<psi0, 1> > 0`.
    pub psi0: Vec<f64>,
    /// `S[psi0] = gamma0 * 1` for the Laplace single layer.
    pub gamma0: f64,
    /// `c = <psi0, 1>`.
    pub c: f64,
    /// `c_tau = <tau psi0, 1>`.
    pub c_tau: f64,
    pub area: f64,
    pub perimeter: f64,
    /// `||(-1/2 I + K*)[psi0]||` in the weighted norm.
    pub residual: f64,
    /// Relative spread of `S[psi0]` around `gamma0`.
    pub constancy: f64,
}

/// Computes `psi0` as the smallest right singular vector of the
/// symmetrically weighted `-1/2 I + K*`, then `gamma0`, `c` and `c_tau`.
pub fn spectral_quantities(boundary: &DiscreteBoundary) -> Result<SpectralQuantities> {
    let n = boundary.n;
    let zero = C64::new(0.0, 0.0);
    let ops = self_ops(zero, boundary, Want { s: true, kstar: true, d: false })?;
    let (s, ks) = (ops.s.unwrap(), ops.kstar.unwrap());
    let w = &boundary.weights;
    let sq: Vec<f64> = w.iter().map(|x| x.sqrt()).collect();
    let a = Mat::<f64>::from_fn(n, n, |i, j| {
        let v = ks[(i, j)].re - if i == j { 0.5 } else { 0.0 };
        sq[i] * v / sq[j]
    });
    let svd = a.svd().map_err(|_| Error::InvalidInput("SVD of -1/2 I + K* failed".into()))?;
    let sv: Vec<f64> = (0..n).map(|i| svd.S()[i]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sv[i].total_cmp(&sv[j]));
    let (i0, i1) = (order[0], order[1]);
    if sv[i1] - sv[i0] <= 1e-6 {
        return Err(Error::DegenerateKernel { s0: sv[i0], s1: sv[i1] });
    }
    let v = svd.V();
    let mut psi: Vec<f64> = (0..n).map(|i| v[(i, i0)] / sq[i]).collect();
    let c: f64 = psi.iter().zip(w).map(|(p, w)| p * w).sum();
    if c < 0.0 {
        psi.iter_mut().for_each(|p| *p = -*p);
    }
    let c = c.abs();
    let c_tau: f64 = psi.iter().zip(w).zip(&boundary.curvature).map(|((p, w), t)| p * w * t).sum();

    let apply = |m: &Mat<C64>, x: &[f64]| -> Vec<f64> {
        (0..n).map(|i| (0..n).map(|j| m[(i, j)].re * x[j]).sum()).collect()
    };
    let kp = apply(&ks, &psi);
    let residual = kp
        .iter()
        .zip(&psi)
        .zip(w)
        .map(|((k, p), w)| w * (k - 0.5 * p).powi(2))
        .sum::<f64>()
        .sqrt();
    let sp = apply(&s, &psi);
    let perimeter = boundary.perimeter();
    let gamma0 = sp.iter().zip(w).map(|(s, w)| s * w).sum::<f64>() / perimeter;
    let spread = (sp.iter().zip(w).map(|(s, w)| w * (s - gamma0).powi(2)).sum::<f64>() / perimeter).sqrt();
    let constancy = if gamma0.abs() > 0.0 { spread / gamma0.abs() } else { spread };
    if gamma0.abs() > 1e-6 && constancy > 1e-7 {
        return Err(Error::InvalidInput(format!(
            "S[psi0] is not constant to 1e-7 (relative spread {constancy:.2e}); refine the grid"
        )));
    }
    Ok(SpectralQuantities {
        psi0: psi,
        gamma0,
        c,
        c_tau,
        area: boundary.area(),
        perimeter,
        residual,
        constancy,
    })
}

/// `a = (gamma0 + c eta_{k_b}) / (gamma0 + c eta_{k_other})`.
pub fn a_constant(q: &SpectralQuantities, k_b: C64, k_other: C64) -> Result<C64> {
    let num = eta(k_b)? * q.c + q.gamma0;
    let den = eta(k_other)? * q.c + q.gamma0;
    if den.norm() <= 1e-14 * (q.gamma0.abs() + q.c * eta(k_other)?.norm()) {
        return Err(Error::SingularDenominator("a_constant"));
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{discretize, ParametricCurve};
    use std::f64::consts::PI;

    #[test]
    fn circle_constants() {
        let r = 0.5;
        let b = discretize(&ParametricCurve::circle(r, [0.1, 0.2]).unwrap(), 64).unwrap();
        let q = spectral_quantities(&b).unwrap();
        assert!((q.c - (2.0 * PI * r).sqrt()).abs() < 1e-9);
        assert!((q.gamma0 - (r / (2.0 * PI)).sqrt() * r.ln()).abs() < 1e-12);
        assert!((q.gamma0 + 0.195_533).abs() < 1e-6);
        assert!((q.c_tau - q.c / r).abs() < 1e-9);
        for p in &q.psi0 {
            assert!((p - 1.0 / PI.sqrt()).abs() < 1e-10);
        }
        assert!(q.residual < 1e-9);
    }

    #[test]
    fn unit_circle_gamma_zero() {
        let b = discretize(&ParametricCurve::circle(1.0, [0.0, 0.0]).unwrap(), 64).unwrap();
        let q = spectral_quantities(&b).unwrap();
        assert!(q.gamma0.abs() < 1e-12);
        let (kb, kw) = (C64::new(0.3, -0.01), C64::new(0.1, -0.003));
        let a = a_constant(&q, kb, kw).unwrap();
        let expect = eta(kb).unwrap() / eta(kw).unwrap();
        assert!((a - expect).norm() < 1e-10);
        assert!((a_constant(&q, kb, kb).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn ellipse_refinement() {
        let c = ParametricCurve::ellipse(0.6, 0.4).unwrap();
        let q1 = spectral_quantities(&discretize(&c, 64).unwrap()).unwrap();
        let q2 = spectral_quantities(&discretize(&c, 128).unwrap()).unwrap();
        assert!(q1.residual < 1e-9 && q2.residual < 1e-9);
        assert!((q1.gamma0 - q2.gamma0).abs() < 1e-8);
    }
}
