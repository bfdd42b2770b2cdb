use super::kernels::{self_ops, Want};
use super::quadrature::{kress_weights, log_sin2};
use super::{DiscreteOperator, KernelKind};
use crate::geometry::DiscreteBoundary;
use crate::specfun::{eta, expansion_coeffs};
use crate::{Error, Result, C64};
use faer::Mat;
use std::f64::consts::PI;

/// `S_hat^k = S + eta_k int . dsigma`, Laplace single layer plus a rank-one
/// term.
pub fn s_hat(k: C64, boundary: &DiscreteBoundary) -> Result<DiscreteOperator> {
    if k.re == 0.0 && k.im == 0.0 {
        return Err(Error::InvalidInput("s_hat needs k != 0".into()));
    }
    let e = eta(k)?;
    let zero = C64::new(0.0, 0.0);
    let mut m = self_ops(zero, boundary, Want { s: true, ..Want::default() })?.s.unwrap();
    let n = boundary.n;
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] += e * boundary.weights[j];
        }
    }
    Ok(DiscreteOperator::on(m, KernelKind::SHat, k, boundary))
}

/// First expansion operators of the small-`k` limits
/// `S^k = S_hat^k + k^2 ln k S1 + k^2 S2 + ...` and
/// `K^{k*} = K* + k^2 ln k K1 + k^2 K2 + ...`.
#[derive(Debug, Clone)]
pub struct ExpansionTerms {
    /// Kernel `b1 |x-y|^2`.
    pub s1: DiscreteOperator,
    /// Kernel `|x-y|^2 (b1 ln|x-y| + c1)`.
    pub s2: DiscreteOperator,
    /// Kernel `b1 d|x-y|^2/dnu_x`.
    pub k1: DiscreteOperator,
    /// Kernel `d(|x-y|^2 (b1 ln|x-y| + c1))/dnu_x`.
    pub k2: DiscreteOperator,
}

pub fn expansion_terms(boundary: &DiscreteBoundary) -> Result<ExpansionTerms> {
    let ec = expansion_coeffs(C64::new(1.0, 0.0), 1)?;
    let (b1, c1) = (ec.b[1], ec.c[1]);
    let n = boundary.n;
    let rw = kress_weights(n);
    let ls = log_sin2(n);
    let hw = 2.0 * PI / n as f64;
    let (mut s1, mut s2, mut k1, mut k2) =
        (Mat::<C64>::zeros(n, n), Mat::<C64>::zeros(n, n), Mat::<C64>::zeros(n, n), Mat::<C64>::zeros(n, n));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = (i + n - j) % n;
            let dx = boundary.nodes[i] - boundary.nodes[j];
            let r2 = dx.norm_sq();
            let lr = 0.5 * r2.ln();
            let g = dx.dot(boundary.normals[i]);
            let (sp, w) = (boundary.speed[j], boundary.weights[j]);
            s1[(i, j)] = C64::new(b1 * r2 * w, 0.0);
            k1[(i, j)] = C64::new(2.0 * b1 * g * w, 0.0);
            // log parts: r^2 b1 ln r and 2 b1 g ln r
            let m1 = b1 * r2 / 2.0 * sp;
            let full = (c1 + b1 * lr) * r2 * sp;
            s2[(i, j)] = full * hw + (rw[d] - hw * ls[d]) * m1;
            let m1 = b1 * g * sp;
            let full = (c1 * 2.0 + 2.0 * b1 * lr + b1) * g * sp;
            k2[(i, j)] = full * hw + (rw[d] - hw * ls[d]) * m1;
        }
    }
    Ok(ExpansionTerms {
        s1: DiscreteOperator::on(s1, KernelKind::S1Expansion, C64::new(0.0, 0.0), boundary),
        s2: DiscreteOperator::on(s2, KernelKind::S2Expansion, C64::new(0.0, 0.0), boundary),
        k1: DiscreteOperator::on(k1, KernelKind::K1Expansion, C64::new(0.0, 0.0), boundary),
        k2: DiscreteOperator::on(k2, KernelKind::K2Expansion, C64::new(0.0, 0.0), boundary),
    })
}
