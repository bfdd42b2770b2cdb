//! Matrix assembly for the Helmholtz and Laplace kernels.
//!
//! On-boundary operators split each kernel as
//! `M(t,s) = M1(t,s) ln(4 sin^2((t-s)/2)) + M2(t,s)` and apply the product
//! rule to `M1` and the trapezoid rule to `M2`. Off-boundary operators use
//! the trapezoid rule on the smooth kernel.

use super::quadrature::{kress_weights, log_sin2, trig_interp};
use crate::geometry::{discretize, min_distance, DiscreteBoundary, Vec2};
use crate::specfun::{cylinder01, eta};
use crate::{Error, Result, C64};
use faer::Mat;
use rayon::prelude::*;
use std::f64::consts::PI;

const FOUR_PI: f64 = 4.0 * PI;

/// Which on-boundary operators to build.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Want {
    pub s: bool,
    pub kstar: bool,
    pub d: bool,
}

#[derive(Default)]
pub(crate) struct Ops {
    pub s: Option<Mat<C64>>,
    pub kstar: Option<Mat<C64>>,
    pub d: Option<Mat<C64>>,
}

fn is_laplace(k: C64) -> bool {
    k.re == 0.0 && k.im == 0.0
}

/// `[J0, J1, H0, H1](k r)` for the strict upper triangle of a symmetric
/// distance table, row by row.
fn upper_pairs(k: C64, nodes: &[Vec2]) -> Result<Vec<Vec<[C64; 4]>>> {
    let n = nodes.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..n)
                .map(|j| cylinder01(k * (nodes[i] - nodes[j]).norm()))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// Single layer, Neumann-Poincare adjoint and double layer on one boundary.
pub(crate) fn self_ops(k: C64, b: &DiscreteBoundary, want: Want) -> Result<Ops> {
    let n = b.n;
    let rw = kress_weights(n);
    let ls = log_sin2(n);
    let hw = 2.0 * PI / n as f64;
    let laplace = is_laplace(k);
    let eta_k = if laplace { C64::new(0.0, 0.0) } else { eta(k)? };
    let pairs = if laplace { Vec::new() } else { upper_pairs(k, &b.nodes)? };

    let mut s = want.s.then(|| Mat::<C64>::zeros(n, n));
    let mut ks = want.kstar.then(|| Mat::<C64>::zeros(n, n));
    let mut dl = want.d.then(|| Mat::<C64>::zeros(n, n));
    let i_quarter = C64::new(0.0, 0.25);

    for i in 0..n {
        let sp = b.speed[i];
        if let Some(m) = s.as_mut() {
            let m1 = sp / FOUR_PI;
            let m2 = (C64::new(sp.ln() / (2.0 * PI), 0.0) + eta_k) * sp;
            m[(i, i)] = m2 * hw + rw[0] * m1;
        }
        let diag = C64::new(hw * b.curvature[i] * sp / FOUR_PI, 0.0);
        if let Some(m) = ks.as_mut() {
            m[(i, i)] = diag;
        }
        if let Some(m) = dl.as_mut() {
            m[(i, i)] = diag;
        }
        for j in (i + 1)..n {
            let dx = b.nodes[i] - b.nodes[j];
            let r = dx.norm();
            let g_ij = dx.dot(b.normals[i]) / r; // <x_i - x_j, nu_i>/r
            let g_ji = -dx.dot(b.normals[j]) / r; // <x_j - x_i, nu_j>/r
            let d = j - i;
            let (rr, lg) = (rw[d], ls[d]);
            // log coefficient and full kernel, both times the source speed
            let put = |m1: C64, mm: C64| m1 * rr + (mm - m1 * lg) * hw;
            if laplace {
                let lr = r.ln() / (2.0 * PI);
                if let Some(m) = s.as_mut() {
                    m[(i, j)] = put(C64::new(b.speed[j] / FOUR_PI, 0.0), C64::new(lr * b.speed[j], 0.0));
                    m[(j, i)] = put(C64::new(b.speed[i] / FOUR_PI, 0.0), C64::new(lr * b.speed[i], 0.0));
                }
                let f = 1.0 / (2.0 * PI * r);
                if let Some(m) = ks.as_mut() {
                    m[(i, j)] = C64::new(hw * g_ij * f * b.speed[j], 0.0);
                    m[(j, i)] = C64::new(hw * g_ji * f * b.speed[i], 0.0);
                }
                if let Some(m) = dl.as_mut() {
                    m[(i, j)] = C64::new(hw * g_ji * f * b.speed[j], 0.0);
                    m[(j, i)] = C64::new(hw * g_ij * f * b.speed[i], 0.0);
                }
                continue;
            }
            let [j0, j1, h0, h1] = pairs[i][j - i - 1];
            if let Some(m) = s.as_mut() {
                let a1 = j0 / FOUR_PI;
                let a = -i_quarter * h0;
                m[(i, j)] = put(a1 * b.speed[j], a * b.speed[j]);
                m[(j, i)] = put(a1 * b.speed[i], a * b.speed[i]);
            }
            // (ik/4) H1(kr) g and its log coefficient -(k/4pi) J1(kr) g
            let c1 = -k * j1 / FOUR_PI;
            let c = i_quarter * k * h1;
            if let Some(m) = ks.as_mut() {
                m[(i, j)] = put(c1 * (g_ij * b.speed[j]), c * (g_ij * b.speed[j]));
                m[(j, i)] = put(c1 * (g_ji * b.speed[i]), c * (g_ji * b.speed[i]));
            }
            if let Some(m) = dl.as_mut() {
                m[(i, j)] = put(c1 * (g_ji * b.speed[j]), c * (g_ji * b.speed[j]));
                m[(j, i)] = put(c1 * (g_ij * b.speed[i]), c * (g_ij * b.speed[i]));
            }
        }
    }
    Ok(Ops { s, kstar: ks, d: dl })
}

/// Source data for off-boundary quadrature.
pub(crate) struct Source<'a> {
    pub nodes: &'a [Vec2],
    pub normals: &'a [Vec2],
    pub weights: &'a [f64],
}

impl<'a> Source<'a> {
    pub fn of(b: &'a DiscreteBoundary) -> Self {
        Source { nodes: &b.nodes, normals: &b.normals, weights: &b.weights }
    }
}

/// Off-boundary operators: single layer, its gradient along `dirs`, and the
/// double layer, all by plain trapezoid quadrature.
pub(crate) fn off_ops(
    k: C64,
    src: &Source<'_>,
    targets: &[Vec2],
    dirs: Option<&[Vec2]>,
    want: Want,
) -> Result<Ops> {
    let (m, n) = (targets.len(), src.nodes.len());
    let laplace = is_laplace(k);
    let i_quarter = C64::new(0.0, 0.25);
    let rows: Vec<Vec<[C64; 3]>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dx = targets[i] - src.nodes[j];
                    let r = dx.norm();
                    let w = src.weights[j];
                    let gx = dirs.map_or(0.0, |d| dx.dot(d[i]) / r);
                    let gy = -dx.dot(src.normals[j]) / r;
                    if laplace {
                        let f = 1.0 / (2.0 * PI * r);
                        Ok([
                            C64::new(r.ln() / (2.0 * PI) * w, 0.0),
                            C64::new(gx * f * w, 0.0),
                            C64::new(gy * f * w, 0.0),
                        ])
                    } else {
                        let [_, _, h0, h1] = cylinder01(k * r)?;
                        let c = i_quarter * k * h1 * w;
                        Ok([-i_quarter * h0 * w, c * gx, c * gy])
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let build = |idx: usize| Mat::from_fn(m, n, |i, j| rows[i][j][idx]);
    Ok(Ops {
        s: want.s.then(|| build(0)),
        kstar: want.kstar.then(|| build(1)),
        d: want.d.then(|| build(2)),
    })
}

/// Off-boundary operators with the near-singularity guard: the source grid is
/// upsampled four times when targets are closer than three source spacings.
pub(crate) fn off_ops_guarded(
    k: C64,
    src: &DiscreteBoundary,
    targets: &[Vec2],
    dirs: Option<&[Vec2]>,
    want: Want,
    upsample: bool,
) -> Result<Ops> {
    let distance = min_distance(targets, &src.nodes);
    let required = 3.0 * src.max_spacing();
    if distance >= required {
        return off_ops(k, &Source::of(src), targets, dirs, want);
    }
    if !upsample {
        return Err(Error::NearSingular { distance, required });
    }
    let fine = discretize(&src.curve, 4 * src.n)?;
    let required = 3.0 * fine.max_spacing();
    if distance < required {
        return Err(Error::NearSingular { distance, required });
    }
    let ops = off_ops(k, &Source::of(&fine), targets, dirs, want)?;
    let p = trig_interp(src.n, fine.n);
    let p = Mat::from_fn(p.nrows(), p.ncols(), |i, j| C64::new(p[(i, j)], 0.0));
    let down = |a: Option<Mat<C64>>| a.map(|a| &a * &p);
    Ok(Ops { s: down(ops.s), kstar: down(ops.kstar), d: down(ops.d) })
}

/// The four cross blocks between `D` and its offset `Dd`:
/// `[S_{Dd,D}, dS_{Dd,D}/dnu, S_{D,Dd}, dS_{D,Dd}/dnu]` where `S_{X,Y}` has
/// targets on `X` and sources on `Y`.
pub(crate) fn cross_pair(k: C64, d: &DiscreteBoundary, dd: &DiscreteBoundary) -> Result<[Mat<C64>; 4]> {
    let dist = min_distance(&d.nodes, &dd.nodes);
    let direct = dist >= 3.0 * d.max_spacing() && dist >= 3.0 * dd.max_spacing() && d.n == dd.n;
    let want = Want { s: true, kstar: true, d: false };
    if !direct {
        let a = off_ops_guarded(k, d, &dd.nodes, Some(&dd.normals), want, true)?;
        let b = off_ops_guarded(k, dd, &d.nodes, Some(&d.normals), want, true)?;
        return Ok([a.s.unwrap(), a.kstar.unwrap(), b.s.unwrap(), b.kstar.unwrap()]);
    }
    let n = d.n;
    let i_quarter = C64::new(0.0, 0.25);
    let rows: Vec<Vec<[C64; 4]>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    // target x~_i on Dd, source y_j on D
                    let dx = dd.nodes[i] - d.nodes[j];
                    let r = dx.norm();
                    let [_, _, h0, h1] = cylinder01(k * r)?;
                    let g = -i_quarter * h0;
                    let c = i_quarter * k * h1 / r;
                    Ok([
                        g * d.weights[j],
                        c * dx.dot(dd.normals[i]) * d.weights[j],
                        g * dd.weights[i],
                        c * (-dx).dot(d.normals[j]) * dd.weights[i],
                    ])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok([
        Mat::from_fn(n, n, |i, j| rows[i][j][0]),
        Mat::from_fn(n, n, |i, j| rows[i][j][1]),
        Mat::from_fn(n, n, |i, j| rows[j][i][2]),
        Mat::from_fn(n, n, |i, j| rows[j][i][3]),
    ])
}
