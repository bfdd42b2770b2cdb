//! Nystrom discretisations of the layer potentials
//!
//! * single layer `S^k[phi](x) = int Gamma^k(x,y) phi(y) dsigma(y)`,
//! * Neumann-Poincare adjoint `K^{k*}` (kernel `dGamma/dnu_x`),
//! * double layer `D^k` (kernel `dGamma/dnu_y`),
//!
//! with `Gamma^k = -(i/4) H_0^{(1)}(k|x-y|)` and `Gamma^0 = (1/2pi) ln|x-y|`,
//! plus the expansion operators of the small-`k` limit and the spectral
//! constants of a boundary.
//!
//! Matrices act on density values at the nodes, with arclength weights
//! already folded in. Weighted adjoints follow the discrete pairing
//! `<f, g> = sum_i w_i f_i conj(g_i)`.

mod expansion;
mod kernels;
mod quadrature;
mod spectral;

pub use expansion::{expansion_terms, s_hat, ExpansionTerms};
pub use spectral::{a_constant, spectral_quantities, SpectralQuantities};

pub(crate) use kernels::{cross_pair, self_ops, Want};

use crate::geometry::{DiscreteBoundary, Vec2};
use crate::linalg::matvec;
use crate::{Result, C64};
use faer::Mat;

/// Kernel carried by a [`DiscreteOperator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Single,
    /// Normal derivative of the single layer at targets off the source.
    SingleNormalDerivative,
    Double,
    NpAdjoint,
    SHat,
    S1Expansion,
    S2Expansion,
    K1Expansion,
    K2Expansion,
}

/// Where an operator's sources or targets live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryRef {
    /// A discrete boundary with `n` nodes at normal offset `offset`.
    Boundary { n: usize, offset: f64 },
    /// Free evaluation points.
    Points { m: usize },
}

impl BoundaryRef {
    fn of(b: &DiscreteBoundary) -> Self {
        BoundaryRef::Boundary { n: b.n, offset: b.offset }
    }
}

/// Dense matrix of a layer potential together with its kernel metadata.
#[derive(Debug, Clone)]
pub struct DiscreteOperator {
    pub matrix: Mat<C64>,
    pub kind: KernelKind,
    /// Wavenumber (0 for Laplace kernels).
    pub k: C64,
    pub source: BoundaryRef,
    pub target: BoundaryRef,
}

impl DiscreteOperator {
    fn on(matrix: Mat<C64>, kind: KernelKind, k: C64, b: &DiscreteBoundary) -> Self {
        DiscreteOperator { matrix, kind, k, source: BoundaryRef::of(b), target: BoundaryRef::of(b) }
    }

    /// Applies the operator to nodal density values.
    pub fn apply(&self, phi: &[C64]) -> Vec<C64> {
        matvec(self.matrix.as_ref(), phi)
    }

    /// Same as [`apply`](Self::apply) for real densities.
    pub fn apply_real(&self, phi: &[f64]) -> Vec<C64> {
        let v: Vec<C64> = phi.iter().map(|&x| C64::new(x, 0.0)).collect();
        self.apply(&v)
    }

    /// Hermitian adjoint for the weighted pairing on a single boundary,
    /// `W^{-1} A^H W`.
    pub fn weighted_adjoint(&self, b: &DiscreteBoundary) -> Mat<C64> {
        let a = &self.matrix;
        Mat::from_fn(a.ncols(), a.nrows(), |i, j| a[(j, i)].conj() * (b.weights[j] / b.weights[i]))
    }

    /// Transpose for the bilinear weighted pairing, `W^{-1} A^T W`.
    pub fn weighted_transpose(&self, b: &DiscreteBoundary) -> Mat<C64> {
        let a = &self.matrix;
        Mat::from_fn(a.ncols(), a.nrows(), |i, j| a[(j, i)] * (b.weights[j] / b.weights[i]))
    }
}

/// Target selection for [`single_layer`].
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    /// Targets are the source nodes (log-corrected quadrature).
    Same,
    /// Targets are the nodes of another boundary (plain quadrature). With
    /// `upsample` the source grid is refined four times when the boundaries
    /// are closer than three source spacings; otherwise that is an error.
    Other { boundary: &'a DiscreteBoundary, upsample: bool },
}

/// Discrete inner product `sum_i w_i f_i conj(g_i)`.
pub fn inner(w: &[f64], f: &[C64], g: &[C64]) -> C64 {
    w.iter().zip(f).zip(g).map(|((w, f), g)| f * g.conj() * *w).sum()
}

/// Single layer potential matrix.
pub fn single_layer(k: C64, src: &DiscreteBoundary, target: Target<'_>) -> Result<DiscreteOperator> {
    match target {
        Target::Same => {
            let ops = self_ops(k, src, Want { s: true, ..Want::default() })?;
            Ok(DiscreteOperator::on(ops.s.unwrap(), KernelKind::Single, k, src))
        }
        Target::Other { boundary, upsample } => {
            let ops = kernels::off_ops_guarded(k, src, &boundary.nodes, None, Want { s: true, ..Want::default() }, upsample)?;
            Ok(DiscreteOperator {
                matrix: ops.s.unwrap(),
                kind: KernelKind::Single,
                k,
                source: BoundaryRef::of(src),
                target: BoundaryRef::of(boundary),
            })
        }
    }
}

/// Normal derivative (along the target normals) of the single layer from
/// `src` evaluated on a different boundary `tgt`.
pub fn single_layer_normal_derivative(
    k: C64,
    src: &DiscreteBoundary,
    tgt: &DiscreteBoundary,
    upsample: bool,
) -> Result<DiscreteOperator> {
    let want = Want { kstar: true, ..Want::default() };
    let ops = kernels::off_ops_guarded(k, src, &tgt.nodes, Some(&tgt.normals), want, upsample)?;
    Ok(DiscreteOperator {
        matrix: ops.kstar.unwrap(),
        kind: KernelKind::SingleNormalDerivative,
        k,
        source: BoundaryRef::of(src),
        target: BoundaryRef::of(tgt),
    })
}

/// Neumann-Poincare adjoint `K^{k*}` on one boundary. The diagonal carries
/// the smooth limit `tau(x)/(4 pi)`.
pub fn np_adjoint(k: C64, boundary: &DiscreteBoundary) -> Result<DiscreteOperator> {
    let ops = self_ops(k, boundary, Want { kstar: true, ..Want::default() })?;
    Ok(DiscreteOperator::on(ops.kstar.unwrap(), KernelKind::NpAdjoint, k, boundary))
}

/// Double layer `K^k` on one boundary (principal value part).
pub fn double_layer(k: C64, boundary: &DiscreteBoundary) -> Result<DiscreteOperator> {
    let ops = self_ops(k, boundary, Want { d: true, ..Want::default() })?;
    Ok(DiscreteOperator::on(ops.d.unwrap(), KernelKind::Double, k, boundary))
}

fn at_points(
    k: C64,
    src: &DiscreteBoundary,
    points: &[Vec2],
    dirs: Option<&[Vec2]>,
    want: Want,
    kind: KernelKind,
    upsample: bool,
) -> Result<DiscreteOperator> {
    let ops = kernels::off_ops_guarded(k, src, points, dirs, want, upsample)?;
    let matrix = ops.s.or(ops.kstar).or(ops.d).unwrap();
    Ok(DiscreteOperator { matrix, kind, k, source: BoundaryRef::of(src), target: BoundaryRef::Points { m: points.len() } })
}

/// Single layer evaluated at free points away from the source.
pub fn single_layer_at(k: C64, src: &DiscreteBoundary, points: &[Vec2], upsample: bool) -> Result<DiscreteOperator> {
    at_points(k, src, points, None, Want { s: true, ..Want::default() }, KernelKind::Single, upsample)
}

/// Directional derivative `<grad S[phi](x), d>` at free points.
pub fn single_layer_gradient_at(
    k: C64,
    src: &DiscreteBoundary,
    points: &[Vec2],
    dirs: &[Vec2],
    upsample: bool,
) -> Result<DiscreteOperator> {
    let want = Want { kstar: true, ..Want::default() };
    at_points(k, src, points, Some(dirs), want, KernelKind::SingleNormalDerivative, upsample)
}

/// Double layer evaluated at free points away from the source.
pub fn double_layer_at(k: C64, src: &DiscreteBoundary, points: &[Vec2], upsample: bool) -> Result<DiscreteOperator> {
    at_points(k, src, points, None, Want { d: true, ..Want::default() }, KernelKind::Double, upsample)
}
