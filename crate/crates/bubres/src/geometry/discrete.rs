use super::{ParametricCurve, Vec2};
use crate::{Error, Result};
use std::f64::consts::TAU;

/// Periodic-trapezoid discretisation of a closed curve.
///
/// Densities on the boundary are stored as values at `nodes`; integrals
/// against arclength are `sum_i weights[i] f[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBoundary {
    pub n: usize,
    /// Parameter values `t_i = 2 pi i / n`.
    pub t: Vec<f64>,
    pub nodes: Vec<Vec2>,
    /// Arclength weights `|x'(t_i)| 2 pi / n`.
    pub weights: Vec<f64>,
    pub normals: Vec<Vec2>,
    pub tangents: Vec<Vec2>,
    pub curvature: Vec<f64>,
    /// Parametric speeds `|x'(t_i)|`.
    pub speed: Vec<f64>,
    pub curve: ParametricCurve,
    /// Normal offset from the uncoated boundary.
    pub offset: f64,
}

/// Samples `curve` at `n` equispaced parameter values. `n` must be even and
/// at least 16.
pub fn discretize(curve: &ParametricCurve, n: usize) -> Result<DiscreteBoundary> {
    if n < 16 || !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("node count must be even and >= 16, got {n}")));
    }
    let h = TAU / n as f64;
    let mut b = DiscreteBoundary {
        n,
        t: Vec::with_capacity(n),
        nodes: Vec::with_capacity(n),
        weights: Vec::with_capacity(n),
        normals: Vec::with_capacity(n),
        tangents: Vec::with_capacity(n),
        curvature: Vec::with_capacity(n),
        speed: Vec::with_capacity(n),
        curve: curve.clone(),
        offset: curve.offset(),
    };
    for i in 0..n {
        let t = h * i as f64;
        let p = curve.eval(t);
        b.t.push(t);
        b.nodes.push(p.position);
        b.speed.push(p.speed());
        b.weights.push(p.speed() * h);
        b.normals.push(p.normal());
        b.tangents.push(p.tangent());
        b.curvature.push(p.curvature());
    }
    Ok(b)
}

/// Area by the divergence theorem, `(1/2) sum_i w_i <x_i, nu_i>`.
pub fn enclosed_area(boundary: &DiscreteBoundary) -> f64 {
    0.5 * boundary
        .nodes
        .iter()
        .zip(&boundary.normals)
        .zip(&boundary.weights)
        .map(|((x, nu), w)| w * x.dot(*nu))
        .sum::<f64>()
}

impl DiscreteBoundary {
    pub fn perimeter(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn area(&self) -> f64 {
        enclosed_area(self)
    }

    /// Largest distance between consecutive nodes.
    pub fn max_spacing(&self) -> f64 {
        (0..self.n)
            .map(|i| (self.nodes[(i + 1) % self.n] - self.nodes[i]).norm())
            .fold(0.0, f64::max)
    }

    /// Smallest node-to-node distance between two boundaries.
    pub fn min_distance_to(&self, other: &DiscreteBoundary) -> f64 {
        min_distance(&self.nodes, &other.nodes)
    }
}

pub(crate) fn min_distance(a: &[Vec2], b: &[Vec2]) -> f64 {
    a.iter()
        .flat_map(|p| b.iter().map(move |q| (*p - *q).norm_sq()))
        .fold(f64::INFINITY, f64::min)
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::offset_curve;
    use std::f64::consts::PI;

    #[test]
    fn circle_weights_and_normals() {
        let c = ParametricCurve::circle(1.0, [0.0, 0.0]).unwrap();
        let b = discretize(&c, 64).unwrap();
        assert!((b.perimeter() - TAU).abs() < 1e-13);
        for (x, nu) in b.nodes.iter().zip(&b.normals) {
            assert!((x.dot(*nu) - 1.0).abs() < 1e-14);
        }
        assert!((enclosed_area(&b) - PI).abs() < 1e-13);
    }

    #[test]
    fn areas() {
        let c = ParametricCurve::circle(0.5, [0.3, -0.2]).unwrap();
        assert!((enclosed_area(&discretize(&c, 32).unwrap()) - PI / 4.0).abs() < 1e-14);
        let e = ParametricCurve::ellipse(2.0, 1.0).unwrap();
        assert!((enclosed_area(&discretize(&e, 128).unwrap()) - TAU).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_node_counts() {
        let c = ParametricCurve::circle(1.0, [0.0, 0.0]).unwrap();
        assert!(discretize(&c, 15).is_err());
        assert!(discretize(&c, 33).is_err());
        assert!(discretize(&c, 14).is_err());
    }

    #[test]
    fn star_spectral_perimeter() {
        let c = ParametricCurve::star(0.5, 0.05, 3).unwrap();
        let p1 = discretize(&c, 128).unwrap().perimeter();
        let p2 = discretize(&c, 256).unwrap().perimeter();
        assert!((p1 - p2).abs() < 1e-10);
    }

    #[test]
    fn offset_star_perimeter() {
        let c = ParametricCurve::star(0.5, 0.05, 3).unwrap();
        let d = offset_curve(&c, 0.01).unwrap();
        let p = discretize(&c, 256).unwrap().perimeter();
        let pd = discretize(&d, 256).unwrap().perimeter();
        assert!((pd - p - TAU * 0.01).abs() < 1e-10);
    }

    #[test]
    fn offset_nodes_and_weights() {
        let c = ParametricCurve::ellipse(0.6, 0.4).unwrap();
        let eps = 0.03;
        let b = discretize(&c, 64).unwrap();
        let bd = discretize(&offset_curve(&c, eps).unwrap(), 64).unwrap();
        assert_eq!(bd.offset, eps);
        for i in 0..64 {
            assert_eq!(bd.nodes[i], b.nodes[i] + b.normals[i] * eps);
            let w = b.weights[i] * (1.0 + eps * b.curvature[i]);
            assert!((bd.weights[i] - w).abs() < 1e-10 * w);
            assert!((bd.curvature[i] - b.curvature[i] / (1.0 + eps * b.curvature[i])).abs() < 1e-8);
        }
        assert!((b.min_distance_to(&bd) - eps).abs() < 1e-3);
    }
}
