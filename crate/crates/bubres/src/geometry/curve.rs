use super::Vec2;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Shape library. Every entry is a finite Fourier series in the parameter
/// `t`, so derivatives of all orders are exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum Shape {
    /// `center + radius (cos t, sin t)`.
    Circle {
        radius: f64,
        #[serde(default)]
        center: [f64; 2],
    },
    /// `(a cos t, b sin t)`.
    Ellipse { a: f64, b: f64 },
    /// Polar curve `r(t) = r0 + amplitude cos(lobes t)`.
    Star { r0: f64, amplitude: f64, lobes: u32 },
    /// `x(t) = sum_m x_cos[m] cos(mt) + sum_m x_sin[m-1] sin(mt)`, same for `y`.
    /// `x_cos[0]` is the constant term.
    Fourier {
        x_cos: Vec<f64>,
        x_sin: Vec<f64>,
        y_cos: Vec<f64>,
        y_sin: Vec<f64>,
    },
}

/// One coordinate as a trigonometric polynomial.
#[derive(Debug, Clone, PartialEq)]
struct Trig {
    a0: f64,
    /// (m, cos coefficient, sin coefficient)
    terms: Vec<(f64, f64, f64)>,
}

impl Trig {
    fn new(cos: &[f64], sin: &[f64]) -> Trig {
        let a0 = cos.first().copied().unwrap_or(0.0);
        let m_max = cos.len().saturating_sub(1).max(sin.len());
        let terms = (1..=m_max)
            .map(|m| {
                let a = cos.get(m).copied().unwrap_or(0.0);
                let b = sin.get(m - 1).copied().unwrap_or(0.0);
                (m as f64, a, b)
            })
            .filter(|&(_, a, b)| a != 0.0 || b != 0.0)
            .collect();
        Trig { a0, terms }
    }

    /// Value and first three derivatives.
    fn eval(&self, t: f64) -> [f64; 4] {
        let mut out = [self.a0, 0.0, 0.0, 0.0];
        for &(m, a, b) in &self.terms {
            let (s, c) = (m * t).sin_cos();
            let v = a * c + b * s;
            let dv = m * (b * c - a * s);
            out[0] += v;
            out[1] += dv;
            out[2] -= m * m * v;
            out[3] -= m * m * dv;
        }
        out
    }

    fn reversed(&self) -> Trig {
        Trig {
            a0: self.a0,
            terms: self.terms.iter().map(|&(m, a, b)| (m, a, -b)).collect(),
        }
    }
}

/// Position and parameter derivatives at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub position: Vec2,
    pub d1: Vec2,
    pub d2: Vec2,
}

impl CurvePoint {
    pub fn speed(&self) -> f64 {
        self.d1.norm()
    }

    /// Outward unit normal for a counterclockwise curve.
    pub fn normal(&self) -> Vec2 {
        Vec2::new(self.d1.y, -self.d1.x) * (1.0 / self.d1.norm())
    }

    pub fn tangent(&self) -> Vec2 {
        self.d1 * (1.0 / self.d1.norm())
    }

    /// Signed curvature with `d^2x/ds^2 = -tau nu`, positive on convex arcs.
    pub fn curvature(&self) -> f64 {
        self.d1.cross(self.d2) / self.d1.norm().powi(3)
    }
}

/// A smooth closed counterclockwise curve, possibly offset along its normal.
///
/// The offset curve `x + eps nu(x)` is represented exactly through the base
/// Fourier curve, so nodes of an offset discretisation are the base nodes
/// moved by `eps` along the base normals.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricCurve {
    shape: Shape,
    x: Trig,
    y: Trig,
    reversed: bool,
    offset: f64,
}

const SAMPLES: usize = 2048;

impl ParametricCurve {
    pub fn circle(radius: f64, center: [f64; 2]) -> Result<Self> {
        Self::from_shape(Shape::Circle { radius, center })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Self::from_shape(Shape::Ellipse { a, b })
    }

    pub fn star(r0: f64, amplitude: f64, lobes: u32) -> Result<Self> {
        Self::from_shape(Shape::Star { r0, amplitude, lobes })
    }

    /// Builds and validates a curve. Clockwise input is reversed.
    pub fn from_shape(shape: Shape) -> Result<Self> {
        let positive = |v: f64, name: &str| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Geometry(format!("{name} must be positive and finite, got {v}")))
            }
        };
        let (x, y) = match &shape {
            Shape::Circle { radius, center } => {
                positive(*radius, "radius")?;
                if !center.iter().all(|c| c.is_finite()) {
                    return Err(Error::Geometry("center must be finite".into()));
                }
                (
                    Trig::new(&[center[0], *radius], &[]),
                    Trig::new(&[center[1]], &[*radius]),
                )
            }
            Shape::Ellipse { a, b } => {
                positive(*a, "a")?;
                positive(*b, "b")?;
                (Trig::new(&[0.0, *a], &[]), Trig::new(&[0.0], &[*b]))
            }
            Shape::Star { r0, amplitude, lobes } => {
                positive(*r0, "r0")?;
                if !(amplitude.is_finite() && amplitude.abs() < *r0) {
                    return Err(Error::Geometry("star needs |amplitude| < r0".into()));
                }
                if *lobes < 2 {
                    return Err(Error::Geometry("star needs at least 2 lobes".into()));
                }
                // r cos t and r sin t with r = r0 + A cos(L t)
                let l = *lobes as usize;
                let h = amplitude / 2.0;
                let mut xc = vec![0.0; l + 2];
                let mut ys = vec![0.0; l + 1];
                xc[1] += r0;
                xc[l + 1] += h;
                xc[l - 1] += h;
                ys[0] += r0;
                ys[l] += h;
                ys[l - 2] -= h;
                (Trig::new(&xc, &[]), Trig::new(&[0.0], &ys))
            }
            Shape::Fourier { x_cos, x_sin, y_cos, y_sin } => {
                let all = x_cos.iter().chain(x_sin).chain(y_cos).chain(y_sin);
                if !all.clone().all(|v| v.is_finite()) {
                    return Err(Error::Geometry("Fourier coefficients must be finite".into()));
                }
                (Trig::new(x_cos, x_sin), Trig::new(y_cos, y_sin))
            }
        };
        let mut curve = ParametricCurve { shape, x, y, reversed: false, offset: 0.0 };
        let area = curve.fourier_signed_area();
        if area == 0.0 || !area.is_finite() {
            return Err(Error::Geometry("curve encloses no area".into()));
        }
        if area < 0.0 {
            curve.x = curve.x.reversed();
            curve.y = curve.y.reversed();
            curve.reversed = true;
        }
        let scale = curve.base_scale();
        for i in 0..SAMPLES {
            let t = TAU * i as f64 / SAMPLES as f64;
            if curve.base(t)[1].norm() <= 1e-10 * scale {
                return Err(Error::Geometry(format!("parametrisation is not regular near t = {t:.6}")));
            }
        }
        Ok(curve)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Total normal offset from the base curve (0 for an uncoated boundary).
    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// True if the input had clockwise orientation and was reversed.
    pub fn was_reversed(&self) -> bool {
        self.reversed
    }

    fn base_scale(&self) -> f64 {
        let s = |t: &Trig| t.terms.iter().map(|&(m, a, b)| m * (a.abs() + b.abs())).sum::<f64>();
        s(&self.x) + s(&self.y)
    }

    /// Exact area of the base Fourier curve, `pi sum_m m (a^x_m b^y_m - b^x_m a^y_m)`.
    fn fourier_signed_area(&self) -> f64 {
        let mut a = 0.0;
        for &(m, ax, bx) in &self.x.terms {
            for &(my, ay, by) in &self.y.terms {
                if m == my {
                    a += m * (ax * by - bx * ay);
                }
            }
        }
        PI * a
    }

    /// Base curve position and derivatives up to third order.
    fn base(&self, t: f64) -> [Vec2; 4] {
        let x = self.x.eval(t);
        let y = self.y.eval(t);
        [0, 1, 2, 3].map(|k| Vec2::new(x[k], y[k]))
    }

    /// Base curvature, used for offset validity.
    fn base_curvature(&self, t: f64) -> f64 {
        let [_, d1, d2, _] = self.base(t);
        d1.cross(d2) / d1.norm().powi(3)
    }

    /// Position and first two derivatives at `t`.
    pub fn eval(&self, t: f64) -> CurvePoint {
        let [p, d1, d2, d3] = self.base(t);
        if self.offset == 0.0 {
            return CurvePoint { position: p, d1, d2 };
        }
        let e = self.offset;
        let s = d1.norm();
        let nu = Vec2::new(d1.y, -d1.x) * (1.0 / s);
        let c12 = d1.cross(d2);
        let tau = c12 / s.powi(3);
        let dtau = d1.cross(d3) / s.powi(3) - 3.0 * c12 * d1.dot(d2) / s.powi(5);
        let f = 1.0 + e * tau;
        CurvePoint {
            position: p + nu * e,
            d1: d1 * f,
            d2: d2 * f + d1 * (e * dtau),
        }
    }

    pub fn position(&self, t: f64) -> Vec2 {
        self.eval(t).position
    }

    pub fn normal(&self, t: f64) -> Vec2 {
        self.eval(t).normal()
    }

    pub fn curvature(&self, t: f64) -> f64 {
        self.eval(t).curvature()
    }

    /// Extreme base curvatures over a dense parameter sample.
    fn base_curvature_range(&self) -> (f64, f64) {
        (0..SAMPLES)
            .map(|i| self.base_curvature(TAU * i as f64 / SAMPLES as f64))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), k| (lo.min(k), hi.max(k)))
    }
}

/// Signed curvature `tau(t)` with the convention `d^2x/ds^2 = -tau nu`.
pub fn signed_curvature(curve: &ParametricCurve, t: f64) -> f64 {
    curve.curvature(t)
}

/// The parallel curve `x + eps nu(x)` at distance `eps >= 0` outside `curve`.
///
/// Rejects `eps >= 1/max tau`, and also any `eps` at which `1 + eps tau`
/// would vanish on a concave arc.
pub fn offset_curve(curve: &ParametricCurve, eps: f64) -> Result<ParametricCurve> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::Geometry(format!("offset must be finite and non-negative, got {eps}")));
    }
    let total = curve.offset + eps;
    let (lo, hi) = curve.base_curvature_range();
    if hi > 0.0 && total * hi >= 1.0 {
        return Err(Error::Geometry(format!(
            "offset {total} is not below 1/max curvature = {}",
            1.0 / hi
        )));
    }
    if 1.0 + total * lo <= 0.0 {
        return Err(Error::Geometry(format!(
            "offset {total} folds the curve on a concave arc (min curvature {lo})"
        )));
    }
    let mut out = curve.clone();
    out.offset = total;
    Ok(out)
}
