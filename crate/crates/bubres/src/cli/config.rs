use crate::geometry::{discretize, DiscreteBoundary, ParametricCurve, Shape};
use crate::resonance::PhysicalConfig;
use crate::rootfind::{CharMode, Tolerances};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Default number of boundary nodes.
pub const DEFAULT_N: usize = 128;

/// One run, read from a single JSON object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub shape: ShapeSpec,
    pub physics: PhysicsSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub method: MethodChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub char_mode: CharMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeSpec {
    #[serde(flatten)]
    pub shape: Shape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl ShapeSpec {
    pub fn n(&self) -> usize {
        self.n.unwrap_or(DEFAULT_N)
    }

    pub fn boundary(&self) -> crate::Result<DiscreteBoundary> {
        discretize(&ParametricCurve::from_shape(self.shape.clone())?, self.n())
    }

    /// Radius when the shape is a circle.
    pub fn circle_radius(&self) -> Option<f64> {
        match self.shape {
            Shape::Circle { radius, .. } => Some(radius),
            _ => None,
        }
    }
}

/// Material parameters, either as `[bubble, layer, water]` triplets or as
/// speeds and contrasts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhysicsSpec {
    Triplets {
        rho: [f64; 3],
        kappa: [f64; 3],
    },
    Contrasts {
        v_b: f64,
        v_l: f64,
        v_w: f64,
        delta: f64,
        #[serde(default = "one")]
        delta_lw: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl PhysicsSpec {
    pub fn config(&self) -> crate::Result<PhysicalConfig> {
        match *self {
            PhysicsSpec::Triplets { rho, kappa } => PhysicalConfig::new(rho, kappa),
            PhysicsSpec::Contrasts { v_b, v_l, v_w, delta, delta_lw } => {
                PhysicalConfig::from_contrasts(v_b, v_l, v_w, delta, delta_lw)
            }
        }
    }
}

/// Same speeds and `delta_lw`, total contrast replaced by `delta`.
pub fn with_delta(cfg: &PhysicalConfig, delta: f64) -> crate::Result<PhysicalConfig> {
    PhysicalConfig::from_contrasts(cfg.v_b(), cfg.v_l(), cfg.v_w(), delta, cfg.delta_lw())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    /// Asymptotic formulas only.
    Formula,
    /// Formulas plus the multipole solution (circles only).
    Multipole,
    /// Formulas plus the boundary element solution.
    Bem,
    /// Everything that applies to the shape.
    #[default]
    All,
}

impl MethodChoice {
    pub fn multipole(self) -> bool {
        matches!(self, MethodChoice::Multipole | MethodChoice::All)
    }

    pub fn bem(self) -> bool {
        matches!(self, MethodChoice::Bem | MethodChoice::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Eps,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// Either an explicit list of values or `points` samples from `start` to
/// `stop`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default)]
    pub spacing: Spacing,
}

impl SweepSpec {
    /// The grid, checked to be non-empty, finite, positive and strictly
    /// increasing.
    pub fn grid(&self) -> Result<Vec<f64>, String> {
        let v = match (&self.values, self.start, self.stop, self.points) {
            (Some(v), None, None, None) => v.clone(),
            (None, Some(a), Some(b), Some(p)) => match p {
                0 => Vec::new(),
                1 => vec![a],
                _ => (0..p)
                    .map(|i| {
                        let s = i as f64 / (p - 1) as f64;
                        match self.spacing {
                            Spacing::Linear => a + (b - a) * s,
                            Spacing::Log => (a.ln() + (b.ln() - a.ln()) * s).exp(),
                        }
                    })
                    .collect(),
            },
            _ => return Err("sweep needs either `values` or all of `start`, `stop`, `points`".into()),
        };
        if v.is_empty() {
            return Err("sweep range is empty".into());
        }
        if let Some(x) = v.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(format!("sweep values must be finite and positive, got {x}"));
        }
        if v.windows(2).any(|w| w[1] <= w[0]) {
            return Err("sweep values must be strictly increasing".into());
        }
        Ok(v)
    }
}

impl RunConfig {
    /// Parses a config; the error text carries the line and column.
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid config: {e}"))
    }

    /// Compact JSON of the parsed config; fields in declaration order.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serialises")
    }

    /// SHA-256 of [`RunConfig::canonical_json`] in lowercase hex.
    pub fn hash(&self) -> String {
        format!("{:x}", Sha256::digest(self.canonical_json().as_bytes()))
    }
}
