use crate::{Error, Result, C64};

/// Densities and bulk moduli of the bubble (`b`), the coating layer (`l`)
/// and the surrounding water (`w`).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PhysicalConfig {
    rho_b: f64,
    rho_l: f64,
    rho_w: f64,
    kappa_b: f64,
    kappa_l: f64,
    kappa_w: f64,
}

impl PhysicalConfig {
    /// From `[bubble, layer, water]` densities and bulk moduli.
    pub fn new(rho: [f64; 3], kappa: [f64; 3]) -> Result<Self> {
        for (name, v) in ["rho_b", "rho_l", "rho_w", "kappa_b", "kappa_l", "kappa_w"]
            .iter()
            .zip(rho.iter().chain(kappa.iter()))
        {
            if !(v.is_finite() && *v > 0.0) {
                return Err(Error::InvalidInput(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(PhysicalConfig {
            rho_b: rho[0],
            rho_l: rho[1],
            rho_w: rho[2],
            kappa_b: kappa[0],
            kappa_l: kappa[1],
            kappa_w: kappa[2],
        })
    }

    /// From wave speeds and density contrasts, with `rho_w = 1`,
    /// `rho_l = delta_lw`, `rho_b = delta` and `kappa = rho v^2`.
    pub fn from_contrasts(v_b: f64, v_l: f64, v_w: f64, delta: f64, delta_lw: f64) -> Result<Self> {
        let rho = [delta, delta_lw, 1.0];
        let v = [v_b, v_l, v_w];
        if !v.iter().all(|x| x.is_finite() && *x > 0.0) {
            return Err(Error::InvalidInput("wave speeds must be positive and finite".into()));
        }
        Self::new(rho, [rho[0] * v_b * v_b, rho[1] * v_l * v_l, rho[2] * v_w * v_w])
    }

    pub fn rho(&self) -> [f64; 3] {
        [self.rho_b, self.rho_l, self.rho_w]
    }

    pub fn kappa(&self) -> [f64; 3] {
        [self.kappa_b, self.kappa_l, self.kappa_w]
    }

    pub fn v_b(&self) -> f64 {
        (self.kappa_b / self.rho_b).sqrt()
    }

    pub fn v_l(&self) -> f64 {
        (self.kappa_l / self.rho_l).sqrt()
    }

    pub fn v_w(&self) -> f64 {
        (self.kappa_w / self.rho_w).sqrt()
    }

    pub fn delta_bl(&self) -> f64 {
        self.rho_b / self.rho_l
    }

    pub fn delta_lw(&self) -> f64 {
        self.rho_l / self.rho_w
    }

    /// `delta = delta_bl * delta_lw`, equal to `rho_b / rho_w`.
    pub fn delta(&self) -> f64 {
        self.delta_bl() * self.delta_lw()
    }

    pub fn k_b(&self, omega: C64) -> C64 {
        omega / self.v_b()
    }

    pub fn k_l(&self, omega: C64) -> C64 {
        omega / self.v_l()
    }

    pub fn k_w(&self, omega: C64) -> C64 {
        omega / self.v_w()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contrasts_round_trip() {
        let c = PhysicalConfig::from_contrasts(1.0, 2.0, 1.5, 1e-3, 0.5).unwrap();
        assert!((c.v_l() - 2.0).abs() < 1e-15);
        assert!((c.v_w() - 1.5).abs() < 1e-15);
        assert!((c.delta() - 1e-3).abs() < 1e-18);
        assert_eq!(c.delta(), c.delta_bl() * c.delta_lw());
        assert_eq!(c.delta_lw(), 0.5);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(PhysicalConfig::new([1.0, 0.0, 1.0], [1.0; 3]).is_err());
        assert!(PhysicalConfig::from_contrasts(1.0, -1.0, 1.0, 1e-3, 1.0).is_err());
        assert!(PhysicalConfig::from_contrasts(1.0, 1.0, 1.0, f64::NAN, 1.0).is_err());
    }
}
