//! Numerical tolerance policy.
//!
//! Analytic predicates are evaluated in closed form on O(1) scenes, so they
//! use tight absolute tolerances. Only the brute-force oracle is limited by
//! its grid resolution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Allowed deviation of `|v|` from one for unit vectors.
    pub eps_unit: f64,
    /// Slack separating strict from non-strict inequalities.
    pub eps_strict: f64,
    /// Geometric coincidence (point on curve, point equality).
    pub eps_geom: f64,
    /// Target resolution of the brute-force oracle.
    pub grid_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps_unit: 1e-12,
            eps_strict: 1e-9,
            eps_geom: 1e-9,
            grid_tol: 2e-3,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let all_positive = [self.eps_unit, self.eps_strict, self.eps_geom, self.grid_tol]
            .iter()
            .all(|v| *v > 0.0 && v.is_finite());
        if !all_positive || self.eps_strict > self.eps_geom || self.eps_geom > self.grid_tol {
            return Err(Error::InvalidInput(format!(
                "tolerances must be positive with eps_strict <= eps_geom <= grid_tol: {self:?}"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_ordered() {
        let t = ToleranceConfig::default();
        t.validate().unwrap();
        assert_eq!(t.eps_unit, 1e-12);
        assert_eq!(t.grid_tol, 2e-3);
    }

    #[test]
    fn rejects_misordered() {
        let t = ToleranceConfig { eps_strict: 1e-3, ..Default::default() };
        assert!(t.validate().is_err());
        let t = ToleranceConfig { eps_unit: 0.0, ..Default::default() };
        assert!(t.validate().is_err());
    }
}
