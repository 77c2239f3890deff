use crate::error::{Error, Result};

/// Numerical thresholds shared by every layer.
///
/// `eig_tol` is relative (Jacobi stops once the off-diagonal Frobenius norm
/// drops below `eig_tol * ||H||_F`), `radius_tol` is the requested width of a
/// radius certificate relative to `1 + lower`, and `slack_tol` is the absolute
/// violation threshold applied to scale-normalized inequality slacks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub eig_tol: f64,
    pub radius_tol: f64,
    pub slack_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eig_tol: 1e-12,
            radius_tol: 1e-8,
            slack_tol: 1e-7,
        }
    }
}

impl ToleranceConfig {
    pub fn new(eig_tol: f64, radius_tol: f64, slack_tol: f64) -> Result<Self> {
        let cfg = Self {
            eig_tol,
            radius_tol,
            slack_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_radius_tol(mut self, radius_tol: f64) -> Result<Self> {
        self.radius_tol = radius_tol;
        self.validate()?;
        Ok(self)
    }

    pub fn with_slack_tol(mut self, slack_tol: f64) -> Result<Self> {
        self.slack_tol = slack_tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eig_tol", self.eig_tol),
            ("radius_tol", self.radius_tol),
            ("slack_tol", self.slack_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}
