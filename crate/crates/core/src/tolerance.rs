//! Floating-point tolerance model shared by every module.
//!
//! `eq_tol` decides when a distance "equals" one (diameter-graph edges,
//! boundary classification, event residuals). `geom_tol` is the slack
//! allowed in membership and containment tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_EQ_TOL: f64 = 1e-9;
pub const DEFAULT_GEOM_TOL: f64 = 1e-9;
/// Upper bound on either tolerance.
pub const MAX_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eq_tol: f64,
    pub geom_tol: f64,
}

impl Tolerance {
    pub fn new(eq_tol: f64, geom_tol: f64) -> Result<Self> {
        for (name, value) in [("eq_tol", eq_tol), ("geom_tol", geom_tol)] {
            if !(value > 0.0 && value <= MAX_TOL) {
                return Err(Error::Argument(format!(
                    "{name} must lie in (0, {MAX_TOL:e}], got {value:e}"
                )));
            }
        }
        Ok(Self { eq_tol, geom_tol })
    }

    /// Same tolerance for both roles.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol)
    }

    pub fn is_unit(&self, distance: f64) -> bool {
        (distance - 1.0).abs() <= self.eq_tol
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eq_tol: DEFAULT_EQ_TOL,
            geom_tol: DEFAULT_GEOM_TOL,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(Tolerance::new(0.0, 1e-9).is_err());
        assert!(Tolerance::new(1e-9, 1e-5).is_err());
        assert!(Tolerance::new(f64::NAN, 1e-9).is_err());
        assert!(Tolerance::new(1e-6, 1e-6).is_ok());
    }

    #[test]
    fn unit_test_uses_eq_tol() {
        let tol = Tolerance::default();
        assert!(tol.is_unit(1.0 + 5e-10));
        assert!(!tol.is_unit(1.0 - 2e-9));
    }
}
