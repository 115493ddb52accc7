use crate::error::{Error, Result};

/// Thresholds for every numeric decision.
///
/// `eps_zero` drives rank and zero tests, `eps_class` is the width of the band
/// around set boundaries inside which points are labelled ambiguous, and
/// `eps_residual` bounds the residuals reported as passing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub eps_zero: f64,
    pub eps_class: f64,
    pub eps_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_zero: 1e-9,
            eps_class: 1e-8,
            eps_residual: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn new(eps_zero: f64, eps_class: f64, eps_residual: f64) -> Result<Self> {
        let t = Self {
            eps_zero,
            eps_class,
            eps_residual,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, x) in [
            ("eps_zero", self.eps_zero),
            ("eps_class", self.eps_class),
            ("eps_residual", self.eps_residual),
        ] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::InvalidTolerances(format!(
                    "{name} must be positive and finite, got {x}"
                )));
            }
        }
        if self.eps_zero > self.eps_class {
            return Err(Error::InvalidTolerances(format!(
                "eps_zero ({}) exceeds eps_class ({})",
                self.eps_zero, self.eps_class
            )));
        }
        Ok(())
    }

    /// `|q| ≤ eps_zero·(1+scale)`.
    pub fn near_zero(&self, q: f64, scale: f64) -> bool {
        near_zero(q, scale, self)
    }

    /// Same test with the wider `eps_class` band.
    pub fn in_class_band(&self, q: f64, scale: f64) -> bool {
        q.abs() <= self.eps_class * (1.0 + scale)
    }
}

/// Scale-relative zero test `|q| ≤ eps_zero·(1+scale)`.
pub fn near_zero(q: f64, scale: f64, tol: &Tolerances) -> bool {
    debug_assert!(scale >= 0.0);
    q.abs() <= tol.eps_zero * (1.0 + scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn near_zero_band() {
        let t = Tolerances::default();
        assert!(near_zero(1e-12, 1.0, &t));
        assert!(!near_zero(0.5, 1.0, &t));
        assert!(near_zero(1e-9 * 2.0 * 0.999, 1.0, &t));
        assert!(!near_zero(1e-9 * 2.0 * 1.001, 1.0, &t));
    }

    #[test]
    fn rejects_bad_tolerances() {
        assert!(Tolerances::new(0.0, 1e-8, 1e-8).is_err());
        assert!(Tolerances::new(1e-7, 1e-8, 1e-8).is_err());
        assert!(Tolerances::new(1e-9, 1e-8, f64::NAN).is_err());
        assert!(Tolerances::new(1e-10, 1e-8, 1e-6).is_ok());
    }
}
