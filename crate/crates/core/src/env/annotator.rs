//! The simulated annotator and its query pricing.

use serde::{Deserialize, Serialize};

use super::EnvError;

/// Prior shipped with a query: the expected reward lies in `[a, b]` with
/// probability at least `1 - delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorInfo {
    pub a: f64,
    pub b: f64,
    pub delta: f64,
}

impl PriorInfo {
    pub fn new(a: f64, b: f64, delta: f64) -> Result<Self, EnvError> {
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || a > b {
            return Err(EnvError::InvalidParameter(format!(
                "prior interval [{a}, {b}] must satisfy 0 <= a <= b <= 1"
            )));
        }
        if !(0.0..=1.0).contains(&delta) {
            return Err(EnvError::InvalidParameter(format!(
                "prior significance {delta} must lie in [0,1]"
            )));
        }
        Ok(Self { a, b, delta })
    }

    /// The uninformative prior: full interval, certain.
    pub fn uninformative() -> Self {
        Self {
            a: 0.0,
            b: 1.0,
            delta: 0.0,
        }
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }
}

/// Charges `c * ((b-a)^beta1 + eta * delta^beta2)` per query: wider or
/// less certain priors cost more.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Annotator {
    pub c: f64,
    pub eta: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl Annotator {
    /// `c = 0` is allowed so the zero-cost baseline can reuse the same
    /// machinery; all other parameters follow the model constraints.
    pub fn new(c: f64, eta: f64, beta1: f64, beta2: f64) -> Result<Self, EnvError> {
        if !(c >= 0.0) {
            return Err(EnvError::InvalidParameter(format!(
                "annotator base cost {c} must be nonnegative"
            )));
        }
        if !(eta > 0.0) {
            return Err(EnvError::InvalidParameter(format!(
                "annotator eta {eta} must be positive"
            )));
        }
        if !(beta1 >= 1.0) || !(beta2 >= 1.0) {
            return Err(EnvError::InvalidParameter(format!(
                "annotator exponents beta1={beta1}, beta2={beta2} must be >= 1"
            )));
        }
        Ok(Self { c, eta, beta1, beta2 })
    }

    pub fn query_cost(&self, prior: &PriorInfo) -> f64 {
        self.c * (prior.width().powf(self.beta1) + self.eta * prior.delta.powf(self.beta2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uninformative_prior_costs_base_rate() {
        let ann = Annotator::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(ann.query_cost(&PriorInfo::uninformative()), 1.0);
    }

    #[test]
    fn worked_cost_examples() {
        let ann = Annotator::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let prior = PriorInfo::new(0.4, 0.6, 0.01).unwrap();
        assert!((ann.query_cost(&prior) - 0.21).abs() < 1e-12);

        let quadratic = Annotator::new(1.0, 1.0, 2.0, 1.0).unwrap();
        assert!((quadratic.query_cost(&prior) - 0.05).abs() < 1e-12);
    }

    #[test]
    fn cost_monotone_in_width_and_delta() {
        let ann = Annotator::new(2.0, 0.5, 1.5, 2.0).unwrap();
        let base = ann.query_cost(&PriorInfo::new(0.3, 0.5, 0.1).unwrap());
        assert!(ann.query_cost(&PriorInfo::new(0.3, 0.6, 0.1).unwrap()) >= base);
        assert!(ann.query_cost(&PriorInfo::new(0.2, 0.5, 0.1).unwrap()) >= base);
        assert!(ann.query_cost(&PriorInfo::new(0.3, 0.5, 0.2).unwrap()) >= base);
    }

    #[test]
    fn parameter_validation() {
        assert!(Annotator::new(-1.0, 1.0, 1.0, 1.0).is_err());
        assert!(Annotator::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(Annotator::new(1.0, 1.0, 0.5, 1.0).is_err());
        assert!(Annotator::new(0.0, 1.0, 1.0, 1.0).is_ok());
        assert!(PriorInfo::new(0.6, 0.4, 0.0).is_err());
        assert!(PriorInfo::new(0.0, 1.0, 1.5).is_err());
    }
}
