use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::{Scalar, TolerancePolicy};

/// A named intermediate quantity: a single number or a series.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Component {
    Number(Scalar),
    Array(Vec<Scalar>),
}

/// Both sides raised to `power`, chosen so that they are rational and can be
/// compared without roots.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactComparison {
    pub power: u32,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub holds: bool,
}

impl ExactComparison {
    pub(crate) fn new(power: u32, lhs: Scalar, rhs: Scalar) -> Self {
        let holds = match (lhs.as_rational(), rhs.as_rational()) {
            (Some(l), Some(r)) => l <= r,
            _ => lhs.to_f64() <= rhs.to_f64(),
        };
        ExactComparison {
            power,
            lhs,
            rhs,
            holds,
        }
    }
}

/// Evaluation of one inequality instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub lhs: Scalar,
    pub rhs: Scalar,
    /// `rhs - lhs`
    pub slack: Scalar,
    pub holds: bool,
    pub components: BTreeMap<String, Component>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactComparison>,
}

impl InequalityReport {
    pub(crate) fn new(name: &str, lhs: Scalar, rhs: Scalar) -> Self {
        let (lhs, rhs) = match (&lhs, &rhs) {
            (Scalar::Exact(_), Scalar::Exact(_)) | (Scalar::Float(_), Scalar::Float(_)) => (lhs, rhs),
            _ => (Scalar::Float(lhs.to_f64()), Scalar::Float(rhs.to_f64())),
        };
        let slack = rhs.checked_sub(&lhs).expect("sides share a tag");
        let mut report = InequalityReport {
            name: name.to_string(),
            params: BTreeMap::new(),
            lhs,
            rhs,
            slack,
            holds: false,
            components: BTreeMap::new(),
            exact: None,
        };
        report.holds = report.holds_under(&TolerancePolicy::default());
        report
    }

    /// `slack >= -(abs_eps + rel_eps·max(|lhs|,|rhs|))` (exactly `slack >= 0`
    /// for exact sides), and the exact power comparison when one is attached.
    pub fn holds_under(&self, pol: &TolerancePolicy) -> bool {
        let sides = match self.slack.as_rational() {
            Some(s) => *s >= num_traits::Zero::zero(),
            None => {
                let s = self.slack.to_f64();
                !s.is_nan() && s >= pol.slack_floor(self.lhs.to_f64(), self.rhs.to_f64())
            }
        };
        sides && self.exact.as_ref().is_none_or(|e| e.holds)
    }

    pub(crate) fn with_exact(mut self, exact: Option<ExactComparison>) -> Self {
        self.exact = exact;
        self.holds = self.holds_under(&TolerancePolicy::default());
        self
    }

    pub(crate) fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub(crate) fn number(mut self, key: &str, value: Scalar) -> Self {
        self.components.insert(key.to_string(), Component::Number(value));
        self
    }

    pub(crate) fn array(mut self, key: &str, values: Vec<Scalar>) -> Self {
        self.components.insert(key.to_string(), Component::Array(values));
        self
    }

    pub fn component(&self, key: &str) -> Option<&Component> {
        self.components.get(key)
    }

    /// Convenience accessor for scalar components.
    pub fn number_of(&self, key: &str) -> Option<&Scalar> {
        match self.components.get(key)? {
            Component::Number(s) => Some(s),
            Component::Array(_) => None,
        }
    }

    pub fn array_of(&self, key: &str) -> Option<&[Scalar]> {
        match self.components.get(key)? {
            Component::Array(v) => Some(v),
            Component::Number(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn slack_and_holds() {
        let r = InequalityReport::new("t", Scalar::Exact(rat(1, 2)), Scalar::Exact(rat(3, 4)));
        assert_eq!(r.slack, Scalar::Exact(rat(1, 4)));
        assert!(r.holds);
        let r = InequalityReport::new("t", Scalar::Exact(rat(1, 1)), Scalar::Exact(rat(3, 4)));
        assert!(!r.holds);
        // float sides get the relative allowance
        let r = InequalityReport::new("t", Scalar::Float(1.0 + 1e-12), Scalar::Float(1.0));
        assert!(r.holds);
        let r = InequalityReport::new("t", Scalar::Float(1.0), Scalar::Float(f64::NAN));
        assert!(!r.holds);
        // mixed tags degrade to floats
        let r = InequalityReport::new("t", Scalar::Exact(rat(1, 2)), Scalar::Float(0.75));
        assert_eq!(r.slack, Scalar::Float(0.25));
    }

    #[test]
    fn exact_comparison_gates_holds() {
        let r = InequalityReport::new("t", Scalar::Float(1.0), Scalar::Float(1.0)).with_exact(Some(
            ExactComparison::new(2, Scalar::Exact(rat(2, 1)), Scalar::Exact(rat(1, 1))),
        ));
        assert!(!r.holds);
    }
}
