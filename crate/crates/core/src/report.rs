use std::fmt;

use serde::Serialize;

use crate::class_maps::ClassTag;
use crate::functionals::FunctionalName;
use crate::scalar::{rational_to_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    AttainsWithinTol,
    BelowBound,
    ExceedsBound,
}

impl Verdict {
    /// Compares `value` with `bound +- tol`. Without a bound the value is
    /// reported as below it.
    pub fn classify(value: f64, bound: Option<&Rational>, tol: f64) -> Self {
        let Some(bound) = bound else {
            return Verdict::BelowBound;
        };
        let b = rational_to_f64(bound);
        if value > b + tol {
            Verdict::ExceedsBound
        } else if value >= b - tol {
            Verdict::AttainsWithinTol
        } else {
            Verdict::BelowBound
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::AttainsWithinTol => "attains-within-tol",
            Verdict::BelowBound => "below-bound",
            Verdict::ExceedsBound => "exceeds-bound",
        })
    }
}

/// Outcome of a searched or verified bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub class: ClassTag,
    pub functional: FunctionalName,
    pub model: String,
    pub best_modulus: f64,
    pub best_params: Vec<f64>,
    pub paper_bound: Option<Rational>,
    pub verdict: Verdict,
}

impl BoundReport {
    pub fn new(
        class: ClassTag,
        functional: FunctionalName,
        model: impl Into<String>,
        best_modulus: f64,
        best_params: Vec<f64>,
        paper_bound: Option<Rational>,
        tol: f64,
    ) -> Self {
        let verdict = Verdict::classify(best_modulus, paper_bound.as_ref(), tol);
        Self {
            class,
            functional,
            model: model.into(),
            best_modulus,
            best_params,
            paper_bound,
            verdict,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn verdict_bands() {
        let b = ratio(1, 2);
        assert_eq!(Verdict::classify(0.5, Some(&b), 1e-6), Verdict::AttainsWithinTol);
        assert_eq!(Verdict::classify(0.5 - 5e-7, Some(&b), 1e-6), Verdict::AttainsWithinTol);
        assert_eq!(Verdict::classify(0.49, Some(&b), 1e-6), Verdict::BelowBound);
        assert_eq!(Verdict::classify(0.51, Some(&b), 1e-6), Verdict::ExceedsBound);
        assert_eq!(Verdict::classify(0.0, None, 1e-6), Verdict::BelowBound);
    }
}
