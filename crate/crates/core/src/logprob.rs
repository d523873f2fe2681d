//! Base-2 log-domain probability arithmetic.
//!
//! Sequence probabilities shrink geometrically with length, so every piece of
//! probability state is kept as `log2(p)`. `f64::NEG_INFINITY` stands for log 0.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::pmf::Pmf;

/// `log2` of a probability.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogProb(f64);

impl LogProb {
    pub const ONE: LogProb = LogProb(0.0);
    pub const ZERO: LogProb = LogProb(f64::NEG_INFINITY);

    /// Wraps a base-2 log value. Values above 0 are rejected.
    pub fn new(log2_value: f64) -> Result<Self> {
        if log2_value.is_nan() || log2_value > 0.0 {
            return Err(Error::InvalidParameter {
                name: "log2 probability",
                value: log2_value,
                range: "[-inf, 0]",
            });
        }
        Ok(LogProb(log2_value))
    }

    pub fn from_prob(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter {
                name: "probability",
                value: p,
                range: "[0, 1]",
            });
        }
        Ok(LogProb(p.log2()))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    #[inline]
    pub fn prob(self) -> f64 {
        self.0.exp2()
    }

    /// Product of probabilities.
    #[inline]
    pub fn times(self, other: LogProb) -> LogProb {
        LogProb(self.0 + other.0)
    }

    /// Sum of probabilities, saturating at 1 against rounding.
    #[inline]
    pub fn plus(self, other: LogProb) -> LogProb {
        LogProb(log2_add(self.0, other.0).min(0.0))
    }
}

/// `log2(2^a + 2^b)` by the max-shift rule.
#[inline]
pub fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp2().ln_1p() * std::f64::consts::LOG2_E
}

/// `log2(1 + 2^x)`, saturating for large `|x|`.
#[inline]
pub fn log2_one_plus_exp2(x: f64) -> f64 {
    if x > 50.0 {
        x
    } else if x < -50.0 {
        0.0
    } else {
        x.exp2().ln_1p() * std::f64::consts::LOG2_E
    }
}

/// `b / (1 + b)` given `log2 b`; saturates to {0, 1} when `|log2 b| > 50`.
#[inline]
pub fn odds_to_weight(log_odds: f64) -> f64 {
    if log_odds > 50.0 {
        1.0
    } else if log_odds < -50.0 {
        0.0
    } else {
        (log_odds - log2_one_plus_exp2(log_odds)).exp2()
    }
}

/// Turns unnormalized log-weights into a probability vector, shifting by the
/// largest entry before exponentiating.
pub fn normalize_log_pmf(logs: &[LogProb]) -> Result<Pmf> {
    let alphabet = Alphabet::new(logs.len())?;
    let max = logs
        .iter()
        .map(|l| l.0)
        .fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Err(Error::AllZeroMass);
    }
    let mut weights: Vec<f64> = logs.iter().map(|l| (l.0 - max).exp2()).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Pmf::new(alphabet, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(v: f64) -> LogProb {
        LogProb::new(v).unwrap()
    }

    #[test]
    fn normalizes_symmetric_logs() {
        let p = normalize_log_pmf(&[lp(-1.0), lp(-1.0)]).unwrap();
        assert!((p.weight(0) - 0.5).abs() < 1e-12);
        assert!((p.weight(1) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn normalizes_degenerate_mass() {
        let p = normalize_log_pmf(&[LogProb::ONE, LogProb::ZERO]).unwrap();
        assert_eq!(p.weights(), &[1.0, 0.0]);
    }

    #[test]
    fn normalizes_without_underflow() {
        let p = normalize_log_pmf(&[lp(-1000.0), lp(-1001.0)]).unwrap();
        assert!((p.weight(0) - 2.0 / 3.0).abs() < 1e-12);
        assert!((p.weight(1) - 1.0 / 3.0).abs() < 1e-12);
        let deep = normalize_log_pmf(&[lp(-1100.0), lp(-1101.0)]).unwrap();
        assert!((deep.weight(0) - 2.0 / 3.0).abs() < 1e-12);
        // the naive route underflows to 0/0 there
        assert_eq!((-1100f64).exp2() + (-1101f64).exp2(), 0.0);
    }

    #[test]
    fn all_zero_mass_is_an_error() {
        assert_eq!(
            normalize_log_pmf(&[LogProb::ZERO, LogProb::ZERO]),
            Err(Error::AllZeroMass)
        );
    }

    #[test]
    fn log_add_matches_linear() {
        let a = 0.3f64.log2();
        let b = 0.2f64.log2();
        assert!((log2_add(a, b) - 0.5f64.log2()).abs() < 1e-14);
        assert_eq!(log2_add(f64::NEG_INFINITY, -3.0), -3.0);
        assert_eq!(log2_add(f64::NEG_INFINITY, f64::NEG_INFINITY), f64::NEG_INFINITY);
        // far apart: the smaller term vanishes without NaN
        assert_eq!(log2_add(-1.0, -5000.0), -1.0);
    }

    #[test]
    fn odds_weight_saturates() {
        assert_eq!(odds_to_weight(60.0), 1.0);
        assert_eq!(odds_to_weight(-60.0), 0.0);
        assert!((odds_to_weight(0.0) - 0.5).abs() < 1e-15);
        // b = 3 -> 3/4
        assert!((odds_to_weight(3f64.log2()) - 0.75).abs() < 1e-14);
    }

    #[test]
    fn rejects_positive_logs() {
        assert!(LogProb::new(0.5).is_err());
        assert!(LogProb::from_prob(1.5).is_err());
        assert!(LogProb::from_prob(0.0).unwrap().is_zero());
    }
}
