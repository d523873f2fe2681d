//! Ternary quantization of daily changes in a positive-valued series.
//!
//! Symbol 0 means "down by more than the threshold", 2 means "up by more than
//! the threshold", 1 is everything in between (inclusive of the band edges).

use crate::alphabet::{Alphabet, SymbolSequence};
use crate::error::{Error, Result};

pub const DOWN: usize = 0;
pub const FLAT: usize = 1;
pub const UP: usize = 2;

/// The default band half-width, 0.8%.
pub const DEFAULT_THRESHOLD: f64 = 0.008;

/// How a one-step change is measured before comparing to the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChangeKind {
    /// `(v_i - v_{i-1}) / v_{i-1}`
    #[default]
    Relative,
    /// `ln(v_i / v_{i-1})`
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizeRule {
    pub threshold: f64,
    pub kind: ChangeKind,
}

impl Default for QuantizeRule {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_THRESHOLD,
            kind: ChangeKind::Relative,
        }
    }
}

impl QuantizeRule {
    pub fn relative(threshold: f64) -> Self {
        Self {
            threshold,
            kind: ChangeKind::Relative,
        }
    }

    fn change(&self, prev: f64, cur: f64) -> f64 {
        match self.kind {
            ChangeKind::Relative => (cur - prev) / prev,
            ChangeKind::Log => (cur / prev).ln(),
        }
    }

    pub fn symbol(&self, prev: f64, cur: f64) -> usize {
        let c = self.change(prev, cur);
        if c < -self.threshold {
            DOWN
        } else if c > self.threshold {
            UP
        } else {
            FLAT
        }
    }

    /// Quantizes consecutive changes; output is one shorter than the input.
    pub fn apply(&self, values: &[f64]) -> Result<SymbolSequence> {
        if values.is_empty() {
            return Err(Error::Empty("value series"));
        }
        if !(self.threshold > 0.0 && self.threshold.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "threshold",
                value: self.threshold,
                range: "(0, inf)",
            });
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::NonPositiveValue { index, value });
        }
        let data = values.windows(2).map(|w| self.symbol(w[0], w[1])).collect();
        SymbolSequence::new(Alphabet::ternary(), data)
    }
}

/// [`QuantizeRule::apply`] with simple relative change.
pub fn quantize_returns(values: &[f64], threshold: f64) -> Result<SymbolSequence> {
    QuantizeRule::relative(threshold).apply(values)
}
