//! Mixing a sequential assignment with the i.i.d. uniform law.

use super::tree::ContextTree;
use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::pmf::Pmf;

/// A sequential probability assignment driven by an explicit context.
pub trait SequentialPredictor {
    fn alphabet(&self) -> Alphabet;

    /// Predictive pmf for the next symbol.
    fn predict(&self, context: &[Symbol]) -> Result<Pmf>;

    /// Consumes the next symbol; returns `log2` of the probability it was given.
    fn update(&mut self, symbol: Symbol, context: &[Symbol]) -> Result<f64>;
}

impl SequentialPredictor for ContextTree {
    fn alphabet(&self) -> Alphabet {
        ContextTree::alphabet(self)
    }

    fn predict(&self, context: &[Symbol]) -> Result<Pmf> {
        ContextTree::predict(self, context)
    }

    fn update(&mut self, symbol: Symbol, context: &[Symbol]) -> Result<f64> {
        ContextTree::update(self, symbol, context)
    }
}

/// Weight `a_n` placed on the uniform law at step `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MixingSchedule {
    /// `a_n = 1 / n`
    Harmonic,
    /// The same `a` at every step, `0 < a <= 1`.
    Constant(f64),
}

impl MixingSchedule {
    pub fn weight(&self, n: u64) -> Result<f64> {
        match *self {
            MixingSchedule::Harmonic => {
                if n == 0 {
                    return Err(Error::InvalidParameter {
                        name: "n",
                        value: 0.0,
                        range: "[1, inf)",
                    });
                }
                Ok(1.0 / n as f64)
            }
            MixingSchedule::Constant(a) => Ok(a),
        }
    }
}

/// `a_n * uniform + (1 - a_n) * base`, which is both universal and
/// pointwise universal whenever the base is pointwise universal and `a_n`
/// decays subexponentially.
#[derive(Debug, Clone)]
pub struct MixtureAssignment<P> {
    base: P,
    schedule: MixingSchedule,
}

impl<P: SequentialPredictor> MixtureAssignment<P> {
    pub fn new(base: P, schedule: MixingSchedule) -> Result<Self> {
        if let MixingSchedule::Constant(a) = schedule {
            if !(a > 0.0 && a <= 1.0) {
                return Err(Error::InvalidParameter {
                    name: "a_n",
                    value: a,
                    range: "(0, 1]",
                });
            }
        }
        Ok(Self { base, schedule })
    }

    pub fn harmonic(base: P) -> Self {
        Self {
            base,
            schedule: MixingSchedule::Harmonic,
        }
    }

    pub fn base(&self) -> &P {
        &self.base
    }

    pub fn base_mut(&mut self) -> &mut P {
        &mut self.base
    }

    pub fn schedule(&self) -> MixingSchedule {
        self.schedule
    }

    /// Mixture prediction at step `n >= 1`.
    pub fn mixture_predict(&self, context: &[Symbol], n: u64) -> Result<Pmf> {
        let a = self.schedule.weight(n)?;
        Ok(self.base.predict(context)?.mix_with_uniform(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_weight_is_uniform() {
        let mut tree = ContextTree::new(Alphabet::binary(), 1);
        for _ in 0..20 {
            tree.update(1, &[1]).unwrap();
        }
        let m = MixtureAssignment::new(tree, MixingSchedule::Constant(1.0)).unwrap();
        assert_eq!(m.mixture_predict(&[1], 5).unwrap().weights(), &[0.5, 0.5]);
    }

    #[test]
    fn zero_weight_rejected() {
        let tree = ContextTree::new(Alphabet::binary(), 1);
        assert!(MixtureAssignment::new(tree.clone(), MixingSchedule::Constant(0.0)).is_err());
        assert!(MixtureAssignment::new(tree.clone(), MixingSchedule::Constant(1.5)).is_err());
        let h = MixtureAssignment::harmonic(tree);
        assert!(h.mixture_predict(&[0], 0).is_err());
    }

    #[test]
    fn harmonic_bounds_at_step_two() {
        let mut tree = ContextTree::new(Alphabet::binary(), 2);
        tree.update(1, &[0, 0]).unwrap();
        let m = MixtureAssignment::harmonic(tree);
        for ctx in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            let p = m.mixture_predict(&ctx, 2).unwrap();
            for &w in p.weights() {
                assert!((0.125..=1.0).contains(&w), "{w}");
                // a_n / (n M) lower bound
                assert!(w >= 0.5 / 4.0);
            }
        }
    }
}
