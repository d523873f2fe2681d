//! Probability vectors over a single alphabet and over a product alphabet.

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Mass must sum to one within this tolerance.
pub const PMF_TOLERANCE: f64 = 1e-9;

fn validate(weights: &[f64]) -> Result<()> {
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(Error::InvalidPmf(format!("entry {w} is not a nonnegative real")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > PMF_TOLERANCE {
        return Err(Error::InvalidPmf(format!("mass sums to {total}")));
    }
    Ok(())
}

/// A probability mass function over one alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    alphabet: Alphabet,
    weights: Vec<f64>,
}

impl Pmf {
    pub fn new(alphabet: Alphabet, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != alphabet.size() {
            return Err(Error::AlphabetMismatch {
                expected: alphabet.size(),
                actual: weights.len(),
            });
        }
        validate(&weights)?;
        Ok(Self { alphabet, weights })
    }

    pub fn uniform(alphabet: Alphabet) -> Self {
        let m = alphabet.size();
        Self {
            alphabet,
            weights: vec![1.0 / m as f64; m],
        }
    }

    /// Constructor for weights already known to be normalized, e.g. mixtures
    /// of valid pmfs.
    pub(crate) fn from_normalized(alphabet: Alphabet, weights: Vec<f64>) -> Self {
        debug_assert_eq!(weights.len(), alphabet.size());
        debug_assert!(validate(&weights).is_ok(), "{weights:?}");
        Self { alphabet, weights }
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, symbol: Symbol) -> f64 {
        self.weights[symbol]
    }

    /// Shannon entropy in bits, `0 log 0 = 0`.
    pub fn entropy(&self) -> f64 {
        -self
            .weights
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * p.log2())
            .sum::<f64>()
    }

    /// Relative entropy `D(self || other)` in bits.
    ///
    /// Entries with `self[a] = 0` contribute nothing. The caller guarantees
    /// `other[a] > 0` wherever `self[a] > 0`; CTW predictions are strictly
    /// positive so this always holds inside the estimators.
    pub fn relative_entropy(&self, other: &Pmf) -> f64 {
        debug_assert_eq!(self.alphabet, other.alphabet);
        let d: f64 = self
            .weights
            .iter()
            .zip(&other.weights)
            .filter(|(&p, _)| p > 0.0)
            .map(|(&p, &q)| {
                assert!(q > 0.0, "relative entropy against a zero-mass reference");
                p * (p / q).log2()
            })
            .sum();
        d.max(0.0)
    }

    /// `a * uniform + (1 - a) * self`.
    pub fn mix_with_uniform(&self, a: f64) -> Pmf {
        let u = 1.0 / self.alphabet.size() as f64;
        let weights = self.weights.iter().map(|&w| a * u + (1.0 - a) * w).collect();
        Pmf::from_normalized(self.alphabet, weights)
    }
}

/// A joint pmf `P(x, y)` stored row-major (`x` major), matching super-symbol
/// order `z = x * |Y| + y`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    x_alphabet: Alphabet,
    y_alphabet: Alphabet,
    weights: Vec<f64>,
}

impl JointPmf {
    pub fn new(x_alphabet: Alphabet, y_alphabet: Alphabet, weights: Vec<f64>) -> Result<Self> {
        let expected = x_alphabet.size() * y_alphabet.size();
        if weights.len() != expected {
            return Err(Error::AlphabetMismatch {
                expected,
                actual: weights.len(),
            });
        }
        validate(&weights)?;
        Ok(Self {
            x_alphabet,
            y_alphabet,
            weights,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let x_alphabet = Alphabet::new(rows.len())?;
        let y_alphabet = Alphabet::new(rows.first().map_or(0, Vec::len))?;
        if rows.iter().any(|r| r.len() != y_alphabet.size()) {
            return Err(Error::InvalidPmf("ragged rows".into()));
        }
        Self::new(x_alphabet, y_alphabet, rows.concat())
    }

    /// Reinterprets a pmf over the super alphabet as a joint pmf.
    pub fn from_super(pmf: Pmf, x_alphabet: Alphabet, y_alphabet: Alphabet) -> Result<Self> {
        let expected = x_alphabet.size() * y_alphabet.size();
        if pmf.alphabet().size() != expected {
            return Err(Error::AlphabetMismatch {
                expected,
                actual: pmf.alphabet().size(),
            });
        }
        Ok(Self {
            x_alphabet,
            y_alphabet,
            weights: pmf.weights,
        })
    }

    pub fn uniform(x_alphabet: Alphabet, y_alphabet: Alphabet) -> Self {
        let n = x_alphabet.size() * y_alphabet.size();
        Self {
            x_alphabet,
            y_alphabet,
            weights: vec![1.0 / n as f64; n],
        }
    }

    #[inline]
    pub fn x_alphabet(&self) -> Alphabet {
        self.x_alphabet
    }

    #[inline]
    pub fn y_alphabet(&self) -> Alphabet {
        self.y_alphabet
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn get(&self, x: Symbol, y: Symbol) -> f64 {
        self.weights[x * self.y_alphabet.size() + y]
    }

    pub fn row(&self, x: Symbol) -> &[f64] {
        let m = self.y_alphabet.size();
        &self.weights[x * m..(x + 1) * m]
    }

    /// `P(x) = sum_y P(x, y)`.
    pub fn marginal_x(&self) -> Pmf {
        let weights = (0..self.x_alphabet.size())
            .map(|x| self.row(x).iter().sum())
            .collect();
        Pmf::from_normalized(self.x_alphabet, weights)
    }

    /// `P(y) = sum_x P(x, y)`.
    pub fn marginal_y(&self) -> Pmf {
        let m = self.y_alphabet.size();
        let mut weights = vec![0.0; m];
        for (i, &w) in self.weights.iter().enumerate() {
            weights[i % m] += w;
        }
        Pmf::from_normalized(self.y_alphabet, weights)
    }

    /// Product pmf `P_y(y) * P_x(x)` laid out like a joint pmf.
    pub fn product(x: &Pmf, y: &Pmf) -> JointPmf {
        let weights = x
            .weights()
            .iter()
            .flat_map(|&px| y.weights().iter().map(move |&py| px * py))
            .collect();
        JointPmf {
            x_alphabet: x.alphabet(),
            y_alphabet: y.alphabet(),
            weights,
        }
    }

    /// Relative entropy between joint pmfs on the same product alphabet.
    pub fn relative_entropy(&self, other: &JointPmf) -> f64 {
        let a = Pmf::from_normalized(self.x_alphabet.product(&self.y_alphabet), self.weights.clone());
        let b = Pmf::from_normalized(other.x_alphabet.product(&other.y_alphabet), other.weights.clone());
        a.relative_entropy(&b)
    }

    /// L1 distance between joint pmfs on the same product alphabet.
    pub fn l1_distance(&self, other: &JointPmf) -> f64 {
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_weights() {
        let a = Alphabet::binary();
        assert!(Pmf::new(a, vec![0.5, 0.6]).is_err());
        assert!(Pmf::new(a, vec![-0.1, 1.1]).is_err());
        assert!(Pmf::new(a, vec![f64::NAN, 1.0]).is_err());
        assert!(Pmf::new(a, vec![1.0]).is_err());
        assert!(Pmf::new(a, vec![0.5, 0.5 + 1e-12]).is_ok());
    }

    #[test]
    fn entropy_and_divergence() {
        let a = Alphabet::binary();
        assert!((Pmf::uniform(a).entropy() - 1.0).abs() < 1e-15);
        assert_eq!(Pmf::new(a, vec![1.0, 0.0]).unwrap().entropy(), 0.0);
        let p = Pmf::new(a, vec![0.5, 0.5]).unwrap();
        let q = Pmf::new(a, vec![0.25, 0.75]).unwrap();
        // 0.5 log(2) + 0.5 log(2/3)
        let expected = 0.5 + 0.5 * (2.0f64 / 3.0).log2();
        assert!((p.relative_entropy(&q) - expected).abs() < 1e-14);
        assert_eq!(p.relative_entropy(&p), 0.0);
    }

    #[test]
    fn joint_marginals() {
        let j = JointPmf::from_rows(&[vec![0.4, 0.1], vec![0.25, 0.25]]).unwrap();
        let mx = j.marginal_x();
        let my = j.marginal_y();
        assert!((mx.weight(0) - 0.5).abs() < 1e-15);
        assert!((my.weight(0) - 0.65).abs() < 1e-15);
        assert!((my.weight(1) - 0.35).abs() < 1e-15);
        let prod = JointPmf::product(&mx, &my);
        assert!((prod.get(1, 0) - 0.5 * 0.65).abs() < 1e-15);
    }

    #[test]
    fn mixing_with_uniform_stays_normalized() {
        let p = Pmf::new(Alphabet::new(3).unwrap(), vec![1.0, 0.0, 0.0]).unwrap();
        let m = p.mix_with_uniform(0.3);
        assert!((m.weights().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!((m.weight(1) - 0.1).abs() < 1e-15);
    }
}
