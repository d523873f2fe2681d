//! Krichevsky–Trofimov (add-1/2) sequential estimator.

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::pmf::Pmf;

/// Probability that the next symbol is `q` given per-symbol counts:
/// `(counts[q] + 1/2) / (sum(counts) + M/2)`.
pub fn kt_sequential(counts: &[u64], q: Symbol) -> Result<f64> {
    if q >= counts.len() {
        return Err(Error::SymbolOutOfRange {
            symbol: q,
            size: counts.len(),
        });
    }
    let total: u64 = counts.iter().sum();
    Ok(kt_factor(counts[q], total, counts.len()))
}

#[inline]
pub(crate) fn kt_factor(count: u64, total: u64, m: usize) -> f64 {
    (count as f64 + 0.5) / (total as f64 + m as f64 / 2.0)
}

/// Full KT predictive pmf for the given counts.
pub fn kt_pmf(counts: &[u64]) -> Result<Pmf> {
    let alphabet = Alphabet::new(counts.len())?;
    Ok(Pmf::from_normalized(alphabet, kt_weights(counts)))
}

pub(crate) fn kt_weights(counts: &[u64]) -> Vec<f64> {
    let total: u64 = counts.iter().sum();
    let denom = total as f64 + counts.len() as f64 / 2.0;
    counts.iter().map(|&c| (c as f64 + 0.5) / denom).collect()
}

/// `log2 P_e` of a whole sequence, accumulated sequentially.
pub fn kt_sequence_log2(alphabet: Alphabet, sequence: &[Symbol]) -> Result<f64> {
    let mut counts = vec![0u64; alphabet.size()];
    let mut log = 0.0;
    for (total, &s) in sequence.iter().enumerate() {
        alphabet.check(s)?;
        log += kt_factor(counts[s], total as u64, alphabet.size()).log2();
        counts[s] += 1;
    }
    Ok(log)
}
