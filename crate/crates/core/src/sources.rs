//! Seeded synthetic generators.
//!
//! Every generator draws from a ChaCha20 stream seeded with
//! `ChaCha20Rng::seed_from_u64(seed)`, and each noise source reads its own
//! stream (`set_stream`) so that, for example, the channel noise of a
//! Markov-BSC pair does not depend on how many draws the input consumed.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::alphabet::{Alphabet, SymbolSequence};
use crate::error::{Error, Result};
use crate::estimators::CausalPair;

pub const STREAM_MARKOV: u64 = 1;
pub const STREAM_BSC: u64 = 2;
pub const STREAM_ISI: u64 = 3;
pub const STREAM_COUPLED_X1: u64 = 4;
pub const STREAM_COUPLED_ALPHA: u64 = 5;
pub const STREAM_COUPLED_BETA: u64 = 6;
pub const STREAM_IID_X: u64 = 7;
pub const STREAM_IID_Y: u64 = 8;

/// Input flip probability used for the ISI experiment when none is given.
/// Not taken from any reference setup.
pub const DEFAULT_ISI_INPUT_P: f64 = 0.3;
/// Channel noise used for the ISI experiment when none is given.
/// Not taken from any reference setup.
pub const DEFAULT_ISI_EPS: f64 = 0.1;

fn rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut r = ChaCha20Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

#[inline]
fn bern(r: &mut ChaCha20Rng, p: f64) -> usize {
    (r.gen::<f64>() < p) as usize
}

fn check_prob(name: &'static str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter { name, value: p, range: "[0, 1]" });
    }
    Ok(())
}

fn require_binary(x: &SymbolSequence) -> Result<()> {
    if x.alphabet().size() != 2 {
        return Err(Error::AlphabetMismatch { expected: 2, actual: x.alphabet().size() });
    }
    Ok(())
}

fn binary(data: Vec<usize>) -> SymbolSequence {
    SymbolSequence::new(Alphabet::binary(), data).expect("generated symbols are binary")
}

/// Symmetric binary Markov chain: `X_1 ~ Bernoulli(1/2)`, then each symbol
/// differs from the previous one with probability `p`.
pub fn gen_markov_binary(p: f64, n: usize, seed: u64) -> Result<SymbolSequence> {
    check_prob("p", p)?;
    let mut r = rng(seed, STREAM_MARKOV);
    let mut out = Vec::with_capacity(n);
    if n > 0 {
        let mut cur = bern(&mut r, 0.5);
        out.push(cur);
        for _ in 1..n {
            cur ^= bern(&mut r, p);
            out.push(cur);
        }
    }
    Ok(binary(out))
}

/// Binary symmetric channel with crossover probability `eps`.
pub fn bsc(x: &SymbolSequence, eps: f64, seed: u64) -> Result<SymbolSequence> {
    check_prob("eps", eps)?;
    require_binary(x)?;
    let mut r = rng(seed, STREAM_BSC);
    Ok(binary(x.as_slice().iter().map(|&s| s ^ bern(&mut r, eps)).collect()))
}

/// `Y_i = X_{i-D'} xor X_{i-D'-1} xor W_i` with `W_i ~ Bernoulli(eps)`;
/// inputs before the start of `x` read as 0.
pub fn isi_delay_channel(x: &SymbolSequence, delay: usize, eps: f64, seed: u64) -> Result<SymbolSequence> {
    check_prob("eps", eps)?;
    require_binary(x)?;
    let xs = x.as_slice();
    let at = |i: usize, back: usize| if i >= back { xs[i - back] } else { 0 };
    let mut r = rng(seed, STREAM_ISI);
    Ok(binary(
        (0..xs.len())
            .map(|i| at(i, delay) ^ at(i, delay + 1) ^ bern(&mut r, eps))
            .collect(),
    ))
}

/// `X_1 ~ Bernoulli(1/2)`, `Y_i = X_i xor Bernoulli(alpha)`,
/// `X_{i+1} = Y_i xor Bernoulli(beta)`.
pub fn coupled_bsc_system(alpha: f64, beta: f64, n: usize, seed: u64) -> Result<CausalPair> {
    check_prob("alpha", alpha)?;
    check_prob("beta", beta)?;
    let mut r1 = rng(seed, STREAM_COUPLED_X1);
    let mut ra = rng(seed, STREAM_COUPLED_ALPHA);
    let mut rb = rng(seed, STREAM_COUPLED_BETA);
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    if n > 0 {
        let mut x = bern(&mut r1, 0.5);
        for i in 0..n {
            let y = x ^ bern(&mut ra, alpha);
            xs.push(x);
            ys.push(y);
            if i + 1 < n {
                x = y ^ bern(&mut rb, beta);
            }
        }
    }
    CausalPair::new(binary(xs), binary(ys))
}

/// Which synthetic process a [`SourceConfig`] describes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceVariant {
    /// `X` Markov(`p`), `Y = BSC_eps(X)`.
    MarkovBsc { p: f64, eps: f64 },
    /// `X` Markov(`p`), `Y` the two-tap ISI channel output with delay `delay`.
    IsiDelay { p: f64, delay: usize, eps: f64 },
    CoupledBsc { alpha: f64, beta: f64 },
    /// `X` i.i.d. Bernoulli(`q`); `Y = X` when `copy`, otherwise an
    /// independent Bernoulli(`q`) sequence.
    IidPair { q: f64, copy: bool },
}

impl fmt::Display for SourceVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SourceVariant::MarkovBsc { p, eps } => write!(f, "markov-bsc(p={p},eps={eps})"),
            SourceVariant::IsiDelay { p, delay, eps } => {
                write!(f, "isi(p={p},delay={delay},eps={eps})")
            }
            SourceVariant::CoupledBsc { alpha, beta } => {
                write!(f, "coupled-bsc(alpha={alpha},beta={beta})")
            }
            SourceVariant::IidPair { q, copy } => write!(f, "iid(q={q},copy={copy})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceConfig {
    pub variant: SourceVariant,
    pub n: usize,
    pub seed: u64,
}

impl SourceConfig {
    pub fn new(variant: SourceVariant, n: usize, seed: u64) -> Result<Self> {
        let cfg = Self { variant, n, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }

    pub fn with_len(&self, n: usize) -> Self {
        Self { n, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        match self.variant {
            SourceVariant::MarkovBsc { p, eps } => {
                check_prob("p", p)?;
                check_prob("eps", eps)
            }
            SourceVariant::IsiDelay { p, eps, .. } => {
                check_prob("p", p)?;
                check_prob("eps", eps)
            }
            SourceVariant::CoupledBsc { alpha, beta } => {
                check_prob("alpha", alpha)?;
                check_prob("beta", beta)
            }
            SourceVariant::IidPair { q, .. } => check_prob("q", q),
        }
    }

    /// Generates the pair `(X, Y)`; `X` is always the driving input.
    pub fn generate(&self) -> Result<CausalPair> {
        let (n, seed) = (self.n, self.seed);
        match self.variant {
            SourceVariant::MarkovBsc { p, eps } => {
                let x = gen_markov_binary(p, n, seed)?;
                let y = bsc(&x, eps, seed)?;
                CausalPair::new(x, y)
            }
            SourceVariant::IsiDelay { p, delay, eps } => {
                let x = gen_markov_binary(p, n, seed)?;
                let y = isi_delay_channel(&x, delay, eps, seed)?;
                CausalPair::new(x, y)
            }
            SourceVariant::CoupledBsc { alpha, beta } => coupled_bsc_system(alpha, beta, n, seed),
            SourceVariant::IidPair { q, copy } => {
                check_prob("q", q)?;
                let mut rx = rng(seed, STREAM_IID_X);
                let x: Vec<usize> = (0..n).map(|_| bern(&mut rx, q)).collect();
                let y = if copy {
                    x.clone()
                } else {
                    let mut ry = rng(seed, STREAM_IID_Y);
                    (0..n).map(|_| bern(&mut ry, q)).collect()
                };
                CausalPair::new(binary(x), binary(y))
            }
        }
    }
}
