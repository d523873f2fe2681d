//! Exact directed information of a small joint process by enumerating every
//! joint sequence.

use nalgebra::{DMatrix, DVector};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// Largest number of joint sequences [`exact_di`] will enumerate.
pub const ENUMERATION_LIMIT: u128 = 1 << 24;

const ROW_TOLERANCE: f64 = 1e-12;

/// A joint process on `(x_i, y_i)` with bounded memory `m`.
///
/// The first `m` super symbols `z_i = x_i * |Y| + y_i` are drawn from
/// `initial` (indexed with `z_1` as the most significant base-`|X||Y|` digit);
/// afterwards `z_i` is drawn from the kernel row selected by the previous `m`
/// super symbols, encoded the same way.
#[derive(Debug, Clone, PartialEq)]
pub struct JointProcessModel {
    x_alphabet: Alphabet,
    y_alphabet: Alphabet,
    memory: usize,
    initial: Vec<f64>,
    kernel: Vec<f64>,
}

fn check_rows(values: &[f64], width: usize, what: &str) -> Result<()> {
    for (r, row) in values.chunks(width).enumerate() {
        if row.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidPmf(format!("{what} row {r} has an invalid entry")));
        }
        let total: f64 = row.iter().sum();
        if (total - 1.0).abs() > ROW_TOLERANCE {
            return Err(Error::InvalidPmf(format!("{what} row {r} sums to {total}")));
        }
    }
    Ok(())
}

impl JointProcessModel {
    pub fn new(
        x_alphabet: Alphabet,
        y_alphabet: Alphabet,
        memory: usize,
        initial: Vec<f64>,
        kernel: Vec<f64>,
    ) -> Result<Self> {
        let mz = x_alphabet.size() * y_alphabet.size();
        let states = mz.pow(memory as u32);
        if initial.len() != states {
            return Err(Error::AlphabetMismatch { expected: states, actual: initial.len() });
        }
        if kernel.len() != states * mz {
            return Err(Error::AlphabetMismatch { expected: states * mz, actual: kernel.len() });
        }
        check_rows(&initial, states, "initial")?;
        check_rows(&kernel, mz, "kernel")?;
        Ok(Self { x_alphabet, y_alphabet, memory, initial, kernel })
    }

    /// I.i.d. pairs drawn from one joint pmf (row-major, `x` major).
    pub fn iid(x_alphabet: Alphabet, y_alphabet: Alphabet, joint: Vec<f64>) -> Result<Self> {
        Self::new(x_alphabet, y_alphabet, 0, vec![1.0], joint)
    }

    /// Memory-1 model started from the stationary law of its own chain.
    pub fn stationary_markov(x_alphabet: Alphabet, y_alphabet: Alphabet, kernel: Vec<f64>) -> Result<Self> {
        let mz = x_alphabet.size() * y_alphabet.size();
        check_rows(&kernel, mz, "kernel")?;
        let initial = stationary_distribution(&kernel, mz)?;
        Self::new(x_alphabet, y_alphabet, 1, initial, kernel)
    }

    /// `X` a symmetric binary Markov chain (flip probability `p`) started
    /// stationary, `Y` its BSC(`eps`) output. Cause `X`, effect `Y`.
    pub fn markov_bsc(p: f64, eps: f64) -> Result<Self> {
        let chain = [1.0 - p, p, p, 1.0 - p];
        let pi = stationary_distribution(&chain, 2)?;
        let bsc = |x: usize, y: usize| if x == y { 1.0 - eps } else { eps };
        let mut initial = vec![0.0; 4];
        let mut kernel = vec![0.0; 16];
        for x in 0..2 {
            for y in 0..2 {
                initial[x * 2 + y] = pi[x] * bsc(x, y);
            }
        }
        for prev in 0..4 {
            let px = prev / 2;
            for x in 0..2 {
                for y in 0..2 {
                    kernel[prev * 4 + x * 2 + y] = chain[px * 2 + x] * bsc(x, y);
                }
            }
        }
        let b = Alphabet::binary();
        Self::new(b, b, 1, initial, kernel)
    }

    /// The coupled-BSC system with `X_1 ~ Bernoulli(1/2)`.
    pub fn coupled_bsc(alpha: f64, beta: f64) -> Result<Self> {
        let flip = |e: f64, a: usize, b: usize| if a == b { 1.0 - e } else { e };
        let mut initial = vec![0.0; 4];
        let mut kernel = vec![0.0; 16];
        for x in 0..2 {
            for y in 0..2 {
                initial[x * 2 + y] = 0.5 * flip(alpha, x, y);
            }
        }
        for prev in 0..4 {
            let py = prev % 2;
            for x in 0..2 {
                for y in 0..2 {
                    kernel[prev * 4 + x * 2 + y] = flip(beta, py, x) * flip(alpha, x, y);
                }
            }
        }
        let b = Alphabet::binary();
        Self::new(b, b, 1, initial, kernel)
    }

    /// The same process with the roles of `x` and `y` exchanged.
    pub fn swapped(&self) -> Self {
        let (mx, my) = (self.x_alphabet.size(), self.y_alphabet.size());
        let mz = mx * my;
        let flip = |z: usize| (z % my) * mx + z / my;
        let flip_state = |mut s: usize| {
            let mut digits = vec![0; self.memory];
            for d in digits.iter_mut().rev() {
                *d = flip(s % mz);
                s /= mz;
            }
            digits.iter().fold(0, |acc, &d| acc * mz + d)
        };
        let states = self.initial.len();
        let mut initial = vec![0.0; states];
        let mut kernel = vec![0.0; self.kernel.len()];
        for s in 0..states {
            initial[flip_state(s)] = self.initial[s];
            for z in 0..mz {
                kernel[flip_state(s) * mz + flip(z)] = self.kernel[s * mz + z];
            }
        }
        Self {
            x_alphabet: self.y_alphabet,
            y_alphabet: self.x_alphabet,
            memory: self.memory,
            initial,
            kernel,
        }
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn x_alphabet(&self) -> Alphabet {
        self.x_alphabet
    }

    pub fn y_alphabet(&self) -> Alphabet {
        self.y_alphabet
    }

    /// Log2-probabilities of every `z^i`, for `i = 0..=n`.
    fn prefix_logprobs(&self, n: usize) -> Vec<Vec<f64>> {
        let mz = self.x_alphabet.size() * self.y_alphabet.size();
        let states = self.initial.len();
        let mut levels: Vec<Vec<f64>> = vec![vec![0.0]];
        for i in 1..=n {
            let level = if i <= self.memory {
                let block = mz.pow((self.memory - i) as u32);
                self.initial
                    .chunks(block)
                    .map(|c| c.iter().sum::<f64>().log2())
                    .collect()
            } else {
                let prev = &levels[i - 1];
                let mut next = Vec::with_capacity(prev.len() * mz);
                for (idx, &lp) in prev.iter().enumerate() {
                    let row = &self.kernel[(idx % states) * mz..(idx % states + 1) * mz];
                    next.extend(row.iter().map(|&k| lp + k.log2()));
                }
                next
            };
            levels.push(level);
        }
        levels
    }
}

/// Stationary law of a row-stochastic matrix, by solving the balance
/// equations with the normalization row replacing one redundant equation.
pub fn stationary_distribution(rows: &[f64], states: usize) -> Result<Vec<f64>> {
    check_rows(rows, states, "transition")?;
    let p = DMatrix::from_row_slice(states, states, rows);
    let mut a = p.transpose() - DMatrix::identity(states, states);
    let mut b = DVector::zeros(states);
    for j in 0..states {
        a[(states - 1, j)] = 1.0;
    }
    b[states - 1] = 1.0;
    let pi = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::InvalidPmf("chain has no unique stationary law".into()))?;
    let out: Vec<f64> = pi.iter().map(|v| v.max(0.0)).collect();
    let total: f64 = out.iter().sum();
    Ok(out.into_iter().map(|v| v / total).collect())
}

fn entropy_of_logs<'a>(logs: impl IntoIterator<Item = &'a f64>) -> f64 {
    logs.into_iter()
        .filter(|l| l.is_finite())
        .map(|&l| -l.exp2() * l)
        .sum()
}

fn entropy_of_probs(probs: &[f64]) -> f64 {
    probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
}

/// Per-symbol information quantities of `n` steps of a process, in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactRates {
    pub n: usize,
    /// `I(X^n -> Y^n) / n`
    pub di: f64,
    /// `I(Y^{n-1} -> X^n) / n`
    pub reverse_di: f64,
    /// `I(X^n; Y^n) / n`
    pub mi: f64,
    /// `I(X^{n-1} -> Y^n) / n`
    pub delayed_di: f64,
    /// `sum_i I(X_i; Y_i | X^{i-1}, Y^{i-1}) / n`
    pub instantaneous: f64,
    /// `H(Y^n) / n`
    pub entropy_y: f64,
    /// `H(X^n) / n`
    pub entropy_x: f64,
}

/// Exact directed, reverse directed and mutual information rates over `n` steps.
pub fn exact_di(model: &JointProcessModel, n: usize) -> Result<ExactRates> {
    let (mx, my) = (model.x_alphabet.size(), model.y_alphabet.size());
    let mz = mx * my;
    let count = (mz as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { count, limit: ENUMERATION_LIMIT });
    }
    if n == 0 {
        return Err(Error::SequenceTooShort { len: 0, needed: 0 });
    }
    let levels = model.prefix_logprobs(n);

    // h_z[i] = H(Z^i); h_xy[i] = H(X^i, Y^{i-1}); h_yx[i] = H(X^{i-1}, Y^i)
    let mut h_z = vec![0.0; n + 1];
    let mut h_xy = vec![0.0; n + 1];
    let mut h_yx = vec![0.0; n + 1];
    for i in 1..=n {
        let level = &levels[i];
        h_z[i] = entropy_of_logs(level);
        let prefixes = level.len() / mz;
        let mut drop_y = vec![0.0; prefixes * mx];
        let mut drop_x = vec![0.0; prefixes * my];
        for (idx, &lp) in level.iter().enumerate() {
            if !lp.is_finite() {
                continue;
            }
            let p = lp.exp2();
            let (prefix, z) = (idx / mz, idx % mz);
            drop_y[prefix * mx + z / my] += p;
            drop_x[prefix * my + z % my] += p;
        }
        h_xy[i] = entropy_of_probs(&drop_y);
        h_yx[i] = entropy_of_probs(&drop_x);
    }

    let full = &levels[n];
    let mut px = vec![0.0; mx.pow(n as u32)];
    let mut py = vec![0.0; my.pow(n as u32)];
    for (mut idx, &lp) in full.iter().enumerate() {
        if !lp.is_finite() {
            continue;
        }
        let p = lp.exp2();
        let (mut xcode, mut ycode, mut xw, mut yw) = (0, 0, 1, 1);
        for _ in 0..n {
            let z = idx % mz;
            idx /= mz;
            xcode += (z / my) * xw;
            ycode += (z % my) * yw;
            xw *= mx;
            yw *= my;
        }
        px[xcode] += p;
        py[ycode] += p;
    }
    let hx = entropy_of_probs(&px);
    let hy = entropy_of_probs(&py);

    let (mut causal_y, mut causal_x, mut delayed_y, mut inst) = (0.0, 0.0, 0.0, 0.0);
    for i in 1..=n {
        causal_y += h_z[i] - h_xy[i];
        causal_x += h_xy[i] - h_z[i - 1];
        delayed_y += h_yx[i] - h_z[i - 1];
        inst += h_xy[i] + h_yx[i] - h_z[i] - h_z[i - 1];
    }
    let nf = n as f64;
    Ok(ExactRates {
        n,
        di: (hy - causal_y) / nf,
        reverse_di: (hx - causal_x) / nf,
        mi: (hx + hy - h_z[n]) / nf,
        delayed_di: (hy - delayed_y) / nf,
        instantaneous: inst / nf,
        entropy_y: hy / nf,
        entropy_x: hx / nf,
    })
}
