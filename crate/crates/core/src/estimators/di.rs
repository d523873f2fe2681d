use super::functionals::{conditional_entropy_raw, entropy_raw, relative_entropy_raw};
use super::{CausalPair, EstimatorConfig, EstimatorMethod, EstimatorTrace};
use crate::alphabet::{pair_symbols, SymbolSequence};
use crate::ctw::{context_at, ContextTree};
use crate::error::{Error, Result};

/// Everything one step contributes to the four estimators. All values in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepTerms {
    /// 1-based position of the predicted symbol.
    pub position: usize,
    /// `-log Q(y_i | y^{i-1})` from the `y`-only tree.
    pub marginal_log_loss: f64,
    /// `-log Q(y_i | x^i, y^{i-1})` from the joint tree, conditioned on `x_i`.
    pub causal_log_loss: f64,
    /// Entropy of `Q(. | y^{i-1})`.
    pub marginal_entropy: f64,
    /// Conditional entropy `H(Y|X)` of `Q(., . | x^{i-1}, y^{i-1})`.
    pub causal_entropy: f64,
    /// `D(Q(. | x^i, y^{i-1}) || Q(. | y^{i-1}))`.
    pub conditional_divergence: f64,
    /// `D(Q(., . | past) || Q_x(. | past) Q(. | y^{i-1}))`, computed directly.
    pub joint_divergence: f64,
    /// `sum_{x,y} Q(x, y | past) log 1/Q(y | y^{i-1})`.
    pub cross_entropy: f64,
}

fn check_length(n: usize, config: &EstimatorConfig) -> Result<()> {
    let needed = config.skipped();
    if n <= needed {
        return Err(Error::SequenceTooShort { len: n, needed });
    }
    Ok(())
}

/// Runs the joint and `y`-only trees over the pair and records every term.
pub fn step_terms(pair: &CausalPair, config: impl Into<EstimatorConfig>) -> Result<Vec<StepTerms>> {
    let config = config.into();
    let n = pair.len();
    check_length(n, &config)?;

    let (xa, ya) = (pair.x().alphabet(), pair.y().alphabet());
    let (mx, my) = (xa.size(), ya.size());
    let z = pair_symbols(pair.x(), pair.y())?;
    let (xs, ys, zs) = (pair.x().as_slice(), pair.y().as_slice(), z.as_slice());
    let depth = config.depth;

    let mut joint = ContextTree::new(z.alphabet(), depth);
    let mut marginal = ContextTree::new(ya, depth);
    let mut zctx = Vec::with_capacity(depth);
    let mut yctx = Vec::with_capacity(depth);
    let mut out = Vec::with_capacity(n - config.skipped());
    let mut px = vec![0.0; mx];
    let mut pjy = vec![0.0; my];

    for t in config.skipped()..n {
        context_at(zs, t, depth, 0, &mut zctx);
        context_at(ys, t, depth, 0, &mut yctx);
        let pz = joint.predict_weights(&zctx);
        let py = marginal.predict_weights(&yctx);
        let (xt, yt) = (xs[t], ys[t]);

        let row = &pz[xt * my..(xt + 1) * my];
        let row_mass: f64 = row.iter().sum();
        if row_mass <= 0.0 {
            return Err(Error::ZeroMarginal(xt));
        }
        let cond: Vec<f64> = row.iter().map(|p| p / row_mass).collect();

        px.iter_mut().for_each(|v| *v = 0.0);
        pjy.iter_mut().for_each(|v| *v = 0.0);
        let mut joint_divergence = 0.0;
        for (k, &p) in pz.iter().enumerate() {
            px[k / my] += p;
            pjy[k % my] += p;
        }
        for (k, &p) in pz.iter().enumerate() {
            if p > 0.0 {
                joint_divergence += p * (p / (px[k / my] * py[k % my])).log2();
            }
        }
        let cross_entropy: f64 = pjy.iter().zip(&py).map(|(&a, &b)| -a * b.log2()).sum();

        out.push(StepTerms {
            position: t + 1,
            marginal_log_loss: -py[yt].log2(),
            causal_log_loss: -cond[yt].log2(),
            marginal_entropy: entropy_raw(&py),
            causal_entropy: conditional_entropy_raw(&pz, my),
            conditional_divergence: relative_entropy_raw(&cond, &py),
            joint_divergence: joint_divergence.max(0.0),
            cross_entropy,
        });

        joint.update(zs[t], &zctx)?;
        marginal.update(yt, &yctx)?;
    }
    Ok(out)
}

fn running_trace(
    terms: &[StepTerms],
    method: EstimatorMethod,
    config: &EstimatorConfig,
    ysize: usize,
) -> EstimatorTrace {
    let bound = (ysize as f64).log2();
    let mut a = 0.0;
    let mut b = 0.0;
    let mut points = Vec::with_capacity(terms.len());
    for (k, s) in terms.iter().enumerate() {
        let count = (k + 1) as f64;
        let value = match method {
            EstimatorMethod::LogLoss => {
                a += s.marginal_log_loss;
                b += s.causal_log_loss;
                a / count - b / count
            }
            EstimatorMethod::Entropy => {
                a += s.marginal_entropy;
                b += s.causal_entropy;
                (a / count - b / count).clamp(-bound, bound)
            }
            EstimatorMethod::ConditionalDivergence => {
                a += s.conditional_divergence;
                a / count
            }
            EstimatorMethod::JointDivergence => {
                a += s.joint_divergence;
                a / count
            }
        };
        points.push((s.position, value));
    }
    EstimatorTrace {
        method,
        depth: config.depth,
        skipped: config.skipped(),
        final_bits: points.last().map_or(0.0, |p| p.1),
        points,
    }
}

/// Estimates `I(X^n -> Y^n) / n` with the chosen method.
pub fn estimate_di(
    pair: &CausalPair,
    method: EstimatorMethod,
    config: impl Into<EstimatorConfig>,
) -> Result<EstimatorTrace> {
    let config = config.into();
    let terms = step_terms(pair, config)?;
    Ok(running_trace(&terms, method, &config, pair.y().alphabet().size()))
}

/// All four estimates from one pass, in method order.
pub fn estimate_all(pair: &CausalPair, config: impl Into<EstimatorConfig>) -> Result<[EstimatorTrace; 4]> {
    let config = config.into();
    let terms = step_terms(pair, config)?;
    let ysize = pair.y().alphabet().size();
    Ok(EstimatorMethod::ALL.map(|m| running_trace(&terms, m, &config, ysize)))
}

fn mean(terms: &[StepTerms], f: impl Fn(&StepTerms) -> f64) -> f64 {
    terms.iter().map(f).sum::<f64>() / terms.len() as f64
}

/// Causally conditional entropy rate estimate from log-losses,
/// `-1/(n - D) sum_i log Q(y_i | x^i, y^{i-1})`.
pub fn h1_causal(pair: &CausalPair, config: impl Into<EstimatorConfig>) -> Result<f64> {
    Ok(mean(&step_terms(pair, config)?, |s| s.causal_log_loss))
}

/// Causally conditional entropy rate estimate from predicted conditional entropies.
pub fn h2_causal(pair: &CausalPair, config: impl Into<EstimatorConfig>) -> Result<f64> {
    Ok(mean(&step_terms(pair, config)?, |s| s.causal_entropy))
}

/// `y`-only tree pass: `(mean log-loss, mean predicted entropy)`.
fn marginal_rates(y: &SymbolSequence, config: EstimatorConfig) -> Result<(f64, f64)> {
    check_length(y.len(), &config)?;
    let ys = y.as_slice();
    let mut tree = ContextTree::new(y.alphabet(), config.depth);
    let mut ctx = Vec::with_capacity(config.depth);
    let (mut loss, mut ent) = (0.0, 0.0);
    for t in config.skipped()..ys.len() {
        context_at(ys, t, config.depth, 0, &mut ctx);
        let p = tree.predict_weights(&ctx);
        ent += entropy_raw(&p);
        loss -= tree.update(ys[t], &ctx)?;
    }
    let steps = (ys.len() - config.skipped()) as f64;
    Ok((loss / steps, ent / steps))
}

/// Entropy rate estimate from log-losses of a `y`-only tree; this is the
/// causal estimate with an empty cause.
pub fn h1_marginal(y: &SymbolSequence, config: impl Into<EstimatorConfig>) -> Result<f64> {
    Ok(marginal_rates(y, config.into())?.0)
}

/// Entropy rate estimate from predicted entropies of a `y`-only tree.
pub fn h2_marginal(y: &SymbolSequence, config: impl Into<EstimatorConfig>) -> Result<f64> {
    Ok(marginal_rates(y, config.into())?.1)
}

/// The pair `(W, X)` with `W_i = Y_{i-1}` and `W_1 = 0`.
pub fn reverse_pair(pair: &CausalPair) -> Result<CausalPair> {
    let ys = pair.y().as_slice();
    let mut w = Vec::with_capacity(ys.len());
    if !ys.is_empty() {
        w.push(0);
        w.extend_from_slice(&ys[..ys.len() - 1]);
    }
    CausalPair::new(SymbolSequence::new(pair.y().alphabet(), w)?, pair.x().clone())
}

/// Estimates the reverse directed information `I(Y^{n-1} -> X^n) / n`.
pub fn reverse_di(
    pair: &CausalPair,
    method: EstimatorMethod,
    config: impl Into<EstimatorConfig>,
) -> Result<EstimatorTrace> {
    estimate_di(&reverse_pair(pair)?, method, config)
}

/// `I(X^n; Y^n) / n` as directed plus reverse directed information.
pub fn mutual_info(
    pair: &CausalPair,
    method: EstimatorMethod,
    config: impl Into<EstimatorConfig>,
) -> Result<f64> {
    let config = config.into();
    Ok(estimate_di(pair, method, config)?.final_bits + reverse_di(pair, method, config)?.final_bits)
}

/// The pair `(Y_{d+1..n}, X_{1..n-d})`: `y` advanced by `d` against `x`, with
/// `y` now the candidate cause.
pub fn shifted_pair(pair: &CausalPair, d: usize) -> Result<CausalPair> {
    let n = pair.len();
    if d >= n {
        return Err(Error::SequenceTooShort { len: n, needed: d });
    }
    CausalPair::new(pair.y().slice(d, n), pair.x().slice(0, n - d))
}

/// Shifted directed information `I(Y_{d+1}^n -> X^{n-d}) / (n - d)`.
pub fn shifted_di(
    pair: &CausalPair,
    d: usize,
    method: EstimatorMethod,
    config: impl Into<EstimatorConfig>,
) -> Result<f64> {
    let config = config.into();
    let n = pair.len();
    if n <= d + config.skipped() {
        return Err(Error::SequenceTooShort {
            len: n,
            needed: d + config.skipped(),
        });
    }
    Ok(estimate_di(&shifted_pair(pair, d)?, method, config)?.final_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::estimators::InitialContext;

    fn pair(x: Vec<usize>, y: Vec<usize>) -> CausalPair {
        CausalPair::new(SymbolSequence::binary(x).unwrap(), SymbolSequence::binary(y).unwrap()).unwrap()
    }

    #[test]
    fn first_step_on_fresh_trees() {
        let p = pair(vec![0, 1, 1], vec![1, 0, 1]);
        let terms = step_terms(&p, 2).unwrap();
        assert_eq!(terms.len(), 1);
        let s = terms[0];
        assert_eq!(s.position, 3);
        assert!((s.causal_entropy - 1.0).abs() < 1e-15);
        assert!((s.marginal_entropy - 1.0).abs() < 1e-15);
        assert!((s.causal_log_loss - 1.0).abs() < 1e-15);
        assert_eq!(s.conditional_divergence, 0.0);
        assert_eq!(s.joint_divergence, 0.0);
        // single step log-loss estimate is exactly -log of the predicted probability
        assert!((h1_causal(&p, 2).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn too_short_is_an_error() {
        let p = pair(vec![0, 1], vec![1, 0]);
        assert!(matches!(
            estimate_di(&p, EstimatorMethod::Entropy, 2),
            Err(Error::SequenceTooShort { len: 2, needed: 2 })
        ));
        assert!(shifted_di(&pair(vec![0; 5], vec![0; 5]), 3, EstimatorMethod::Entropy, 2).is_err());
        assert!(h1_marginal(&SymbolSequence::binary(vec![0]).unwrap(), 1).is_err());
    }

    #[test]
    fn pad_zero_predicts_every_symbol() {
        let p = pair(vec![0, 1, 1, 0], vec![1, 0, 1, 1]);
        let cfg = EstimatorConfig {
            depth: 3,
            initial_context: InitialContext::PadZero,
        };
        let t = estimate_di(&p, EstimatorMethod::Entropy, cfg).unwrap();
        assert_eq!(t.points.len(), 4);
        assert_eq!(t.skipped, 0);
        assert_eq!(t.points[0].0, 1);
    }

    #[test]
    fn reverse_pair_shifts_y() {
        let p = pair(vec![1, 1, 0], vec![1, 0, 1]);
        let r = reverse_pair(&p).unwrap();
        assert_eq!(r.x().as_slice(), &[0, 1, 0]);
        assert_eq!(r.y().as_slice(), &[1, 1, 0]);
    }

    #[test]
    fn shifted_pair_at_zero_is_swap() {
        let p = pair(vec![1, 1, 0, 0], vec![1, 0, 1, 1]);
        assert_eq!(shifted_pair(&p, 0).unwrap(), p.swapped());
        let s = shifted_pair(&p, 1).unwrap();
        assert_eq!(s.x().as_slice(), &[0, 1, 1]);
        assert_eq!(s.y().as_slice(), &[1, 1, 0]);
    }

    #[test]
    fn marginal_terms_match_the_joint_pass() {
        let x: Vec<usize> = (0..300).map(|i| (i * 7 % 5) % 2).collect();
        let y: Vec<usize> = (0..300).map(|i| (i * 11 % 7) % 3).collect();
        let p = CausalPair::new(
            SymbolSequence::binary(x).unwrap(),
            SymbolSequence::new(Alphabet::ternary(), y).unwrap(),
        )
        .unwrap();
        let terms = step_terms(&p, 2).unwrap();
        let loss = terms.iter().map(|s| s.marginal_log_loss).sum::<f64>() / terms.len() as f64;
        let ent = terms.iter().map(|s| s.marginal_entropy).sum::<f64>() / terms.len() as f64;
        assert!((h1_marginal(p.y(), 2).unwrap() - loss).abs() < 1e-12);
        assert!((h2_marginal(p.y(), 2).unwrap() - ent).abs() < 1e-12);
    }

    #[test]
    fn trace_lookup() {
        let p = pair(vec![0, 1, 1, 0, 1], vec![1, 0, 1, 1, 0]);
        let t = estimate_di(&p, EstimatorMethod::LogLoss, 2).unwrap();
        assert_eq!(t.at(2), None);
        assert_eq!(t.at(5), Some(t.final_bits));
        assert_eq!(t.at(6), None);
        assert!(t.to_csv().starts_with("i,estimate_bits\n3,"));
        assert!(t.summary_line().starts_with("I1,5,2,"));
    }
}
