//! Experiment drivers: delay scans, causality classification and
//! convergence runs.

use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimators::{
    estimate_all, estimate_di, reverse_di, shifted_di, CausalPair, EstimatorConfig, EstimatorMethod,
    EstimatorTrace,
};
use crate::oracle::{binary_entropy, coupled_bsc_rates, markov_bsc_rate};
use crate::sources::{SourceConfig, SourceVariant};

pub const DEFAULT_DELAY_THRESHOLD: f64 = 0.02;
pub const DEFAULT_ABS_THRESHOLD: f64 = 0.02;
pub const DEFAULT_RATIO: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DelayScanResult {
    /// `(d, I(Y_{d+1}^n -> X^{n-d}) / (n - d))` for `d = 0..=d_max`.
    pub points: Vec<(usize, f64)>,
    pub threshold: f64,
    /// Smallest `d` whose estimate exceeds the threshold.
    pub detected: Option<usize>,
}

impl DelayScanResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,bits\n");
        for (d, v) in &self.points {
            let _ = writeln!(out, "{d},{v:.9}");
        }
        out
    }
}

/// Shifted directed information for every delay `0..=d_max`.
pub fn delay_scan(
    pair: &CausalPair,
    d_max: usize,
    method: EstimatorMethod,
    config: impl Into<EstimatorConfig>,
    threshold: f64,
) -> Result<DelayScanResult> {
    let config = config.into();
    let n = pair.len();
    if d_max + config.depth >= n {
        return Err(Error::SequenceTooShort { len: n, needed: d_max + config.depth + 1 });
    }
    let points = (0..=d_max)
        .into_par_iter()
        .map(|d| shifted_di(pair, d, method, config).map(|v| (d, v)))
        .collect::<Result<Vec<_>>>()?;
    let detected = points.iter().find(|(_, v)| *v > threshold).map(|p| p.0);
    Ok(DelayScanResult { points, threshold, detected })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    XcausesY,
    YcausesX,
    Mutual,
    Independent,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::XcausesY => "x-causes-y",
            Classification::YcausesX => "y-causes-x",
            Classification::Mutual => "mutual",
            Classification::Independent => "independent",
        })
    }
}

/// `abs` is the mutual information below which the pair is called
/// independent; one direction dominates when it exceeds `ratio` times the other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalityThresholds {
    pub abs: f64,
    pub ratio: f64,
}

impl Default for CausalityThresholds {
    fn default() -> Self {
        Self { abs: DEFAULT_ABS_THRESHOLD, ratio: DEFAULT_RATIO }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalityReport {
    pub di: f64,
    pub reverse_di: f64,
    pub mi: f64,
    pub classification: Classification,
    pub thresholds: CausalityThresholds,
}

impl CausalityReport {
    pub const CSV_HEADER: &'static str = "di,reverse_di,mi,classification,tau,rho";

    pub fn csv_row(&self) -> String {
        format!(
            "{:.9},{:.9},{:.9},{},{},{}",
            self.di, self.reverse_di, self.mi, self.classification, self.thresholds.abs, self.thresholds.ratio
        )
    }
}

impl fmt::Display for CausalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "I(X->Y)     = {:.4} bits", self.di)?;
        writeln!(f, "I(Y->X)     = {:.4} bits", self.reverse_di)?;
        writeln!(f, "I(X;Y)      = {:.4} bits", self.mi)?;
        write!(
            f,
            "verdict     = {} (tau={}, rho={})",
            self.classification, self.thresholds.abs, self.thresholds.ratio
        )
    }
}

pub fn classify_causality(di: f64, reverse_di: f64, thresholds: CausalityThresholds) -> CausalityReport {
    let mi = di + reverse_di;
    let classification = if mi < thresholds.abs {
        Classification::Independent
    } else if di > thresholds.ratio * reverse_di {
        Classification::XcausesY
    } else if reverse_di > thresholds.ratio * di {
        Classification::YcausesX
    } else {
        Classification::Mutual
    };
    CausalityReport { di, reverse_di, mi, classification, thresholds }
}

/// Estimates both directions with one method and classifies the pair.
pub fn causality_report(
    pair: &CausalPair,
    method: EstimatorMethod,
    config: impl Into<EstimatorConfig>,
    thresholds: CausalityThresholds,
) -> Result<CausalityReport> {
    let config = config.into();
    let (di, rev) = rayon::join(
        || estimate_di(pair, method, config),
        || reverse_di(pair, method, config),
    );
    Ok(classify_causality(di?.final_bits, rev?.final_bits, thresholds))
}

/// The rate a convergence run tracks, and whether it is measured on the
/// swapped pair.
///
/// For Markov-BSC sources this is `I(Y -> X)` (the channel output's causal
/// influence on the input, which carries the closed form); for every other
/// source it is `I(X -> Y)`. ISI sources have no closed form.
pub fn analytic_reference(variant: &SourceVariant) -> (Option<f64>, bool) {
    match *variant {
        SourceVariant::MarkovBsc { p, eps } => (markov_bsc_rate(p, eps).ok(), true),
        SourceVariant::CoupledBsc { alpha, beta } => (coupled_bsc_rates(alpha, beta).ok().map(|r| r.di), false),
        SourceVariant::IidPair { q, copy } => {
            let v = if copy { binary_entropy(q).ok() } else { Some(0.0) };
            (v, false)
        }
        SourceVariant::IsiDelay { .. } => (None, false),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergencePoint {
    pub method: EstimatorMethod,
    pub seed: u64,
    pub n: usize,
    pub bits: f64,
}

#[derive(Debug, Clone)]
pub struct ConvergenceRun {
    pub source: SourceConfig,
    pub depth: usize,
    pub n_grid: Vec<usize>,
    pub analytic: Option<f64>,
    /// Whether the estimates are of `I(Y -> X)` rather than `I(X -> Y)`.
    pub reversed: bool,
    /// Ordered by seed, then method, then `n`.
    pub points: Vec<ConvergencePoint>,
    /// Full running traces, ordered by seed then method.
    pub traces: Vec<(u64, EstimatorTrace)>,
}

impl ConvergenceRun {
    pub fn to_csv(&self) -> String {
        let analytic = self.analytic.map_or(String::from("NA"), |a| format!("{a:.9}"));
        let mut out = String::from("method,seed,n,bits,analytic\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{},{},{:.9},{}", p.method.index(), p.seed, p.n, p.bits, analytic);
        }
        out
    }

    /// Mean absolute error against the analytic value at grid point `n`.
    pub fn mean_abs_error(&self, method: EstimatorMethod, n: usize) -> Option<f64> {
        let a = self.analytic?;
        let errs: Vec<f64> = self
            .points
            .iter()
            .filter(|p| p.method == method && p.n == n)
            .map(|p| (p.bits - a).abs())
            .collect();
        (!errs.is_empty()).then(|| errs.iter().sum::<f64>() / errs.len() as f64)
    }

    /// Mean total variation of each method's running traces, a roughness
    /// measure for diagnostics only.
    pub fn total_variation(&self) -> Vec<(EstimatorMethod, f64)> {
        let mut out: Vec<(EstimatorMethod, f64)> = Vec::new();
        for m in EstimatorMethod::ALL {
            let tv: Vec<f64> = self
                .traces
                .iter()
                .filter(|(_, t)| t.method == m)
                .map(|(_, t)| trace_total_variation(t))
                .collect();
            if !tv.is_empty() {
                out.push((m, tv.iter().sum::<f64>() / tv.len() as f64));
            }
        }
        out
    }
}

/// `sum_i |v_{i+1} - v_i|` over the running estimates.
pub fn trace_total_variation(trace: &EstimatorTrace) -> f64 {
    trace.points.windows(2).map(|w| (w[1].1 - w[0].1).abs()).sum()
}

/// Runs every seed once at the largest grid length and reads each method's
/// running estimate at the grid points.
pub fn convergence_run(
    source: SourceConfig,
    methods: &[EstimatorMethod],
    n_grid: &[usize],
    depth: usize,
    seeds: &[u64],
) -> Result<ConvergenceRun> {
    if n_grid.is_empty() {
        return Err(Error::Empty("n grid"));
    }
    if methods.is_empty() {
        return Err(Error::Empty("method set"));
    }
    if seeds.is_empty() {
        return Err(Error::Empty("seed list"));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter {
            name: "n_grid",
            value: f64::NAN,
            range: "strictly increasing",
        });
    }
    let n_max = *n_grid.last().expect("nonempty");
    if n_grid[0] <= depth {
        return Err(Error::SequenceTooShort { len: n_grid[0], needed: depth + 1 });
    }
    let (analytic, reversed) = analytic_reference(&source.variant);
    let config = EstimatorConfig::new(depth);

    let per_seed = seeds
        .par_iter()
        .map(|&seed| {
            let pair = source.with_seed(seed).with_len(n_max).generate()?;
            let pair = if reversed { pair.swapped() } else { pair };
            let traces = estimate_all(&pair, config)?;
            Ok((seed, traces))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut points = Vec::new();
    let mut traces = Vec::new();
    for (seed, all) in per_seed {
        for trace in all {
            if !methods.contains(&trace.method) {
                continue;
            }
            for &n in n_grid {
                let bits = trace.at(n).expect("grid point inside trace");
                points.push(ConvergencePoint { method: trace.method, seed, n, bits });
            }
            traces.push((seed, trace));
        }
    }
    Ok(ConvergenceRun {
        source: source.with_len(n_max),
        depth,
        n_grid: n_grid.to_vec(),
        analytic,
        reversed,
        points,
        traces,
    })
}
