//! Universal estimators of the directed information rate `I(X -> Y)`.
//!
//! All four estimators run the same pass: a context tree over super symbols
//! `(x_i, y_i)` and a separate context tree over `y` alone. At every step the
//! joint tree predicts `Q(x_i, y_i | past)` and the `y` tree predicts
//! `Q(y_i | y past)`; each estimator averages a different functional of those
//! two predictions.
//!
//! | method | per-step term                                               | support          |
//! |--------|-------------------------------------------------------------|------------------|
//! | 1      | `log 1/Q(y_i|y past) - log 1/Q(y_i|x_i, past)`              | unbounded        |
//! | 2      | `H(Q(.|y past)) - H_{Y|X}(Q(.,.|past))`                     | `[-log|Y|, log|Y|]` |
//! | 3      | `D(Q(.|x_i, past) || Q(.|y past))`                          | `[0, inf)`       |
//! | 4      | `D(Q(.,.|past) || Q(.|y past) Q_x(.|past))`                 | `[0, inf)`       |
//!
//! Everything is in bits. The first `depth` symbols only seed the contexts
//! and every average is over the `n - depth` predicted steps.

mod di;
mod functionals;

pub use di::{
    estimate_all, estimate_di, h1_causal, h1_marginal, h2_causal, h2_marginal, mutual_info,
    reverse_di, reverse_pair, shifted_di, shifted_pair, step_terms, StepTerms,
};
pub use functionals::{condition_on_x, conditional_entropy_functional, entropy};

use std::fmt::Write as _;

use crate::alphabet::SymbolSequence;
use crate::error::{Error, Result};

/// Which of the four estimators to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EstimatorMethod {
    /// Difference of empirical log-losses.
    LogLoss,
    /// Difference of predicted entropies.
    Entropy,
    /// Divergence between the conditional and marginal `y` predictions.
    ConditionalDivergence,
    /// Divergence between the joint prediction and a product of its parts.
    JointDivergence,
}

impl EstimatorMethod {
    pub const ALL: [EstimatorMethod; 4] = [
        EstimatorMethod::LogLoss,
        EstimatorMethod::Entropy,
        EstimatorMethod::ConditionalDivergence,
        EstimatorMethod::JointDivergence,
    ];

    /// 1-based index used on the command line.
    pub fn index(self) -> u8 {
        match self {
            EstimatorMethod::LogLoss => 1,
            EstimatorMethod::Entropy => 2,
            EstimatorMethod::ConditionalDivergence => 3,
            EstimatorMethod::JointDivergence => 4,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        Self::ALL.get((i as usize).wrapping_sub(1)).copied()
    }
}

impl std::fmt::Display for EstimatorMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "I{}", self.index())
    }
}

/// How the first `depth` positions are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialContext {
    /// The first `depth` symbols are context only and never predicted.
    #[default]
    Skip,
    /// Every symbol is predicted; missing history reads as symbol 0.
    PadZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimatorConfig {
    pub depth: usize,
    pub initial_context: InitialContext,
}

impl EstimatorConfig {
    pub fn new(depth: usize) -> Self {
        Self {
            depth,
            initial_context: InitialContext::Skip,
        }
    }

    pub(crate) fn skipped(&self) -> usize {
        match self.initial_context {
            InitialContext::Skip => self.depth,
            InitialContext::PadZero => 0,
        }
    }
}

impl From<usize> for EstimatorConfig {
    fn from(depth: usize) -> Self {
        Self::new(depth)
    }
}

/// A candidate cause `x` and candidate effect `y` of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalPair {
    x: SymbolSequence,
    y: SymbolSequence,
}

impl CausalPair {
    pub fn new(x: SymbolSequence, y: SymbolSequence) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: y.len(),
            });
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &SymbolSequence {
        &self.x
    }

    pub fn y(&self) -> &SymbolSequence {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// The same pair with cause and effect exchanged.
    pub fn swapped(&self) -> CausalPair {
        CausalPair {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    pub fn prefix(&self, n: usize) -> CausalPair {
        CausalPair {
            x: self.x.slice(0, n),
            y: self.y.slice(0, n),
        }
    }
}

/// Running estimate as the sample grows.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorTrace {
    pub method: EstimatorMethod,
    pub depth: usize,
    /// Symbols consumed as initial context and not predicted.
    pub skipped: usize,
    /// `(i, estimate over x^i, y^i)` for every predicted position `i` (1-based).
    pub points: Vec<(usize, f64)>,
    pub final_bits: f64,
}

impl EstimatorTrace {
    /// Estimate after the first `n` symbols, if `n` was a predicted position.
    pub fn at(&self, n: usize) -> Option<f64> {
        let first = self.points.first()?.0;
        self.points.get(n.checked_sub(first)?).map(|p| p.1)
    }

    /// `i,estimate_bits` rows for plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,estimate_bits\n");
        for (i, v) in &self.points {
            let _ = writeln!(out, "{i},{v:.9}");
        }
        out
    }

    /// `method,n,depth,final_bits`
    pub fn summary_line(&self) -> String {
        let n = self.points.last().map_or(self.skipped, |p| p.0);
        format!("{},{},{},{:.9}", self.method, n, self.depth, self.final_bits)
    }
}
