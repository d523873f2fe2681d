//! Context-tree weighting: the universal sequential probability assignment
//! every estimator is built on.

mod kt;
mod mixture;
mod tree;

pub use kt::{kt_pmf, kt_sequence_log2, kt_sequential};
pub use mixture::{MixingSchedule, MixtureAssignment, SequentialPredictor};
pub use tree::{ContextTree, ContextTreeNode};

use crate::alphabet::Symbol;

/// Writes the `depth` symbols before position `t` of `seq` into `buf`, most
/// recent first. Positions before the start read as `pad`.
pub fn context_at(seq: &[Symbol], t: usize, depth: usize, pad: Symbol, buf: &mut Vec<Symbol>) {
    buf.clear();
    buf.extend((1..=depth).map(|k| if k <= t { seq[t - k] } else { pad }));
}
