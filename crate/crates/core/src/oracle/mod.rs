//! Ground truth: closed-form rates for the synthetic systems and an exact
//! enumerator for small joint processes.

mod closed_form;
mod exact;

pub use closed_form::{
    binary_entropy, coupled_bsc_rates, ctw_redundancy_bound, markov_bsc_rate, CoupledRates,
};
pub use exact::{exact_di, stationary_distribution, ExactRates, JointProcessModel, ENUMERATION_LIMIT};
