//! Universal estimation of directed information between finite-alphabet
//! time series.
//!
//! The crate is organized bottom-up:
//!
//! - [`alphabet`], [`pmf`], [`logprob`], [`quantize`]: the data model
//! - [`ctw`]: context-tree weighting, the sequential probability assignment
//! - [`estimators`]: the four directed-information estimators and variants
//! - [`oracle`]: closed-form rates and an exact brute-force calculator
//! - [`sources`]: seeded synthetic processes
//! - [`analysis`]: delay scans, causality classification, convergence runs
//! - [`ingest`]: CSV loading, date alignment and export
//!
//! ```
//! use dirinfo::estimators::{estimate_di, CausalPair, EstimatorMethod};
//! use dirinfo::sources::coupled_bsc_system;
//!
//! let pair = coupled_bsc_system(0.1, 0.2, 5_000, 7).unwrap();
//! let trace = estimate_di(&pair, EstimatorMethod::Entropy, 2).unwrap();
//! assert!(trace.final_bits > 0.2);
//! ```

pub mod alphabet;
pub mod analysis;
pub mod ctw;
pub mod error;
pub mod estimators;
pub mod ingest;
pub mod logprob;
pub mod oracle;
pub mod pmf;
pub mod quantize;
pub mod sources;

pub use alphabet::{pair_symbols, unpair_symbols, Alphabet, Symbol, SymbolSequence};
pub use error::{Error, Result};
pub use estimators::{CausalPair, EstimatorConfig, EstimatorMethod, EstimatorTrace};
pub use logprob::{normalize_log_pmf, LogProb};
pub use pmf::{JointPmf, Pmf};
pub use quantize::quantize_returns;
