//! Globally optimal phase configuration of a 1-bit reconfigurable
//! intelligent surface (RIS) by divide-and-sort.
//!
//! The received power of a single-antenna link assisted by an `N`-element
//! RIS with phases in `{0, pi}` is a rank-one quadratic form in a sign
//! vector. [`das::das_solve`] finds its exact maximum in `O(N log N)`:
//! fold the eigenvector phases into a half-plane, sort them, and check the
//! `N+1` step-shaped candidates that the sort induces.
//!
//! ```
//! use ris_das::{das_solve, generate_channel, ChannelParams};
//!
//! let ch = generate_channel(64, 7, &ChannelParams::default()).unwrap();
//! let sol = das_solve(&ch);
//! assert_eq!(sol.config.len(), 64);
//! assert!(sol.power > 0.0);
//! ```
//!
//! [`baselines`] holds the exhaustive oracle and heuristic comparators,
//! [`harness`] the seeded sweeps behind the `ris-das` binary.

pub mod baselines;
pub mod channel_io;
pub mod cli;
pub mod das;
pub mod error;
pub mod harness;
pub mod model;

pub use baselines::{
    continuous_upper_bound, exhaustive_search, greedy_bitflip, random_best_of_k, BaselineResult,
    DEFAULT_EXHAUSTIVE_LIMIT,
};
pub use channel_io::{channel_from_str, channel_to_string, read_channel, write_channel};
pub use das::{
    build_candidates, das_solve, fold_angles, maximize_rank_one, recover_config, select_best, sort_folded,
    CandidateSet, DasSolution, FoldResult, SortPermutation,
};
pub use error::{Error, Result};
pub use harness::{aggregate, run_plan, timing_scaling, AggregateRow, ExperimentPlan, Method, TrialRecord};
pub use model::{
    composite_phi, generate_channel, received_power, snr_db, ChannelParams, ChannelRealization, CompositePhi,
    PhaseConfig,
};
