//! Sliding-window estimation for functions that are only *almost* smooth.
//!
//! The [`histogram`] module keeps a short list of nested stream suffixes
//! ("buckets"), each fed to its own insertion-only estimator, and prunes the
//! list so that every other bucket loses at least an `epsilon` fraction of
//! value. Any non-negative, monotone-ish function whose ratio between nested
//! suffixes survives appending new items (up to a factor `d`) can be tracked
//! over the last `w` items this way.
//!
//! The graph side plugs three estimators into that machinery:
//!
//! * [`graph::GreedyMatching`] - greedy maximal matching; its vertex set is a
//!   vertex cover of everything it has seen.
//! * [`graph::AlphaGoodTracker`] - exact count of alpha-good edges and its
//!   running maximum over prefixes, a constant-factor proxy for the maximum
//!   matching size on bounded-arboricity graphs.
//! * [`graph::ExactMatching`] - exact maximum matching at desk scale.
//!
//! [`window`] wires these into ready-made sliding-window algorithms with the
//! matching constants, and [`oracles`] holds brute-force ground truth used
//! by the tests and the command-line harness.

pub mod error;
pub mod generate;
pub mod graph;
pub mod histogram;
pub mod oracles;
pub mod window;

pub use error::{Error, Result};
pub use graph::{AlphaGoodTracker, Edge, ExactMatching, GreedyMatching, VertexId};
pub use histogram::{
    Bucket, CountEstimator, Doubling, Estimator, EstimatorFactory, HistogramConfig,
    SlidingHistogram, WindowEstimator,
};
pub use window::{AlgorithmKind, CoverReport, VertexCoverWindow, WindowAlgorithmSpec};
