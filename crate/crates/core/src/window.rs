//! Ready-made sliding-window algorithms for matching and vertex cover.
//!
//! | kind               | estimator            | histogram (c, d, C) | ratio vs truth                  |
//! |--------------------|----------------------|---------------------|---------------------------------|
//! | `mm_via_goodedges` | E*_alpha (exact)     | (1, 2, 1)           | `2 (a+2) (1+e)^2 / (1-e)^2` vs m |
//! | `mm_squared`       | E*_alpha (exact)     | (1, 2, a+2)         | `2 (a+2)^2 (1+e)^2 / (1-e)^2` vs m |
//! | `vc_forest`        | E*_1 (exact)         | (1, 2, 1)           | `4 (1+e)^2 / (1-e)^2` vs VC     |
//! | `vc_approx`        | greedy matching      | (2, 2, 1)           | `4 (1 + 2e)` vs VC              |
//! | `generic`          | exact matching       | (1, 2, 1)           | `2 (1+e)^2 / (1-e)^2` vs m      |
//!
//! For `mm_via_goodedges` and `vc_forest` the histogram tracks E*_alpha
//! itself, which is 2-almost-smooth, and the factor between E*_alpha and the
//! target (alpha + 2, or 2 on forests) enters only the ratio bound. For
//! `mm_squared` the same estimator is treated as an (alpha + 2)-approximation
//! of the matching size and the query multiplier absorbs it.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AlphaGoodTracker, Edge, ExactMatching, GreedyMatching, VertexId};
use crate::histogram::{HistogramConfig, SlidingHistogram, WindowEstimator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmKind {
    MmViaGoodedges,
    MmSquared,
    VcForest,
    VcApprox,
    Generic,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 5] = [
        AlgorithmKind::MmViaGoodedges,
        AlgorithmKind::MmSquared,
        AlgorithmKind::VcForest,
        AlgorithmKind::VcApprox,
        AlgorithmKind::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::MmViaGoodedges => "mm_via_goodedges",
            AlgorithmKind::MmSquared => "mm_squared",
            AlgorithmKind::VcForest => "vc_forest",
            AlgorithmKind::VcApprox => "vc_approx",
            AlgorithmKind::Generic => "generic",
        }
    }

    /// Whether the output targets vertex cover rather than matching size.
    pub fn targets_vertex_cover(self) -> bool {
        matches!(self, AlgorithmKind::VcForest | AlgorithmKind::VcApprox)
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowAlgorithmSpec {
    pub kind: AlgorithmKind,
    pub alpha: usize,
    pub epsilon: f64,
    pub window: usize,
}

impl WindowAlgorithmSpec {
    pub fn new(kind: AlgorithmKind, alpha: usize, epsilon: f64, window: usize) -> Result<Self> {
        let spec = Self {
            kind,
            alpha,
            epsilon,
            window,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha == 0 {
            return Err(Error::Config("alpha must be at least 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return Err(Error::Config(format!(
                "epsilon must lie in (0, 1/2), got {}",
                self.epsilon
            )));
        }
        if self.kind == AlgorithmKind::VcForest && self.alpha != 1 {
            return Err(Error::Config("vc_forest requires alpha = 1".into()));
        }
        self.histogram_config().map(|_| ())
    }

    /// `(c, d, C)` handed to the histogram.
    pub fn constants(&self) -> (f64, f64, f64) {
        match self.kind {
            AlgorithmKind::MmViaGoodedges | AlgorithmKind::VcForest | AlgorithmKind::Generic => {
                (1.0, 2.0, 1.0)
            }
            AlgorithmKind::MmSquared => (1.0, 2.0, self.alpha as f64 + 2.0),
            AlgorithmKind::VcApprox => (2.0, 2.0, 1.0),
        }
    }

    /// Factor between the tracked quantity and the target (the `C` of the
    /// tracked-function-approximates-target argument).
    pub fn target_factor(&self) -> f64 {
        match self.kind {
            AlgorithmKind::MmViaGoodedges | AlgorithmKind::MmSquared => self.alpha as f64 + 2.0,
            AlgorithmKind::VcForest => 2.0,
            AlgorithmKind::VcApprox | AlgorithmKind::Generic => 1.0,
        }
    }

    pub fn histogram_config(&self) -> Result<HistogramConfig> {
        let (c, d, approx) = self.constants();
        HistogramConfig::new(self.epsilon, self.window, c, d, approx)
    }

    /// `[lower, upper]` for `estimate / truth` at every query time.
    pub fn ratio_bounds(&self) -> (f64, f64) {
        ratio_bounds(self.kind, self.epsilon, self.alpha)
    }
}

/// Guaranteed range of `estimate / truth` for an algorithm.
pub fn ratio_bounds(kind: AlgorithmKind, epsilon: f64, alpha: usize) -> (f64, f64) {
    let a = alpha as f64;
    let slack = ((1.0 + epsilon) / (1.0 - epsilon)).powi(2);
    let upper = match kind {
        AlgorithmKind::MmViaGoodedges => 2.0 * (a + 2.0) * slack,
        AlgorithmKind::MmSquared => 2.0 * (a + 2.0) * (a + 2.0) * slack,
        AlgorithmKind::VcForest => 4.0 * slack,
        AlgorithmKind::VcApprox => 4.0 * (1.0 + 2.0 * epsilon),
        AlgorithmKind::Generic => 2.0 * slack,
    };
    (1.0, upper)
}

type TrackerFactory = Box<dyn Fn() -> AlphaGoodTracker + Send + Sync>;

/// Matching (or forest vertex cover) size estimate from alpha-good edges.
///
/// Serves `mm_via_goodedges`, `mm_squared` and `vc_forest`; they share the
/// machinery and differ in constants and in what the output is compared to.
pub struct GoodEdgeWindow {
    spec: WindowAlgorithmSpec,
    histogram: SlidingHistogram<TrackerFactory>,
}

impl GoodEdgeWindow {
    pub fn new(spec: WindowAlgorithmSpec) -> Result<Self> {
        spec.validate()?;
        if !matches!(
            spec.kind,
            AlgorithmKind::MmViaGoodedges | AlgorithmKind::MmSquared | AlgorithmKind::VcForest
        ) {
            return Err(Error::Config(format!(
                "{} is not an alpha-good-edge algorithm",
                spec.kind
            )));
        }
        let alpha = spec.alpha;
        let factory: TrackerFactory =
            Box::new(move || AlphaGoodTracker::new(alpha).expect("alpha validated"));
        Ok(Self {
            spec,
            histogram: SlidingHistogram::new(spec.histogram_config()?, factory)?,
        })
    }

    pub fn spec(&self) -> &WindowAlgorithmSpec {
        &self.spec
    }

    pub fn histogram(&self) -> &SlidingHistogram<TrackerFactory> {
        &self.histogram
    }
}

impl WindowEstimator for GoodEdgeWindow {
    type Item = Edge;

    fn update(&mut self, e: &Edge) -> Result<()> {
        self.histogram.update(e)
    }

    fn estimate(&self) -> Result<f64> {
        self.histogram.query()
    }

    fn bucket_count(&self) -> usize {
        self.histogram.bucket_count()
    }

    fn footprint(&self) -> usize {
        self.histogram.footprint()
    }
}

type ExactFactory = fn() -> ExactMatching;

/// Histogram over the exact matching estimator (`generic`).
pub struct ExactMatchingWindow {
    spec: WindowAlgorithmSpec,
    histogram: SlidingHistogram<ExactFactory>,
}

impl ExactMatchingWindow {
    pub fn new(spec: WindowAlgorithmSpec) -> Result<Self> {
        spec.validate()?;
        if spec.kind != AlgorithmKind::Generic {
            return Err(Error::Config(format!(
                "{} is not the generic exact-matching algorithm",
                spec.kind
            )));
        }
        Ok(Self {
            spec,
            histogram: SlidingHistogram::new(
                spec.histogram_config()?,
                ExactMatching::new as ExactFactory,
            )?,
        })
    }

    pub fn spec(&self) -> &WindowAlgorithmSpec {
        &self.spec
    }

    pub fn histogram(&self) -> &SlidingHistogram<ExactFactory> {
        &self.histogram
    }
}

impl WindowEstimator for ExactMatchingWindow {
    type Item = Edge;

    fn update(&mut self, e: &Edge) -> Result<()> {
        self.histogram.update(e)
    }

    fn estimate(&self) -> Result<f64> {
        self.histogram.query()
    }

    fn bucket_count(&self) -> usize {
        self.histogram.bucket_count()
    }

    fn footprint(&self) -> usize {
        self.histogram.footprint()
    }
}

/// A vertex cover of the active window and the bookkeeping behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverReport {
    pub vertices: HashSet<VertexId>,
    pub size: usize,
    /// Greedy matching size of `B_1`.
    pub first_value: usize,
    /// Greedy matching size of `B_2`, when `B_1` is larger than the window.
    pub second_value: Option<usize>,
}

impl CoverReport {
    /// `2 m(B_2) >= (1 - eps) m(B_1)` whenever `B_1` overshoots the window.
    pub fn carryover_holds(&self, epsilon: f64) -> bool {
        match self.second_value {
            Some(second) => 2.0 * second as f64 >= (1.0 - epsilon) * self.first_value as f64,
            None => true,
        }
    }
}

type GreedyFactory = fn() -> GreedyMatching;

/// Sliding-window vertex cover: greedy matchings in histogram buckets,
/// reporting the matched vertices of `B_1`.
pub struct VertexCoverWindow {
    spec: WindowAlgorithmSpec,
    histogram: SlidingHistogram<GreedyFactory>,
}

impl VertexCoverWindow {
    pub fn new(spec: WindowAlgorithmSpec) -> Result<Self> {
        spec.validate()?;
        if spec.kind != AlgorithmKind::VcApprox {
            return Err(Error::Config(format!("{} is not vc_approx", spec.kind)));
        }
        Ok(Self {
            spec,
            histogram: SlidingHistogram::new(
                spec.histogram_config()?,
                GreedyMatching::new as GreedyFactory,
            )?,
        })
    }

    pub fn spec(&self) -> &WindowAlgorithmSpec {
        &self.spec
    }

    pub fn histogram(&self) -> &SlidingHistogram<GreedyFactory> {
        &self.histogram
    }

    pub fn cover(&self) -> Result<CoverReport> {
        let first = self.histogram.buckets().first().ok_or(Error::Empty)?;
        let greedy = first.estimator();
        let second_value = if self.histogram.is_window_aligned() {
            None
        } else {
            self.histogram
                .buckets()
                .get(1)
                .map(|b| b.estimator().size())
        };
        Ok(CoverReport {
            vertices: greedy.cover(),
            size: 2 * greedy.size(),
            first_value: greedy.size(),
            second_value,
        })
    }
}

impl WindowEstimator for VertexCoverWindow {
    type Item = Edge;

    fn update(&mut self, e: &Edge) -> Result<()> {
        self.histogram.update(e)
    }

    /// Size of the reported cover.
    fn estimate(&self) -> Result<f64> {
        Ok(self.cover()?.size as f64)
    }

    fn bucket_count(&self) -> usize {
        self.histogram.bucket_count()
    }

    fn footprint(&self) -> usize {
        self.histogram.footprint()
    }
}

fn run_all<A: WindowEstimator<Item = Edge>>(mut alg: A, stream: &[Edge]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(stream.len());
    for e in stream {
        alg.update(e)?;
        out.push(alg.estimate()?);
    }
    Ok(out)
}

fn expect_kind(spec: &WindowAlgorithmSpec, kind: AlgorithmKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::Config(format!(
            "expected a {kind} spec, got {}",
            spec.kind
        )));
    }
    Ok(())
}

/// Matching-size estimate after every update, via E*_alpha.
pub fn mm_estimate_via_goodedges(spec: &WindowAlgorithmSpec, stream: &[Edge]) -> Result<Vec<f64>> {
    expect_kind(spec, AlgorithmKind::MmViaGoodedges)?;
    run_all(GoodEdgeWindow::new(*spec)?, stream)
}

/// Matching-size estimate after every update, treating E*_alpha as an
/// (alpha + 2)-approximation of the matching size.
pub fn mm_estimate_squared(spec: &WindowAlgorithmSpec, stream: &[Edge]) -> Result<Vec<f64>> {
    expect_kind(spec, AlgorithmKind::MmSquared)?;
    run_all(GoodEdgeWindow::new(*spec)?, stream)
}

/// Vertex-cover size estimate after every update on forest streams.
pub fn vc_estimate_forest(spec: &WindowAlgorithmSpec, stream: &[Edge]) -> Result<Vec<f64>> {
    expect_kind(spec, AlgorithmKind::VcForest)?;
    run_all(GoodEdgeWindow::new(*spec)?, stream)
}

/// Vertex cover of the active window after every update.
pub fn vc_approx(spec: &WindowAlgorithmSpec, stream: &[Edge]) -> Result<Vec<CoverReport>> {
    let mut alg = VertexCoverWindow::new(*spec)?;
    let mut out = Vec::with_capacity(stream.len());
    for e in stream {
        alg.update(e)?;
        out.push(alg.cover()?);
    }
    Ok(out)
}
