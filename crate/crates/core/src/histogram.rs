//! Almost-smooth histogram over pluggable insertion-only estimators.
//!
//! A [`SlidingHistogram`] keeps buckets `B_1, ..., B_k`, each a suffix of the
//! stream with its own estimator instance, such that
//! `B_1 ⊇ W ⊋ B_2 ⊋ ... ⊋ B_k` where `W` is the window of the last `w`
//! items. After every update the value of `B_{i+2}` is at most `(1 - eps)`
//! times the value of `B_i`, so the number of buckets is logarithmic in the
//! largest value.
//!
//! Queries return the value of `B_1` when it is exactly the window and a
//! scaled value of `B_2` otherwise, see [`HistogramConfig::query_multiplier`].

use std::collections::VecDeque;
use std::marker::PhantomData;

use crate::error::{Error, Result};

/// An insertion-only streaming estimator that can be plugged into a
/// [`SlidingHistogram`].
///
/// `value` must be deterministic in the ingested sequence and never negative.
pub trait Estimator {
    type Item;

    fn ingest(&mut self, item: &Self::Item) -> Result<()>;

    fn value(&self) -> f64;

    /// Number of stored atoms (edges, vertices, counters), used as a memory
    /// proxy.
    fn footprint(&self) -> usize;
}

/// Creates fresh estimator instances, one per bucket.
pub trait EstimatorFactory {
    type Estimator: Estimator;

    fn create(&self) -> Self::Estimator;
}

impl<E, F> EstimatorFactory for F
where
    E: Estimator,
    F: Fn() -> E,
{
    type Estimator = E;

    fn create(&self) -> E {
        self()
    }
}

/// Parameters of a histogram.
///
/// `c` is the left-monotonicity constant, `d` the almost-smoothness constant
/// and `approx` the approximation factor of the plugged estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramConfig {
    pub epsilon: f64,
    pub window: usize,
    pub c: f64,
    pub d: f64,
    pub approx: f64,
    /// Failure probability budget. Only meaningful for randomized
    /// estimators, which this crate does not ship; validated and carried.
    pub delta: Option<f64>,
}

impl HistogramConfig {
    pub fn new(epsilon: f64, window: usize, c: f64, d: f64, approx: f64) -> Result<Self> {
        let config = Self {
            epsilon,
            window,
            c,
            d,
            approx,
            delta: None,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        self.delta = Some(delta);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon <= 0.5) {
            return Err(Error::Config(format!(
                "epsilon must lie in (0, 1/2], got {}",
                self.epsilon
            )));
        }
        if self.window == 0 {
            return Err(Error::Config("window must be at least 1".into()));
        }
        for (name, value) in [("c", self.c), ("d", self.d), ("C", self.approx)] {
            if !(value >= 1.0 && value.is_finite()) {
                return Err(Error::Config(format!("{name} must be >= 1, got {value}")));
            }
        }
        if let Some(delta) = self.delta {
            if !(delta > 0.0 && delta < 0.5) {
                return Err(Error::Config(format!(
                    "delta must lie in (0, 1/2), got {delta}"
                )));
            }
        }
        Ok(())
    }

    /// `d * c * C * (1 + eps) / (1 - eps)^2`, applied to `B_2` when `B_1` is
    /// strictly larger than the window.
    pub fn query_multiplier(&self) -> f64 {
        let eps = self.epsilon;
        self.d * self.c * self.approx * (1.0 + eps) / ((1.0 - eps) * (1.0 - eps))
    }
}

/// One stream suffix and the estimator that has seen exactly that suffix.
#[derive(Debug, Clone)]
pub struct Bucket<E> {
    start: u64,
    estimator: E,
    value: f64,
}

impl<E> Bucket<E> {
    /// 1-based index of the first item in this suffix.
    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn estimator(&self) -> &E {
        &self.estimator
    }

    /// Estimator value cached after the latest update.
    pub fn value(&self) -> f64 {
        self.value
    }
}

/// A sliding-window algorithm: ingest items one by one, answer queries on
/// the last `w` of them.
pub trait WindowEstimator {
    type Item;

    fn update(&mut self, item: &Self::Item) -> Result<()>;

    fn estimate(&self) -> Result<f64>;

    fn bucket_count(&self) -> usize;

    fn footprint(&self) -> usize;
}

pub struct SlidingHistogram<F: EstimatorFactory> {
    config: HistogramConfig,
    factory: F,
    buckets: Vec<Bucket<F::Estimator>>,
    time: u64,
}

impl<F: EstimatorFactory> SlidingHistogram<F> {
    pub fn new(config: HistogramConfig, factory: F) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config,
            factory,
            buckets: Vec::new(),
            time: 0,
        })
    }

    pub fn config(&self) -> &HistogramConfig {
        &self.config
    }

    /// Number of items processed so far.
    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn buckets(&self) -> &[Bucket<F::Estimator>] {
        &self.buckets
    }

    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    /// Estimator footprints plus one start counter per bucket.
    pub fn footprint(&self) -> usize {
        self.buckets
            .iter()
            .map(|b| b.estimator.footprint() + 1)
            .sum()
    }

    /// 1-based start of the active window.
    pub fn window_start(&self) -> u64 {
        window_start(self.time, self.config.window)
    }

    pub fn update(&mut self, item: &<F::Estimator as Estimator>::Item) -> Result<()> {
        self.time += 1;

        let mut fresh = self.factory.create();
        fresh.ingest(item)?;
        for bucket in &mut self.buckets {
            bucket.estimator.ingest(item)?;
            bucket.value = bucket.estimator.value();
        }
        let value = fresh.value();
        self.buckets.push(Bucket {
            start: self.time,
            estimator: fresh,
            value,
        });

        self.merge_sweep();

        if self.buckets.len() >= 2 && self.buckets[1].start <= self.window_start_unclamped() {
            self.buckets.remove(0);
        }
        Ok(())
    }

    // For each i, the largest j >= i with value(B_j) > (1 - eps) * value(B_i)
    // becomes the new right neighbour of B_i. After compaction that neighbour
    // sits at i + 1, so the sweep always advances by one position.
    fn merge_sweep(&mut self) {
        let keep = 1.0 - self.config.epsilon;
        let mut i = 0;
        while i + 2 < self.buckets.len() {
            let threshold = keep * self.buckets[i].value;
            let j = (i + 1..self.buckets.len())
                .rev()
                .find(|&j| self.buckets[j].value > threshold)
                .unwrap_or(i);
            if j > i + 1 {
                self.buckets.drain(i + 1..j);
            }
            i += 1;
        }
    }

    // t - w + 1 without clamping; may be <= 0 during warm-up.
    fn window_start_unclamped(&self) -> u64 {
        (self.time + 1).saturating_sub(self.config.window as u64)
    }

    /// True when `B_1` coincides with the active window (or with the whole
    /// stream while it is shorter than `w`).
    pub fn is_window_aligned(&self) -> bool {
        self.buckets
            .first()
            .is_some_and(|b| b.start == self.window_start())
    }

    pub fn query(&self) -> Result<f64> {
        let first = self.buckets.first().ok_or(Error::Empty)?;
        if first.start == self.window_start() {
            return Ok(first.value);
        }
        match self.buckets.get(1) {
            Some(second) => Ok(self.config.query_multiplier() * second.value),
            None => Ok(first.value),
        }
    }

    /// Checks the ordering, window-containment and geometric-decay
    /// invariants, returning a description of the first violation.
    pub fn verify_invariants(&self) -> std::result::Result<(), String> {
        if self.time == 0 {
            return if self.buckets.is_empty() {
                Ok(())
            } else {
                Err("buckets exist before any item".into())
            };
        }
        let Some(first) = self.buckets.first() else {
            return Err("no buckets after an update".into());
        };
        if first.start > self.window_start() {
            return Err(format!(
                "B_1 starts at {} after the window start {}",
                first.start,
                self.window_start()
            ));
        }
        for pair in self.buckets.windows(2) {
            if pair[0].start >= pair[1].start {
                return Err(format!(
                    "bucket starts not increasing: {} then {}",
                    pair[0].start, pair[1].start
                ));
            }
        }
        if let Some(second) = self.buckets.get(1) {
            if second.start <= self.window_start_unclamped() {
                return Err(format!(
                    "B_2 starts at {} inside the window start {}",
                    second.start,
                    self.window_start_unclamped()
                ));
            }
        }
        let keep = 1.0 - self.config.epsilon;
        for (i, triple) in self.buckets.windows(3).enumerate() {
            if triple[0].value > 0.0 && triple[2].value > keep * triple[0].value {
                return Err(format!(
                    "decay violated at position {}: {} vs {}",
                    i + 1,
                    triple[2].value,
                    triple[0].value
                ));
            }
        }
        for bucket in &self.buckets {
            if bucket.value.is_nan() || bucket.value < 0.0 {
                return Err(format!("negative value {}", bucket.value));
            }
        }
        Ok(())
    }
}

impl<F: EstimatorFactory> WindowEstimator for SlidingHistogram<F> {
    type Item = <F::Estimator as Estimator>::Item;

    fn update(&mut self, item: &Self::Item) -> Result<()> {
        SlidingHistogram::update(self, item)
    }

    fn estimate(&self) -> Result<f64> {
        self.query()
    }

    fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    fn footprint(&self) -> usize {
        SlidingHistogram::footprint(self)
    }
}

pub(crate) fn window_start(time: u64, window: usize) -> u64 {
    (time + 1).saturating_sub(window as u64).max(1)
}

/// Counts ingested items. Exact for the window length; handy for exercising
/// the bucket machinery.
#[derive(Debug, Clone)]
pub struct CountEstimator<T> {
    count: u64,
    _item: PhantomData<fn(&T)>,
}

impl<T> Default for CountEstimator<T> {
    fn default() -> Self {
        Self {
            count: 0,
            _item: PhantomData,
        }
    }
}

impl<T> Estimator for CountEstimator<T> {
    type Item = T;

    fn ingest(&mut self, _item: &T) -> Result<()> {
        self.count += 1;
        Ok(())
    }

    fn value(&self) -> f64 {
        self.count as f64
    }

    fn footprint(&self) -> usize {
        1
    }
}

struct Instance<A> {
    start: u64,
    ingested: usize,
    inner: A,
}

/// Restarts the inner algorithm every `w` items and retires each instance
/// after `2w` items, so no instance ever depends on more than the last `2w`
/// items. At most two instances are alive at any time.
pub struct Doubling<A, G> {
    window: usize,
    factory: G,
    instances: VecDeque<Instance<A>>,
    time: u64,
}

impl<A, G> Doubling<A, G>
where
    A: WindowEstimator,
    G: Fn() -> A,
{
    pub fn new(window: usize, factory: G) -> Result<Self> {
        if window == 0 {
            return Err(Error::Config("window must be at least 1".into()));
        }
        Ok(Self {
            window,
            factory,
            instances: VecDeque::with_capacity(2),
            time: 0,
        })
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn live_instances(&self) -> usize {
        self.instances.len()
    }

    /// Start positions of the live instances, oldest first.
    pub fn instance_starts(&self) -> Vec<u64> {
        self.instances.iter().map(|i| i.start).collect()
    }

    /// The instance queries are routed to: the youngest live instance whose
    /// suffix contains the whole active window.
    pub fn active(&self) -> Result<&A> {
        let limit = window_start(self.time, self.window);
        self.instances
            .iter()
            .rev()
            .find(|i| i.start <= limit && i.ingested > 0)
            .map(|i| &i.inner)
            .ok_or(Error::Empty)
    }

    pub fn active_start(&self) -> Option<u64> {
        let limit = window_start(self.time, self.window);
        self.instances
            .iter()
            .rev()
            .find(|i| i.start <= limit && i.ingested > 0)
            .map(|i| i.start)
    }
}

impl<A, G> WindowEstimator for Doubling<A, G>
where
    A: WindowEstimator,
    G: Fn() -> A,
{
    type Item = A::Item;

    fn update(&mut self, item: &A::Item) -> Result<()> {
        let lifetime = 2 * self.window;
        while self
            .instances
            .front()
            .is_some_and(|i| i.ingested >= lifetime)
        {
            self.instances.pop_front();
        }
        if self.time.is_multiple_of(self.window as u64) {
            self.instances.push_back(Instance {
                start: self.time + 1,
                ingested: 0,
                inner: (self.factory)(),
            });
        }
        self.time += 1;
        for instance in &mut self.instances {
            instance.inner.update(item)?;
            instance.ingested += 1;
        }
        Ok(())
    }

    fn estimate(&self) -> Result<f64> {
        self.active()?.estimate()
    }

    fn bucket_count(&self) -> usize {
        self.instances.iter().map(|i| i.inner.bucket_count()).sum()
    }

    fn footprint(&self) -> usize {
        self.instances.iter().map(|i| i.inner.footprint() + 1).sum()
    }
}
