//! Replays a stream through one sliding-window algorithm and reports a
//! record per query.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};
use slidewin_core::oracles::{window_at, window_truth, Problem};
use slidewin_core::window::{CoverReport, ExactMatchingWindow, GoodEdgeWindow};
use slidewin_core::{
    AlgorithmKind, CountEstimator, Doubling, Edge, HistogramConfig, SlidingHistogram,
    VertexCoverWindow, WindowAlgorithmSpec, WindowEstimator,
};

use crate::record::QueryRecord;

/// Bucket estimator used by the `generic` algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenericEstimator {
    #[default]
    ExactM,
    Count,
}

impl FromStr for GenericEstimator {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-m" => Ok(GenericEstimator::ExactM),
            "count" => Ok(GenericEstimator::Count),
            _ => bail!("unknown estimator {s:?}, expected exact-m or count"),
        }
    }
}

impl fmt::Display for GenericEstimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenericEstimator::ExactM => "exact-m",
            GenericEstimator::Count => "count",
        })
    }
}

/// Label used in records for the item-count histogram.
pub const COUNT_LABEL: &str = "count";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub algorithm: AlgorithmKind,
    #[serde(default)]
    pub estimator: GenericEstimator,
    #[serde(default = "one")]
    pub alpha: usize,
    pub epsilon: f64,
    pub window: usize,
    #[serde(default = "one")]
    pub every: usize,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default)]
    pub doubling: bool,
}

fn one() -> usize {
    1
}

impl RunConfig {
    pub fn new(algorithm: AlgorithmKind, alpha: usize, epsilon: f64, window: usize) -> Self {
        Self {
            algorithm,
            estimator: GenericEstimator::ExactM,
            alpha,
            epsilon,
            window,
            every: 1,
            oracle: false,
            doubling: false,
        }
    }

    fn counts_items(&self) -> bool {
        self.algorithm == AlgorithmKind::Generic && self.estimator == GenericEstimator::Count
    }

    pub fn label(&self) -> &'static str {
        if self.counts_items() {
            COUNT_LABEL
        } else {
            self.algorithm.name()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.every == 0 {
            bail!("--every must be at least 1");
        }
        if self.estimator == GenericEstimator::Count && self.algorithm != AlgorithmKind::Generic {
            bail!("the count estimator only applies to the generic algorithm");
        }
        if self.counts_items() {
            self.count_config()?;
        } else {
            self.spec()?;
        }
        Ok(())
    }

    fn spec(&self) -> Result<WindowAlgorithmSpec> {
        Ok(WindowAlgorithmSpec::new(
            self.algorithm,
            self.alpha,
            self.epsilon,
            self.window,
        )?)
    }

    fn count_config(&self) -> Result<HistogramConfig> {
        Ok(HistogramConfig::new(
            self.epsilon,
            self.window,
            1.0,
            2.0,
            1.0,
        )?)
    }
}

trait Replay {
    fn update(&mut self, e: &Edge) -> slidewin_core::Result<()>;
    fn estimate(&self) -> slidewin_core::Result<f64>;
    fn bucket_count(&self) -> usize;
    fn footprint(&self) -> usize;
    fn cover(&self) -> Option<slidewin_core::Result<CoverReport>>;
}

struct Engine<A> {
    inner: A,
    cover: Option<fn(&A) -> slidewin_core::Result<CoverReport>>,
}

impl<A: WindowEstimator<Item = Edge>> Replay for Engine<A> {
    fn update(&mut self, e: &Edge) -> slidewin_core::Result<()> {
        self.inner.update(e)
    }

    fn estimate(&self) -> slidewin_core::Result<f64> {
        self.inner.estimate()
    }

    fn bucket_count(&self) -> usize {
        self.inner.bucket_count()
    }

    fn footprint(&self) -> usize {
        self.inner.footprint()
    }

    fn cover(&self) -> Option<slidewin_core::Result<CoverReport>> {
        self.cover.map(|f| f(&self.inner))
    }
}

fn plain<A: WindowEstimator<Item = Edge> + 'static>(inner: A) -> Box<dyn Replay> {
    Box::new(Engine { inner, cover: None })
}

fn build(config: &RunConfig) -> Result<Box<dyn Replay>> {
    config.validate()?;
    let w = config.window;
    if config.counts_items() {
        let hc = config.count_config()?;
        let make = move || {
            SlidingHistogram::new(hc, CountEstimator::<Edge>::default).expect("validated config")
        };
        return Ok(if config.doubling {
            plain(Doubling::new(w, make)?)
        } else {
            plain(make())
        });
    }
    let spec = config.spec()?;
    Ok(match (spec.kind, config.doubling) {
        (AlgorithmKind::Generic, false) => plain(ExactMatchingWindow::new(spec)?),
        (AlgorithmKind::Generic, true) => plain(Doubling::new(w, move || {
            ExactMatchingWindow::new(spec).expect("validated spec")
        })?),
        (AlgorithmKind::VcApprox, false) => Box::new(Engine {
            inner: VertexCoverWindow::new(spec)?,
            cover: Some(VertexCoverWindow::cover),
        }),
        (AlgorithmKind::VcApprox, true) => {
            let make = move || VertexCoverWindow::new(spec).expect("validated spec");
            Box::new(Engine {
                inner: Doubling::new(w, make)?,
                cover: Some(|d| d.active()?.cover()),
            })
        }
        (_, false) => plain(GoodEdgeWindow::new(spec)?),
        (_, true) => plain(Doubling::new(w, move || {
            GoodEdgeWindow::new(spec).expect("validated spec")
        })?),
    })
}

fn truth(config: &RunConfig, stream: &[Edge], t: usize) -> slidewin_core::Result<f64> {
    if config.counts_items() {
        return Ok(window_at(stream, config.window, t)?.len() as f64);
    }
    let problem = if config.algorithm.targets_vertex_cover() {
        Problem::VertexCover
    } else {
        Problem::Matching
    };
    Ok(window_truth(stream, config.window, t, problem)? as f64)
}

/// Feeds `stream` through the configured algorithm, handing each record to
/// `sink`. An estimator error is reported on its record and ends the run.
pub fn replay<S>(config: &RunConfig, stream: &[Edge], mut sink: S) -> Result<()>
where
    S: FnMut(QueryRecord) -> Result<()>,
{
    let mut engine = build(config)?;
    for (idx, e) in stream.iter().enumerate() {
        let t = idx + 1;
        let step = engine.update(e).and_then(|_| engine.estimate());
        let failed = step.is_err();
        if !failed && t % config.every != 0 {
            continue;
        }
        let mut record = QueryRecord {
            t: t as u64,
            estimate: None,
            truth: None,
            ratio: None,
            bucket_count: engine.bucket_count(),
            footprint: engine.footprint(),
            algorithm: config.label().to_string(),
            epsilon: config.epsilon,
            alpha: config.alpha,
            w: config.window,
            cover_valid: None,
            carryover_ok: None,
            error: None,
        };
        match step {
            Ok(v) => record.estimate = Some(v),
            Err(err) => {
                record.error = Some(err.to_string());
                sink(record)?;
                return Ok(());
            }
        }
        if let Some(cover) = engine.cover() {
            match cover {
                Ok(report) => {
                    let window = window_at(stream, config.window, t)?;
                    record.cover_valid = Some(window.iter().all(|e| {
                        report.vertices.contains(&e.u()) || report.vertices.contains(&e.v())
                    }));
                    if report.second_value.is_some() {
                        record.carryover_ok = Some(report.carryover_holds(config.epsilon));
                    }
                }
                Err(err) => record.error = Some(err.to_string()),
            }
        }
        if config.oracle {
            match truth(config, stream, t) {
                Ok(truth) => {
                    record.truth = Some(truth);
                    if truth > 0.0 {
                        record.ratio = record.estimate.map(|v| v / truth);
                    }
                }
                Err(err) => record.error = Some(err.to_string()),
            }
        }
        sink(record)?;
    }
    Ok(())
}

pub fn run_records(config: &RunConfig, stream: &[Edge]) -> Result<Vec<QueryRecord>> {
    let mut out = Vec::new();
    replay(config, stream, |r| {
        out.push(r);
        Ok(())
    })?;
    Ok(out)
}

/// Writes records as JSON lines and returns how many were written.
pub fn run<W: Write>(config: &RunConfig, stream: &[Edge], out: &mut W) -> Result<usize> {
    let mut written = 0;
    replay(config, stream, |r| {
        writeln!(out, "{}", r.to_line())?;
        written += 1;
        Ok(())
    })?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use slidewin_core::generate::three_paths;

    fn disjoint(k: u32) -> Vec<Edge> {
        (0..k)
            .map(|i| Edge::new(2 * i + 1, 2 * i + 2).unwrap())
            .collect()
    }

    #[test]
    fn empty_stream_has_no_records() {
        let config = RunConfig::new(AlgorithmKind::VcApprox, 1, 0.1, 5);
        assert!(run_records(&config, &[]).unwrap().is_empty());
    }

    #[test]
    fn every_thins_records() {
        let mut config = RunConfig::new(AlgorithmKind::MmViaGoodedges, 1, 0.1, 4);
        config.every = 3;
        let ts: Vec<u64> = run_records(&config, &disjoint(10))
            .unwrap()
            .iter()
            .map(|r| r.t)
            .collect();
        assert_eq!(ts, vec![3, 6, 9]);
    }

    #[test]
    fn goodedges_ratio_at_least_one() {
        let mut config = RunConfig::new(AlgorithmKind::MmViaGoodedges, 1, 0.1, 4);
        config.oracle = true;
        for r in run_records(&config, &disjoint(12)).unwrap() {
            assert!(r.ratio.unwrap() >= 1.0, "{r:?}");
        }
    }

    #[test]
    fn vc_approx_on_three_paths() {
        let mut config = RunConfig::new(AlgorithmKind::VcApprox, 1, 0.1, 40);
        config.oracle = true;
        let stream = three_paths(20).unwrap().stream;
        let records = run_records(&config, &stream).unwrap();
        assert_eq!(records.len(), 60);
        for r in records {
            assert_eq!(r.cover_valid, Some(true));
            assert!(r.ratio.unwrap() <= 4.8, "{r:?}");
        }
    }

    #[test]
    fn doubling_count_matches_window_length() {
        let mut config = RunConfig::new(AlgorithmKind::Generic, 1, 0.5, 16);
        config.estimator = GenericEstimator::Count;
        config.oracle = true;
        config.doubling = true;
        let records = run_records(&config, &disjoint(80)).unwrap();
        assert_eq!(records.len(), 80);
        assert!(records.iter().all(|r| r.algorithm == COUNT_LABEL));
        assert_eq!(records[3].truth, Some(4.0));
        assert_eq!(records[79].truth, Some(16.0));
    }

    #[test]
    fn invalid_configs() {
        let mut c = RunConfig::new(AlgorithmKind::VcApprox, 1, 0.1, 5);
        c.every = 0;
        assert!(c.validate().is_err());
        c.every = 1;
        c.estimator = GenericEstimator::Count;
        assert!(c.validate().is_err());
        assert!(RunConfig::new(AlgorithmKind::VcForest, 2, 0.1, 5)
            .validate()
            .is_err());
        assert!(RunConfig::new(AlgorithmKind::Generic, 1, 0.5, 5)
            .validate()
            .is_err());
    }
}
