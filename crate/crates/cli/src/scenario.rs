//! Generator specs, scenario manifests and the parallel self-test.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use slidewin_core::generate::{alpha_union, forest, gnp, three_paths};
use slidewin_core::{AlgorithmKind, VertexId};

use crate::eval::{summarize, Summary};
use crate::replay::{run_records, GenericEstimator, RunConfig};
use crate::stream_file::StreamFile;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    ThreePaths {
        copies: usize,
    },
    Forest {
        n: usize,
        edges: usize,
        seed: u64,
    },
    AlphaUnion {
        n: usize,
        alpha: usize,
        edges: usize,
        seed: u64,
    },
    Gnp {
        n: usize,
        p: f64,
        seed: u64,
    },
}

impl GenSpec {
    pub fn generate(&self) -> Result<StreamFile> {
        let (n, edges) = match *self {
            GenSpec::ThreePaths { copies } => (4 * copies, three_paths(copies)?.stream),
            GenSpec::Forest { n, edges, seed } => (n, forest(n, edges, seed)?),
            GenSpec::AlphaUnion {
                n,
                alpha,
                edges,
                seed,
            } => (n, alpha_union(n, alpha, edges, seed)?),
            GenSpec::Gnp { n, p, seed } => (n, gnp(n, p, seed)?),
        };
        StreamFile::new(Some(n as VertexId), edges)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Stream file, relative to the manifest.
    Stream(PathBuf),
    Gen(GenSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub source: Source,
    pub run: RunConfig,
}

impl Scenario {
    pub fn load_stream(&self, base: &Path) -> Result<StreamFile> {
        match &self.source {
            Source::Stream(path) => StreamFile::read(&base.join(path)),
            Source::Gen(spec) => spec.generate(),
        }
    }
}

pub fn read_manifest(path: &Path) -> Result<Vec<Scenario>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn scenario(
    name: &str,
    source: GenSpec,
    kind: AlgorithmKind,
    alpha: usize,
    eps: f64,
    w: usize,
) -> Scenario {
    Scenario {
        name: name.into(),
        source: Source::Gen(source),
        run: RunConfig::new(kind, alpha, eps, w),
    }
}

/// Scenarios run by `selftest` when no manifest is given.
pub fn builtin_scenarios() -> Vec<Scenario> {
    use AlgorithmKind::*;
    let forest40 = GenSpec::Forest {
        n: 40,
        edges: 39,
        seed: 1,
    };
    let mut out = vec![
        scenario(
            "three-paths vc_approx",
            GenSpec::ThreePaths { copies: 20 },
            VcApprox,
            1,
            0.1,
            40,
        ),
        scenario(
            "three-paths goodedges",
            GenSpec::ThreePaths { copies: 20 },
            MmViaGoodedges,
            1,
            0.1,
            40,
        ),
        scenario(
            "forest goodedges",
            forest40.clone(),
            MmViaGoodedges,
            1,
            0.1,
            100,
        ),
        scenario(
            "forest vc_forest",
            GenSpec::Forest {
                n: 80,
                edges: 79,
                seed: 2,
            },
            VcForest,
            1,
            0.05,
            30,
        ),
        scenario("forest squared", forest40, MmSquared, 1, 0.1, 15),
        scenario(
            "arboricity-2 goodedges",
            GenSpec::AlphaUnion {
                n: 60,
                alpha: 2,
                edges: 90,
                seed: 3,
            },
            MmViaGoodedges,
            2,
            0.25,
            40,
        ),
        scenario(
            "arboricity-3 generic",
            GenSpec::AlphaUnion {
                n: 40,
                alpha: 3,
                edges: 90,
                seed: 4,
            },
            Generic,
            1,
            0.1,
            35,
        ),
        scenario(
            "gnp vc_approx",
            GenSpec::Gnp {
                n: 50,
                p: 0.06,
                seed: 5,
            },
            VcApprox,
            1,
            0.05,
            120,
        ),
    ];
    let mut doubled = scenario(
        "gnp vc_approx doubling",
        GenSpec::Gnp {
            n: 30,
            p: 0.1,
            seed: 6,
        },
        VcApprox,
        1,
        0.1,
        20,
    );
    doubled.run.doubling = true;
    out.push(doubled);
    let mut count = scenario(
        "count",
        GenSpec::ThreePaths { copies: 30 },
        Generic,
        1,
        0.5,
        16,
    );
    count.run.estimator = GenericEstimator::Count;
    out.push(count);
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioOutcome {
    pub name: String,
    pub summary: Summary,
}

/// Runs every scenario with the oracle enabled, in parallel.
pub fn selftest(scenarios: &[Scenario], base: &Path) -> Result<Vec<ScenarioOutcome>> {
    scenarios
        .par_iter()
        .map(|s| {
            let stream = s.load_stream(base)?;
            let mut config = s.run;
            config.oracle = true;
            let records = run_records(&config, &stream.edges)
                .with_context(|| format!("scenario {}", s.name))?;
            Ok(ScenarioOutcome {
                name: s.name.clone(),
                summary: summarize(&records)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_scenarios_hold() {
        for outcome in selftest(&builtin_scenarios(), Path::new(".")).unwrap() {
            assert!(outcome.summary.ok(), "{outcome:?}");
            assert!(outcome.summary.checked > 0, "{}", outcome.name);
        }
    }

    #[test]
    fn count_scenario_bucket_bound() {
        let count: Vec<Scenario> = builtin_scenarios()
            .into_iter()
            .filter(|s| s.name == "count")
            .collect();
        let outcome = &selftest(&count, Path::new(".")).unwrap()[0];
        assert!(outcome.summary.max_bucket_count <= 12);
    }

    #[test]
    fn gen_spec_json() {
        let spec: GenSpec = serde_json::from_str(
            r#"{"kind": "alpha_union", "n": 20, "alpha": 3, "edges": 50, "seed": 4}"#,
        )
        .unwrap();
        let s = spec.generate().unwrap();
        assert_eq!((s.n, s.edges.len()), (20, 50));
        assert_eq!(spec.generate().unwrap(), s);
    }
}
