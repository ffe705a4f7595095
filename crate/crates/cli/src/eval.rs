//! Aggregates query records and checks them against the guaranteed ratios.

use std::str::FromStr;

use anyhow::{Context, Result};
use serde::Serialize;
use slidewin_core::window::ratio_bounds;
use slidewin_core::AlgorithmKind;

use crate::record::QueryRecord;
use crate::replay::COUNT_LABEL;

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub checked: usize,
    pub max_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub violations: usize,
    pub invalid_covers: usize,
    pub carryover_failures: usize,
    pub errors: usize,
    pub max_bucket_count: usize,
    pub max_footprint: usize,
    /// First few violating records, as `t`.
    pub first_violations: Vec<u64>,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.violations == 0 && self.errors == 0
    }
}

/// `[lower, upper]` for `estimate / truth` given a record's parameters.
pub fn bounds_for(record: &QueryRecord) -> Result<(f64, f64)> {
    let kind = if record.algorithm == COUNT_LABEL {
        AlgorithmKind::Generic
    } else {
        AlgorithmKind::from_str(&record.algorithm)
            .with_context(|| format!("record at t = {}", record.t))?
    };
    Ok(ratio_bounds(kind, record.epsilon, record.alpha))
}

pub fn summarize(records: &[QueryRecord]) -> Result<Summary> {
    let mut s = Summary {
        records: records.len(),
        ..Summary::default()
    };
    let mut ratio_sum = 0.0;
    for r in records {
        let (lower, upper) = bounds_for(r)?;
        s.max_bucket_count = s.max_bucket_count.max(r.bucket_count);
        s.max_footprint = s.max_footprint.max(r.footprint);
        if r.error.is_some() {
            s.errors += 1;
        }
        let mut violated = false;
        if r.cover_valid == Some(false) {
            s.invalid_covers += 1;
            violated = true;
        }
        if r.carryover_ok == Some(false) {
            s.carryover_failures += 1;
            violated = true;
        }
        if let Some(ratio) = r.ratio {
            s.checked += 1;
            ratio_sum += ratio;
            s.max_ratio = Some(s.max_ratio.map_or(ratio, |m: f64| m.max(ratio)));
            if !(lower <= ratio && ratio <= upper) {
                violated = true;
            }
        }
        if violated {
            s.violations += 1;
            if s.first_violations.len() < 10 {
                s.first_violations.push(r.t);
            }
        }
    }
    if s.checked > 0 {
        s.mean_ratio = Some(ratio_sum / s.checked as f64);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(algorithm: &str, ratio: Option<f64>) -> QueryRecord {
        QueryRecord {
            t: 1,
            estimate: ratio,
            truth: ratio.map(|_| 1.0),
            ratio,
            bucket_count: 4,
            footprint: 20,
            algorithm: algorithm.into(),
            epsilon: 0.1,
            alpha: 1,
            w: 40,
            cover_valid: None,
            carryover_ok: None,
            error: None,
        }
    }

    #[test]
    fn ratio_above_bound_is_a_violation() {
        let s = summarize(&[
            record("vc_approx", Some(5.0)),
            record("vc_approx", Some(2.0)),
        ])
        .unwrap();
        assert_eq!(s.violations, 1);
        assert_eq!(s.max_ratio, Some(5.0));
        assert_eq!(s.mean_ratio, Some(3.5));
        assert!(!s.ok());
    }

    #[test]
    fn ratio_below_one_is_a_violation() {
        let s = summarize(&[record("mm_via_goodedges", Some(0.9))]).unwrap();
        assert_eq!(s.violations, 1);
    }

    #[test]
    fn compliant_records() {
        let mut r = record("count", Some(1.0));
        r.cover_valid = Some(true);
        let s = summarize(&[r, record("generic", None)]).unwrap();
        assert_eq!((s.violations, s.checked, s.max_bucket_count), (0, 1, 4));
        assert!(s.ok());
    }

    #[test]
    fn flags_and_errors() {
        let mut bad_cover = record("vc_approx", Some(2.0));
        bad_cover.cover_valid = Some(false);
        let mut bad_carry = record("vc_approx", None);
        bad_carry.carryover_ok = Some(false);
        let mut errored = record("generic", None);
        errored.error = Some("capacity".into());
        let s = summarize(&[bad_cover, bad_carry, errored]).unwrap();
        assert_eq!(
            (s.violations, s.invalid_covers, s.carryover_failures),
            (2, 1, 1)
        );
        assert_eq!(s.errors, 1);
        assert!(summarize(&[record("nope", None)]).is_err());
    }
}
