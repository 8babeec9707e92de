//! Computed-versus-predicted comparison for `θ_i`.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::cfengine::cf_of_series_with;
use crate::conjecture::{predicted_degree, Conjecture};
use crate::error::{Error, Result};
use crate::exactalg::{LaurentSeries, Polynomial, Rational};
use crate::exec::{self, Strategy};
use crate::words::{word_prefix, FamilyIndex};

/// How the measure estimate is formed; carried in every report.
pub const MEASURE_FORMULA: &str =
    "2 + max over n in [ceil(depth/2), depth-1] of (deg a_(n+1) - 1) / (deg a_1 + ... + deg a_n), predicted degrees";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMatch {
    pub index: u64,
    pub computed: Polynomial,
    pub predicted: Polynomial,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub i: u32,
    pub depth_requested: u64,
    pub depth_certified: u64,
    pub precision_used: u64,
    pub matches: Vec<QuotientMatch>,
    pub first_mismatch: Option<u64>,
    pub measure_estimate: Rational,
    pub measure_formula: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    /// Every compared index matched and the requested depth was reached.
    pub fn all_match(&self) -> bool {
        self.first_mismatch.is_none()
    }

    pub fn fully_certified(&self) -> bool {
        self.depth_certified >= self.depth_requested
    }

    pub fn match_count(&self) -> usize {
        self.matches.iter().filter(|m| m.equal).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureEstimate {
    pub i: u32,
    pub depth: u64,
    pub value: Rational,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Overrides the precision derived from the predicted degrees.
    pub precision: Option<usize>,
    pub strategy: Strategy,
}

/// `N = 2 (deg a_1 + ... + deg a_depth) + 2`, using predicted degrees.
pub fn required_precision(i: FamilyIndex, depth: u64) -> usize {
    let total: u64 = (1..=depth)
        .map(|n| predicted_degree(i, n).expect("n >= 1"))
        .sum();
    2 * total as usize + 2
}

pub fn verify_expansion(i: FamilyIndex, depth: u64) -> Result<VerificationReport> {
    verify_expansion_with(i, depth, VerifyOptions::default())
}

pub fn verify_expansion_with(i: FamilyIndex, depth: u64, opts: VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let precision = opts.precision.unwrap_or_else(|| required_precision(i, depth));
    if precision == 0 {
        return Err(Error::InvalidPrecision(0));
    }
    let word = word_prefix(i, precision);
    let series = LaurentSeries::from_word(&word.values(), precision)?;
    let expansion = cf_of_series_with(&series, opts.strategy)?;

    let compared = expansion.certified_count.min(depth as usize);
    let mut conjecture = Conjecture::new(i);
    let mut matches = Vec::with_capacity(compared);
    for (k, computed) in expansion.cf.quotients[..compared].iter().enumerate() {
        let index = k as u64 + 1;
        let predicted = conjecture.quotient(index)?;
        matches.push(QuotientMatch {
            index,
            equal: *computed == predicted,
            computed: computed.clone(),
            predicted,
        });
    }
    let first_mismatch = matches.iter().find(|m| !m.equal).map(|m| m.index);
    Ok(VerificationReport {
        i: i.get(),
        depth_requested: depth,
        depth_certified: expansion.certified_count as u64,
        precision_used: precision as u64,
        matches,
        first_mismatch,
        measure_estimate: measure_value(i, depth),
        measure_formula: MEASURE_FORMULA.to_string(),
        elapsed: start.elapsed(),
    })
}

/// Independent runs for several `(i, depth)` pairs, in input order.
pub fn verify_batch(jobs: &[(FamilyIndex, u64)], opts: VerifyOptions) -> Vec<Result<VerificationReport>> {
    // Each job runs its own Euclid sequentially; the fan-out is across jobs.
    let inner = VerifyOptions { strategy: Strategy::Sequential, ..opts };
    exec::map(opts.strategy, jobs, |&(i, depth)| verify_expansion_with(i, depth, inner))
}

/// Running estimate of the irrationality measure from the predicted degree
/// sequence.
///
/// The measure is `2 + limsup deg a_{n+1} / deg Q_n` with
/// `deg Q_n = deg a_1 + ... + deg a_n`. Every quotient has degree at least
/// one; that floor is bounded and so does not change the limsup, and
/// subtracting it removes the `1 / deg Q_n` transient. The limsup is
/// approximated by the max over the upper half of the window.
pub fn irrationality_estimate(i: FamilyIndex, depth: u64) -> Result<MeasureEstimate> {
    if depth < 3 {
        return Err(Error::DepthTooSmall { min: 3, got: depth });
    }
    Ok(MeasureEstimate {
        i: i.get(),
        depth,
        value: measure_value(i, depth),
    })
}

fn measure_value(i: FamilyIndex, depth: u64) -> Rational {
    let degrees: Vec<u64> = (1..=depth)
        .map(|n| predicted_degree(i, n).expect("n >= 1"))
        .collect();
    let mut prefix = 0u64;
    let mut best = Rational::zero();
    let lo = depth.div_ceil(2).max(1);
    for n in 1..depth {
        prefix += degrees[n as usize - 1];
        if n < lo {
            continue;
        }
        let ratio = Rational::new(degrees[n as usize] - 1, prefix).expect("positive prefix");
        if ratio > best {
            best = ratio;
        }
    }
    Rational::from(2) + best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(i: u32) -> FamilyIndex {
        FamilyIndex::new(i).unwrap()
    }

    #[test]
    fn required_precision_examples() {
        assert_eq!(required_precision(fam(1), 4), 10);
        assert_eq!(required_precision(fam(2), 3), 16);
        for i in 1..=4 {
            assert_eq!(required_precision(fam(i), 0), 2);
        }
        assert_eq!(required_precision(fam(1), 200), 402);
    }

    #[test]
    fn verify_single_quotient() {
        let r = verify_expansion(fam(1), 1).unwrap();
        assert_eq!(r.depth_certified, 1);
        assert_eq!(r.matches.len(), 1);
        assert_eq!(r.matches[0].computed.to_string(), "T + 1");
        assert!(r.all_match());
    }

    #[test]
    fn verify_i2_degrees() {
        let r = verify_expansion(fam(2), 20).unwrap();
        assert!(r.all_match() && r.fully_certified());
        let degrees: Vec<usize> = r
            .matches
            .iter()
            .map(|m| m.computed.degree().finite().unwrap())
            .collect();
        assert_eq!(&degrees[..9], &[1, 1, 5, 1, 17, 1, 5, 1, 65]);
    }

    #[test]
    fn low_precision_reports_shallow_depth() {
        let opts = VerifyOptions { precision: Some(9), ..Default::default() };
        let r = verify_expansion_with(fam(1), 10, opts).unwrap();
        assert_eq!(r.depth_certified, 4);
        assert_eq!(r.matches.len(), 4);
        assert!(r.all_match());
        assert!(!r.fully_certified());
    }

    #[test]
    fn measure_estimates() {
        for depth in 3..60 {
            assert_eq!(irrationality_estimate(fam(1), depth).unwrap().value, Rational::from(2));
        }
        let v = irrationality_estimate(fam(2), 24).unwrap().value.to_f64();
        assert!((v - 4.0).abs() <= 0.2, "{v}");
        let v = irrationality_estimate(fam(3), 12).unwrap().value.to_f64();
        assert!((v - 6.0).abs() <= 0.3, "{v}");
        assert!(irrationality_estimate(fam(2), 2).is_err());
    }

    #[test]
    fn batch_matches_individual_runs() {
        let jobs = [(fam(1), 30), (fam(2), 8), (fam(3), 4)];
        for strategy in [Strategy::Sequential, Strategy::Parallel] {
            let out = verify_batch(&jobs, VerifyOptions { strategy, precision: None });
            for ((i, depth), r) in jobs.iter().zip(out) {
                let mut r = r.unwrap();
                let mut single = verify_expansion(*i, *depth).unwrap();
                r.elapsed = Duration::ZERO;
                single.elapsed = Duration::ZERO;
                assert_eq!(r, single);
            }
        }
    }

    #[test]
    fn report_json_omits_elapsed() {
        let r = verify_expansion(fam(1), 3).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert!(v.get("elapsed").is_none());
        assert_eq!(v["first_mismatch"], serde_json::Value::Null);
        assert_eq!(v["measure_estimate"], "2");
        assert_eq!(v["matches"][1]["computed"], "1/2*T - 1/2");
    }
}
