//! Parallel nonnegativity sweep of `m_M` over a set of matroids.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::RecordCache;
use crate::error::{Error, Result};
use crate::matroid::{CanonicalKey, Matroid};
use crate::memo::Engine;
use crate::microlocal::eu_closed;
use crate::record::{InvariantRecord, InvariantSet};

/// Which notion of "has a Boolean summand" a mismatch refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Reading {
    /// `M` itself has a coloop.
    Coloop,
    /// The simplification of `M` has a coloop.
    SimplificationColoop,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Mismatch {
    pub key: CanonicalKey,
    pub reading: Reading,
    pub m_is_zero: bool,
    pub has_summand: bool,
}

/// `Eu` of a rank-two uniform matroid set against the two candidate closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RankTwoUniformCheck {
    pub n: usize,
    pub eu: String,
    pub equals_three_minus_n: bool,
    pub equals_two_minus_n: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub total: usize,
    pub min_m: Option<String>,
    pub min_m_witness: Option<CanonicalKey>,
    pub zeros: Vec<CanonicalKey>,
    pub violations: Vec<CanonicalKey>,
    pub interpretation_mismatches: Vec<Mismatch>,
    pub rank_two_uniform: Vec<RankTwoUniformCheck>,
    pub wall_time_ms: u128,
}

impl SweepReport {
    /// No `m < 0` was found.
    pub fn held(&self) -> bool {
        self.violations.is_empty()
    }

    /// Zeros not explained by the given reading.
    pub fn unexplained_zeros(&self, reading: Reading) -> Vec<&CanonicalKey> {
        self.interpretation_mismatches
            .iter()
            .filter(|x| x.reading == reading && x.m_is_zero)
            .map(|x| &x.key)
            .collect()
    }
}

pub struct SweepOutput {
    /// One record per isomorphism class, sorted by canonical key.
    pub records: Vec<InvariantRecord>,
    pub report: SweepReport,
}

impl SweepOutput {
    pub fn json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| r.to_json_line() + "\n")
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub jobs: usize,
    pub which: InvariantSet,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            jobs: 1,
            which: InvariantSet::only(&[crate::record::Invariant::M]),
        }
    }
}

/// Computes records for every matroid (in parallel), deduplicates isomorphic inputs and
/// reduces the results in canonical-key order. Failures carry the input index.
pub fn run_sweep(
    matroids: &[Matroid],
    opts: &SweepOptions,
    cache: Option<&RecordCache>,
) -> Result<SweepOutput> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let engine = Engine::new();
    let computed: Vec<std::result::Result<InvariantRecord, (usize, Error)>> = pool.install(|| {
        matroids
            .par_iter()
            .enumerate()
            .map(|(i, m)| compute_one(&engine, m, &opts.which, cache).map_err(|e| (i, e)))
            .collect()
    });
    let mut by_key: BTreeMap<CanonicalKey, InvariantRecord> = BTreeMap::new();
    for item in computed {
        let record = item.map_err(|(i, e)| e.at_input(i))?;
        by_key.entry(record.key.clone()).or_insert(record);
    }
    let records: Vec<InvariantRecord> = by_key.into_values().collect();
    let mut report = summarize(&records)?;
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(SweepOutput { records, report })
}

fn compute_one(
    engine: &Engine,
    m: &Matroid,
    which: &InvariantSet,
    cache: Option<&RecordCache>,
) -> Result<InvariantRecord> {
    let key = crate::matroid::canonical_key(m);
    if let Some(hit) = cache.and_then(|c| c.get(&key)) {
        if hit.m.is_some() {
            return Ok(hit);
        }
    }
    // records describe the class representative so output depends only on the key
    let rep = key.to_matroid();
    let mut which = which.clone();
    which.insert(crate::record::Invariant::M);
    let record = InvariantRecord::compute(engine, &rep, &which)?;
    if let Some(c) = cache {
        c.put(&record)?;
    }
    Ok(record)
}

fn summarize(records: &[InvariantRecord]) -> Result<SweepReport> {
    let mut report = SweepReport {
        total: records.len(),
        min_m: None,
        min_m_witness: None,
        zeros: Vec::new(),
        violations: Vec::new(),
        interpretation_mismatches: Vec::new(),
        rank_two_uniform: Vec::new(),
        wall_time_ms: 0,
    };
    let mut min: Option<BigInt> = None;
    for r in records {
        let m = r.m.as_ref().expect("sweep records carry m");
        if min.as_ref().is_none_or(|best| m < best) {
            min = Some(m.clone());
            report.min_m_witness = Some(r.key.clone());
        }
        if m.is_zero() {
            report.zeros.push(r.key.clone());
        }
        if m.is_negative() {
            report.violations.push(r.key.clone());
        }
        for (reading, has_summand) in [
            (Reading::Coloop, r.flags.has_coloop),
            (
                Reading::SimplificationColoop,
                r.flags.simplification_has_coloop,
            ),
        ] {
            if m.is_zero() != has_summand {
                report.interpretation_mismatches.push(Mismatch {
                    key: r.key.clone(),
                    reading,
                    m_is_zero: m.is_zero(),
                    has_summand,
                });
            }
        }
        let rep = r.key.to_matroid();
        if rep.rank() == 2
            && rep.n() >= 2
            && rep.bases().len() == crate::matroid::binomial(rep.n(), 2)
        {
            let eu = eu_closed(&rep)?;
            let n = BigInt::from(rep.n());
            report.rank_two_uniform.push(RankTwoUniformCheck {
                n: rep.n(),
                equals_three_minus_n: eu == BigInt::from(3) - &n,
                equals_two_minus_n: eu == BigInt::from(2) - &n,
                eu: eu.to_string(),
            });
        }
    }
    report.min_m = min.map(|v| v.to_string());
    Ok(report)
}
