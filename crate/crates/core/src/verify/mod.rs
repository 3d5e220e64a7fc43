//! Executable suites, one per statement, run over a ball.
//!
//! Every suite enumerates the configurations its statement quantifies over
//! that fit inside the ball, counts the ones it could decide (`checked`) and
//! the ones it had to leave out because some element or product falls
//! outside the ball or the pair budget (`skipped`), and records every
//! violation with enough data to replay it. Nothing is extrapolated past the
//! ball.

mod context;
mod lowest;
mod structure;
mod words;


use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub use context::{Analysis, Options};

use crate::error::{Error, Result};

/// Theorem suites must have no violations; probes only report observations
/// and pass when those are consistent with the expected pattern so far.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SuiteClass {
    Theorem,
    Probe,
}

/// Instance description echoed into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub gens: Vec<String>,
    pub matrix_hash: String,
    pub radius: usize,
    pub pair_budget: usize,
    pub margin: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub class: SuiteClass,
    pub params: Params,
    pub checked: usize,
    pub violations: usize,
    pub skipped: usize,
    /// Configurations meeting every hypothesis, for suites whose hypotheses
    /// are rarely met; a pass with zero instances is vacuous.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis_instances: Option<usize>,
    /// First violations in enumeration order, at most [`MAX_REPORTED`].
    pub witnesses: Vec<Value>,
    pub notes: Vec<String>,
    /// Wall time; zero in deterministic mode.
    pub ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

pub const MAX_REPORTED: usize = 20;

/// Suite ids in catalog order.
pub const SUITES: &[&str] = &[
    "F_IDENTITIES",
    "DESCENT_PARABOLIC",
    "WORD_LEMMA_2_2",
    "WORD_LEMMA_2_3",
    "WORD_LEMMA_2_4",
    "LENGTH_LEMMA_2_5",
    "DEG_LEMMA_2_7",
    "DEG_LEMMA_2_8",
    "BOUND_THM_2_1",
    "LOWEST_THM_1_5",
    "PROP_3_1_SUITE",
    "PROP_3_2_PROBE",
    "CELL_COUNT_4_1",
    "CELL_COUNT_4_5",
    "MU_LEMMA_4_3",
    "SECTION_5_PROBES",
];

/// Maps the ids of statements checked inside a combined suite to that suite.
pub fn resolve(id: &str) -> &str {
    match id {
        "COR_1_6" => "LOWEST_THM_1_5",
        "COR_2_6" => "LENGTH_LEMMA_2_5",
        "COR_4_4" => "MU_LEMMA_4_3",
        "PROP_3_1" => "PROP_3_1_SUITE",
        other => other,
    }
}

pub fn suite_class(id: &str) -> Option<SuiteClass> {
    match id {
        "PROP_3_2_PROBE" | "SECTION_5_PROBES" => Some(SuiteClass::Probe),
        id if SUITES.contains(&id) => Some(SuiteClass::Theorem),
        _ => None,
    }
}

/// Counters shared by every suite.
#[derive(Default)]
pub(crate) struct Tally {
    pub checked: usize,
    pub violations: usize,
    pub skipped: usize,
    pub hypothesis_instances: Option<usize>,
    pub witnesses: Vec<Value>,
    pub notes: Vec<String>,
}

impl Tally {
    /// For suites that report how many configurations met the hypotheses.
    pub fn with_instances() -> Self {
        Tally { hypothesis_instances: Some(0), ..Default::default() }
    }

    /// Records one decided case; `witness` is only built on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.violate(witness);
        }
    }

    pub fn violate(&mut self, witness: impl FnOnce() -> Value) {
        self.violations += 1;
        if self.witnesses.len() < MAX_REPORTED {
            self.witnesses.push(witness());
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn instance(&mut self) {
        *self.hypothesis_instances.get_or_insert(0) += 1;
    }
}

/// Runs one suite against the analysis, building whatever artifacts it needs.
pub fn run_suite(analysis: &Analysis, id: &str) -> Result<SuiteReport> {
    let id = resolve(id);
    let class = suite_class(id).ok_or_else(|| Error::UnknownSuite(id.to_string()))?;
    let start = Instant::now();
    let tally = match id {
        "F_IDENTITIES" => structure::f_identities(analysis)?,
        "DESCENT_PARABOLIC" => words::descent_parabolic(analysis)?,
        "WORD_LEMMA_2_2" => words::word_lemma_2_2(analysis),
        "WORD_LEMMA_2_3" => words::word_lemma_2_3(analysis)?,
        "WORD_LEMMA_2_4" => words::word_lemma_2_4(analysis),
        "LENGTH_LEMMA_2_5" => words::length_lemma_2_5(analysis),
        "DEG_LEMMA_2_7" => structure::deg_lemma_2_7(analysis)?,
        "DEG_LEMMA_2_8" => structure::deg_lemma_2_8(analysis)?,
        "BOUND_THM_2_1" => structure::bound_thm_2_1(analysis),
        "LOWEST_THM_1_5" => lowest::lowest_thm_1_5(analysis)?,
        "PROP_3_1_SUITE" => lowest::prop_3_1(analysis)?,
        "PROP_3_2_PROBE" => lowest::prop_3_2_probe(analysis)?,
        "CELL_COUNT_4_1" => structure::cell_count(analysis, false)?,
        "CELL_COUNT_4_5" => structure::cell_count(analysis, true)?,
        "MU_LEMMA_4_3" => structure::mu_lemma_4_3(analysis)?,
        "SECTION_5_PROBES" => structure::section_5_probes(analysis)?,
        _ => unreachable!("catalog and dispatch agree"),
    };
    let ms = if analysis.options().deterministic {
        0
    } else {
        start.elapsed().as_millis() as u64
    };
    Ok(SuiteReport {
        suite: id.to_string(),
        class,
        params: analysis.params(),
        checked: tally.checked,
        violations: tally.violations,
        skipped: tally.skipped,
        hypothesis_instances: tally.hypothesis_instances,
        witnesses: tally.witnesses,
        notes: tally.notes,
        ms,
    })
}

/// Runs the whole catalog in order.
pub fn run_all(analysis: &Analysis) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|id| run_suite(analysis, id)).collect()
}
