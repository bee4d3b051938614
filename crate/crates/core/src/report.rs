//! Per-identity verification records and the parallel check runner.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::observable::Observable;

/// Residual previews stop after this many rendered terms.
pub const PREVIEW_TERMS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

/// Outcome of one identity check. `Pass` iff the residual has no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub check_name: String,
    pub index_tuple: Vec<usize>,
    pub status: CheckStatus,
    pub residual_term_count: usize,
    pub residual_preview: Vec<String>,
    pub elapsed_millis: u64,
}

impl RelationReport {
    pub fn from_residual(name: impl Into<String>, indices: Vec<usize>, residual: Result<Observable>, elapsed_millis: u64) -> Self {
        let check_name = name.into();
        match residual {
            Ok(r) => {
                let count = r.term_count();
                Self {
                    check_name,
                    index_tuple: indices,
                    status: if count == 0 { CheckStatus::Pass } else { CheckStatus::Fail },
                    residual_term_count: count,
                    residual_preview: r.render_terms(PREVIEW_TERMS),
                    elapsed_millis,
                }
            }
            Err(e) => Self {
                check_name,
                index_tuple: indices,
                status: CheckStatus::Error,
                residual_term_count: 0,
                residual_preview: vec![e.to_string()],
                elapsed_millis,
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    fn sort_key(&self) -> (&str, &[usize]) {
        (&self.check_name, &self.index_tuple)
    }
}

/// Sort reports by check name, then index tuple.
pub fn sort_reports(reports: &mut [RelationReport]) {
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

type Eval<'a> = Box<dyn Fn() -> Result<Observable> + Send + Sync + 'a>;

struct Check<'a> {
    name: String,
    indices: Vec<usize>,
    eval: Eval<'a>,
}

/// A batch of residual computations, evaluated in parallel on the current
/// rayon pool and reported in deterministic order.
#[derive(Default)]
pub struct CheckSet<'a> {
    checks: Vec<Check<'a>>,
}

impl<'a> CheckSet<'a> {
    pub fn new() -> Self {
        Self { checks: Vec::new() }
    }

    /// Register a check whose closure returns the residual `lhs - rhs`.
    pub fn push(&mut self, name: impl Into<String>, indices: Vec<usize>, eval: impl Fn() -> Result<Observable> + Send + Sync + 'a) {
        self.checks.push(Check {
            name: name.into(),
            indices,
            eval: Box::new(eval),
        });
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn run(self) -> Vec<RelationReport> {
        let mut reports: Vec<RelationReport> = self
            .checks
            .into_par_iter()
            .map(|check| {
                let start = Instant::now();
                let residual = (check.eval)();
                let elapsed = start.elapsed().as_millis() as u64;
                RelationReport::from_residual(check.name, check.indices, residual, elapsed)
            })
            .collect();
        sort_reports(&mut reports);
        reports
    }
}
