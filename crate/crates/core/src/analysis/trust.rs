//! Observer-relative trust.
//!
//! Each assessment moves the assessor's trust in the promiser of the
//! assessed promise: a kept promise closes a fraction `alpha` of the gap to
//! 1, a broken one removes a fraction `beta` of the current value, and an
//! indeterminate verdict leaves it alone. Pairs start at `initial`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::model::{AgentId, PromiseGraph, Verdict};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrustParams {
    pub initial: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl Default for TrustParams {
    fn default() -> Self {
        TrustParams {
            initial: 0.5,
            alpha: 0.2,
            beta: 0.6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("trust parameter `{name}` must lie in [0, 1], got {value}")]
pub struct TrustParamError {
    pub name: &'static str,
    pub value: f64,
}

impl TrustParams {
    pub fn new(initial: f64, alpha: f64, beta: f64) -> Result<Self, TrustParamError> {
        let params = TrustParams {
            initial,
            alpha,
            beta,
        };
        params.check()?;
        Ok(params)
    }

    pub fn check(&self) -> Result<(), TrustParamError> {
        for (name, value) in [
            ("initial", self.initial),
            ("alpha", self.alpha),
            ("beta", self.beta),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(TrustParamError { name, value });
            }
        }
        Ok(())
    }

    /// Applies one verdict to a trust value.
    pub fn update(&self, trust: f64, verdict: Verdict) -> f64 {
        let next = match verdict {
            Verdict::Kept => trust + self.alpha * (1.0 - trust),
            Verdict::NotKept => trust * (1.0 - self.beta),
            Verdict::Indeterminate => trust,
        };
        next.clamp(0.0, 1.0)
    }
}

/// Trust per (assessor, subject). Only pairs with at least one assessment
/// are stored; [`TrustTable::get`] answers `initial` for the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct TrustTable {
    pub entries: BTreeMap<(AgentId, AgentId), f64>,
    pub initial: f64,
}

impl TrustTable {
    pub fn empty(params: &TrustParams) -> Self {
        TrustTable {
            entries: BTreeMap::new(),
            initial: params.initial,
        }
    }

    pub fn get(&self, assessor: &str, subject: &str) -> f64 {
        self.entries
            .iter()
            .find(|((a, s), _)| a.as_str() == assessor && s.as_str() == subject)
            .map(|(_, v)| *v)
            .unwrap_or(self.initial)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Replays every assessment in ordinal order. Assessments whose target does
/// not resolve are skipped (a validated graph has none).
pub fn trust(graph: &PromiseGraph, params: &TrustParams) -> TrustTable {
    let mut table = TrustTable::empty(params);
    let mut assessments: Vec<_> = graph.assessments.iter().collect();
    assessments.sort_by_key(|a| a.ordinal);
    for a in assessments {
        let Some(target) = graph.promise(a.target.as_str()) else {
            continue;
        };
        let slot = table
            .entries
            .entry((a.assessor.clone(), target.promiser.clone()))
            .or_insert(params.initial);
        *slot = params.update(*slot, a.verdict);
    }
    table
}
