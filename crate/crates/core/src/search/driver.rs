//! Searching many groups and summarizing the results per degree.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{search_group, Mode, SearchOptions, SearchReport, SearchTarget};
use crate::isofilter::filter_up_to_isomorphism;
use crate::loopcore::LoopTable;

/// Searches every target, in parallel; reports come back in target order.
pub fn search_targets(targets: &[SearchTarget], options: &SearchOptions) -> Vec<SearchReport> {
    targets.par_iter().map(|t| search_group(t, options)).collect()
}

/// Counts for one degree before and after the simplicity and isomorphism
/// filters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub mode: Mode,
    pub groups: usize,
    pub searched: usize,
    /// Skipped groups by reason.
    pub skipped: BTreeMap<String, usize>,
    /// Loops found before the mode's filters, summed over groups.
    pub raw_loops: usize,
    /// Loops passing the mode's filters.
    pub kept_loops: usize,
    pub simple: usize,
    pub simple_non_associative: usize,
    /// Isomorphism classes of the simple non-associative kept loops, when
    /// the filter ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found: Option<usize>,
    #[serde(skip)]
    pub representatives: Vec<LoopTable>,
}

impl DegreeSummary {
    pub fn resource_skips(&self) -> usize {
        self.skipped.get("resource").copied().unwrap_or(0)
    }
}

/// Summarizes the reports of one degree. With `iso_filter`, the simple
/// non-associative loops of all groups are reduced up to isomorphism.
pub fn summarize(degree: usize, mode: Mode, reports: &[SearchReport], iso_filter: bool) -> DegreeSummary {
    let reports: Vec<&SearchReport> = reports.iter().filter(|r| r.degree == degree).collect();
    let mut skipped = BTreeMap::new();
    for r in &reports {
        if let Some(reason) = r.decision.skip_reason() {
            *skipped.entry(reason.name().to_string()).or_default() += 1;
        }
    }
    let kept: Vec<_> = reports.iter().flat_map(|r| &r.loops).collect();
    let candidates: Vec<LoopTable> = kept
        .iter()
        .filter(|l| l.is_simple_non_associative())
        .map(|l| l.table.clone())
        .collect();
    let representatives = if iso_filter {
        filter_up_to_isomorphism(&candidates)
    } else {
        Vec::new()
    };
    DegreeSummary {
        degree,
        mode,
        groups: reports.len(),
        searched: reports.iter().filter(|r| r.decision.skip_reason().is_none()).count(),
        skipped,
        raw_loops: reports.iter().map(|r| r.stats.raw_loops).sum(),
        kept_loops: kept.len(),
        simple: kept.iter().filter(|l| l.simple).count(),
        simple_non_associative: candidates.len(),
        found: iso_filter.then_some(representatives.len()),
        representatives,
    }
}
