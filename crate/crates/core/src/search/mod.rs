//! Enumeration of the loops `Q` with `RMlt(Q) <= G` and `G_1 <= Aut(Q)` for
//! a transitive group `G`, with the pre-filters that let whole groups be
//! skipped.

mod driver;
mod prefilter;
pub mod steps;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::catalog::{GroupCatalogEntry, Tag};
use crate::error::{Error, Result};
use crate::loopcore::LoopTable;
use crate::permkernel::PermGroup;

pub use driver::{search_targets, summarize, DegreeSummary};
pub use prefilter::{affine_class_prune, prefilter, AffineCheck, AffineOutcome, Prefilter};
pub use steps::{CandidateOrbit, CompatibilityGraph, PointOrbit};

use steps::{CentralizerStrategy, CompatibilityGraph as Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Right automorphic loops.
    #[serde(rename = "ra")]
    RightAutomorphic,
    /// Automorphic loops.
    #[serde(rename = "aut")]
    Automorphic,
    /// Commutative automorphic loops.
    #[serde(rename = "caut")]
    CommutativeAutomorphic,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::RightAutomorphic => "ra",
            Mode::Automorphic => "aut",
            Mode::CommutativeAutomorphic => "caut",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ra" => Ok(Mode::RightAutomorphic),
            "aut" => Ok(Mode::Automorphic),
            "caut" => Ok(Mode::CommutativeAutomorphic),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown mode {s:?}; expected ra, aut or caut"),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Elements enumerated per Step 2 coset.
    pub coset: u64,
    /// Candidate orbits kept per point-orbit.
    pub candidate_orbits: u64,
    /// Nodes visited by the Step 5 search.
    pub clique_nodes: u64,
    /// Elements enumerated when measuring conjugacy classes.
    pub class_enumeration: u64,
    /// Centralizers in groups of at most this order are computed by
    /// filtering every element instead of backtracking.
    pub enumerate_centralizer_below: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            coset: 1_000_000,
            candidate_orbits: 1_000_000,
            clique_nodes: 1_000_000,
            class_enumeration: 10_000_000,
            enumerate_centralizer_below: 5_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub mode: Mode,
    pub skip_four_transitive: bool,
    pub skip_solvable: bool,
    pub affine_prune: bool,
    /// Ignores every pre-filter, including the degree restrictions of the
    /// automorphic modes.
    pub force_search: bool,
    pub limits: Limits,
}

impl SearchOptions {
    /// The skips each mode admits: 4-transitive groups always, solvable
    /// groups in the automorphic modes, and the class bound for affine
    /// groups in the commutative mode.
    pub fn for_mode(mode: Mode) -> Self {
        Self {
            mode,
            skip_four_transitive: true,
            skip_solvable: mode != Mode::RightAutomorphic,
            affine_prune: mode == Mode::CommutativeAutomorphic,
            force_search: false,
            limits: Limits::default(),
        }
    }
}

/// What a group is searched as: its name, catalog reference and whether it
/// is tagged affine.
#[derive(Clone, Debug)]
pub struct SearchTarget {
    pub name: String,
    pub reference: Option<String>,
    pub group: PermGroup,
    pub affine: bool,
}

impl SearchTarget {
    pub fn new(name: impl Into<String>, group: PermGroup) -> Self {
        Self {
            name: name.into(),
            reference: None,
            group,
            affine: false,
        }
    }

    pub fn from_entry(entry: &GroupCatalogEntry, reference: Option<String>) -> Result<Self> {
        Ok(Self {
            name: entry.name.clone(),
            reference,
            group: entry.group()?,
            affine: entry.has_tag(Tag::Affine),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    Intransitive,
    FourTransitive,
    Solvable,
    OddDegree,
    NotPowerOfTwo,
    AffineClassBound,
    TrivialStabilizer,
    Resource,
}

impl SkipReason {
    pub fn name(self) -> &'static str {
        match self {
            SkipReason::Intransitive => "intransitive",
            SkipReason::FourTransitive => "four-transitive",
            SkipReason::Solvable => "solvable",
            SkipReason::OddDegree => "odd-degree",
            SkipReason::NotPowerOfTwo => "not-power-of-two",
            SkipReason::AffineClassBound => "affine-class-bound",
            SkipReason::TrivialStabilizer => "trivial-stabilizer",
            SkipReason::Resource => "resource",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Decision {
    Searched,
    Skipped { reason: SkipReason, detail: String },
}

impl Decision {
    pub fn skip_reason(&self) -> Option<SkipReason> {
        match self {
            Decision::Searched => None,
            Decision::Skipped { reason, .. } => Some(*reason),
        }
    }
}

/// Per point-orbit figures from Steps 2 and 3.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrbitStats {
    /// 1-based least point of the orbit.
    pub representative: usize,
    pub size: usize,
    pub centralizer_order: String,
    pub coset_size: usize,
    pub fixed_point_free: usize,
    pub candidate_orbits: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub group_order: String,
    pub stabilizer_order: String,
    pub point_orbits: Vec<OrbitStats>,
    /// Set when some point-orbit has no candidate orbit, which rules out
    /// every loop; later point-orbits are not examined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhausted_at: Option<usize>,
    pub compatible_pairs: u64,
    pub clique_nodes: u64,
    pub raw_loops: usize,
    pub soundness_checked: usize,
    pub fast_path: usize,
    pub general_path: usize,
    pub kept_loops: usize,
}

/// How automorphicity of a found loop was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AutomorphicPath {
    /// `RMlt(Q) = G = Mlt(Q)`, so the inner mappings lie in `G_1`.
    MultiplicationGroupIsG,
    /// Right inner mappings and conjugations checked as automorphisms.
    InnerMappingCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundLoop {
    pub table: LoopTable,
    pub associative: bool,
    pub commutative: bool,
    pub simple: bool,
    pub automorphic: bool,
    pub automorphic_path: AutomorphicPath,
    pub rmlt_order: String,
    pub mlt_order: String,
}

impl FoundLoop {
    pub fn is_simple_non_associative(&self) -> bool {
        self.simple && !self.associative
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub group_name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
    pub degree: usize,
    pub mode: Mode,
    pub decision: Decision,
    pub prefilter: Prefilter,
    pub stats: SearchStats,
    /// Loops passing the mode's filters, sorted by table.
    pub loops: Vec<FoundLoop>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Runs the pre-filters and, unless one applies, Steps 1 to 5 followed by
/// the mode's filters. Exceeded limits become `skipped(resource)`.
pub fn search_group(target: &SearchTarget, options: &SearchOptions) -> SearchReport {
    let start = Instant::now();
    let group = &target.group;
    let mut report = SearchReport {
        group_name: target.name.clone(),
        reference: target.reference.clone(),
        degree: group.degree(),
        mode: options.mode,
        decision: Decision::Searched,
        prefilter: Prefilter::default(),
        stats: SearchStats {
            group_order: group.order().to_string(),
            ..SearchStats::default()
        },
        loops: Vec::new(),
        elapsed: Duration::ZERO,
    };
    let (pre, skip) = prefilter(target, options);
    report.prefilter = pre;
    if let Some((reason, detail)) = skip {
        report.decision = Decision::Skipped { reason, detail };
    } else if let Err(e) = run_steps(group, options, &mut report) {
        report.loops.clear();
        report.decision = Decision::Skipped {
            reason: SkipReason::Resource,
            detail: e.to_string(),
        };
    }
    log::info!(
        "{} ({}): {:?}, {} loops",
        target.name,
        options.mode.name(),
        report.decision.skip_reason().map_or("searched", SkipReason::name),
        report.loops.len()
    );
    report.elapsed = start.elapsed();
    report
}

/// Steps 1 to 5 alone: every loop with `RMlt(Q) <= G` and `G_1 <= Aut(Q)`,
/// sorted by table.
pub fn enumerate_loops(group: &PermGroup, limits: &Limits) -> Result<Vec<LoopTable>> {
    let mut stats = SearchStats::default();
    raw_loops(group, limits, &mut stats)
}

fn raw_loops(group: &PermGroup, limits: &Limits, stats: &mut SearchStats) -> Result<Vec<LoopTable>> {
    let d = group.degree();
    let stabilizer = group.stabilizer(&[0]);
    stats.stabilizer_order = stabilizer.order().to_string();
    let strategy = CentralizerStrategy {
        enumerate_below: limits.enumerate_centralizer_below,
    };
    let mut layers = Vec::new();
    for orbit in steps::step1_orbit_reps(&stabilizer) {
        let i = orbit.representative;
        let step2 = steps::step2(group, &stabilizer, i, strategy, limits.coset)?;
        let candidates = steps::step3_candidate_orbits(
            &stabilizer,
            &orbit,
            &step2.candidates,
            limits.candidate_orbits,
        )?;
        stats.point_orbits.push(OrbitStats {
            representative: i + 1,
            size: orbit.points.len(),
            centralizer_order: step2.centralizer_order.to_string(),
            coset_size: step2.coset_size,
            fixed_point_free: step2.candidates.len(),
            candidate_orbits: candidates.len(),
        });
        if candidates.is_empty() {
            stats.exhausted_at = Some(i + 1);
            return Ok(Vec::new());
        }
        layers.push(candidates);
    }
    let graph = Graph::new(layers);
    stats.compatible_pairs = graph.edge_count();
    let assembly = steps::step5_assemble(&graph, limits.clique_nodes)?;
    stats.clique_nodes = assembly.nodes;
    let mut loops = assembly
        .selections
        .iter()
        .map(|s| steps::selection_to_loop(&graph, s, d))
        .collect::<Result<Vec<_>>>()?;
    loops.sort_unstable();
    loops.dedup();
    stats.raw_loops = loops.len();
    Ok(loops)
}

/// Re-checks a found loop independently of how it was built: every right
/// translation lies in `G` and every generator of `G_1` is an automorphism.
pub fn verify_soundness(group: &PermGroup, table: &LoopTable) -> bool {
    let stabilizer = group.stabilizer(&[0]);
    table.order() == group.degree()
        && table
            .translations()
            .0
            .iter()
            .all(|r| group.contains(r).unwrap_or(false))
        && stabilizer.generators().iter().all(|h| table.is_automorphism(h))
}

/// Classifies a found loop. The automorphic check takes the fast path when
/// both multiplication groups equal `G`.
pub fn classify(group: &PermGroup, table: LoopTable) -> FoundLoop {
    let (rmlt, mlt) = table.mult_groups();
    let order = group.order();
    let (rmlt_order, mlt_order) = (rmlt.order(), mlt.order());
    let (automorphic, automorphic_path) = if rmlt_order == order && mlt_order == order {
        (true, AutomorphicPath::MultiplicationGroupIsG)
    } else {
        (table.is_automorphic_via_conjugations(), AutomorphicPath::InnerMappingCheck)
    };
    FoundLoop {
        associative: table.is_associative(),
        commutative: table.is_commutative(),
        simple: table.order() >= 2 && mlt.is_primitive(),
        automorphic,
        automorphic_path,
        rmlt_order: rmlt_order.to_string(),
        mlt_order: mlt_order.to_string(),
        table,
    }
}

fn keeps(mode: Mode, found: &FoundLoop) -> bool {
    match mode {
        Mode::RightAutomorphic => true,
        Mode::Automorphic => found.simple && found.automorphic,
        Mode::CommutativeAutomorphic => found.simple && found.automorphic && found.commutative,
    }
}

fn run_steps(group: &PermGroup, options: &SearchOptions, report: &mut SearchReport) -> Result<()> {
    let stats = &mut report.stats;
    let loops = raw_loops(group, &options.limits, stats)?;
    for table in loops {
        assert!(
            verify_soundness(group, &table),
            "{}: constructed loop failed the soundness re-check",
            report.group_name
        );
        stats.soundness_checked += 1;
        let found = classify(group, table);
        match found.automorphic_path {
            AutomorphicPath::MultiplicationGroupIsG => stats.fast_path += 1,
            AutomorphicPath::InnerMappingCheck => stats.general_path += 1,
        }
        if keeps(options.mode, &found) {
            report.loops.push(found);
        }
    }
    stats.kept_loops = report.loops.len();
    Ok(())
}
