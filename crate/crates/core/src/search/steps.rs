//! The five steps of the transversal search.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::folder::loop_from_transversal;
use crate::loopcore::LoopTable;
use crate::permkernel::{orbits, PermGroup, Permutation};

/// A point-orbit `iH` of the stabilizer on the non-neutral points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointOrbit {
    /// Least point of the orbit.
    pub representative: usize,
    pub points: Vec<usize>,
}

/// An `H`-conjugacy orbit of candidate right translations for one
/// point-orbit. `members[k]` maps the neutral element to `points[k]` of the
/// point-orbit, in the orbit's point order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateOrbit {
    pub base_point: usize,
    pub members: Vec<Permutation>,
}

impl CandidateOrbit {
    pub fn weight(&self) -> usize {
        self.members.len()
    }

    /// The member that maps the neutral element to `base_point`.
    pub fn representative(&self) -> &Permutation {
        self.members
            .iter()
            .find(|m| m.image(0) == self.base_point)
            .expect("orbit covers its base point")
    }
}

/// Step 1: orbits of `H` on the non-neutral points, by least point.
pub fn step1_orbit_reps(stabilizer: &PermGroup) -> Vec<PointOrbit> {
    orbits(stabilizer.degree(), stabilizer.generators())
        .into_iter()
        .filter(|o| o[0] != 0)
        .map(|points| PointOrbit {
            representative: points[0],
            points,
        })
        .collect()
}

/// How centralizers are computed in Step 2.
#[derive(Clone, Copy, Debug)]
pub struct CentralizerStrategy {
    /// Groups of at most this order are filtered element by element.
    pub enumerate_below: u64,
}

/// Outcome of Step 2 for one point.
pub struct Step2 {
    pub centralizer_order: num_bigint::BigUint,
    pub coset_size: usize,
    /// Fixed-point-free members of the coset.
    pub candidates: Vec<Permutation>,
}

/// Step 2: the fixed-point-free elements `r` of `C_G(H_i)` with `1 r = i`,
/// enumerated as the coset `C_1 v`. Empty if no element of the centralizer
/// maps 1 to `i`.
pub fn step2_candidates(
    group: &PermGroup,
    stabilizer: &PermGroup,
    point: usize,
    strategy: CentralizerStrategy,
    coset_limit: u64,
) -> Result<Vec<Permutation>> {
    Ok(step2(group, stabilizer, point, strategy, coset_limit)?.candidates)
}

pub fn step2(
    group: &PermGroup,
    stabilizer: &PermGroup,
    point: usize,
    strategy: CentralizerStrategy,
    coset_limit: u64,
) -> Result<Step2> {
    let h_i = stabilizer.stabilizer(&[point]);
    let small = group
        .order_u64()
        .is_some_and(|o| o <= strategy.enumerate_below);
    let c = if small {
        group.centralizer_by_enumeration(&h_i, strategy.enumerate_below)?
    } else {
        group.centralizer(&h_i)
    };
    let centralizer_order = c.order();
    let Some(v) = c.representative_action(0, point) else {
        return Ok(Step2 {
            centralizer_order,
            coset_size: 0,
            candidates: Vec::new(),
        });
    };
    let c1 = c.stabilizer(&[0]);
    let coset = c1.right_coset(&v, coset_limit)?;
    let coset_size = coset.len();
    Ok(Step2 {
        centralizer_order,
        coset_size,
        candidates: coset.into_iter().filter(|r| r.is_fixed_point_free()).collect(),
    })
}

/// Step 3: keeps the orbits `r^H` of size `|iH|` whose members pairwise
/// differ everywhere, each orbit once.
pub fn step3_candidate_orbits(
    stabilizer: &PermGroup,
    orbit: &PointOrbit,
    candidates: &[Permutation],
    orbit_limit: u64,
) -> Result<Vec<CandidateOrbit>> {
    let size = orbit.points.len();
    let mut position = vec![usize::MAX; stabilizer.degree()];
    for (k, &p) in orbit.points.iter().enumerate() {
        position[p] = k;
    }
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut out = Vec::new();
    for r in candidates {
        let Some(members) = conjugation_orbit(stabilizer, r, size) else {
            continue;
        };
        if members.len() != size || !members[1..].iter().all(|s| s.differs_everywhere(r)) {
            continue;
        }
        let mut key = members.clone();
        key.sort_unstable();
        if !seen.insert(key) {
            continue;
        }
        let mut placed: Vec<Option<Permutation>> = vec![None; size];
        for m in members {
            let k = position[m.image(0)];
            placed[k] = Some(m);
        }
        out.push(CandidateOrbit {
            base_point: orbit.representative,
            members: placed.into_iter().map(|m| m.expect("one member per point")).collect(),
        });
        if out.len() as u64 > orbit_limit {
            return Err(Error::ResourceLimit {
                what: format!("candidate orbits for point {}", orbit.representative + 1),
                limit: orbit_limit,
            });
        }
    }
    Ok(out)
}

/// `r^H` by breadth-first conjugation, `r` first; `None` once it exceeds
/// `cap` elements.
fn conjugation_orbit(group: &PermGroup, r: &Permutation, cap: usize) -> Option<Vec<Permutation>> {
    let mut seen: HashSet<Permutation> = HashSet::from([r.clone()]);
    let mut out = vec![r.clone()];
    let mut next = 0;
    while next < out.len() {
        let x = out[next].clone();
        next += 1;
        for h in group.generators() {
            let y = x.conjugate_by(h);
            if seen.insert(y.clone()) {
                out.push(y);
                if out.len() > cap {
                    return None;
                }
            }
        }
    }
    Some(out)
}

/// Step 4: orbits for different point-orbits are compatible iff every
/// member of `b` differs everywhere from one fixed member of `a`. Conjugating
/// by `H` moves any coincidence onto that member, so this equals
/// [`step4_compatible_full`].
pub fn step4_compatible(a: &CandidateOrbit, b: &CandidateOrbit) -> bool {
    let t = a.representative();
    b.members.iter().all(|s| s.differs_everywhere(t))
}

/// Every pair of members compared.
pub fn step4_compatible_full(a: &CandidateOrbit, b: &CandidateOrbit) -> bool {
    a.members
        .iter()
        .all(|t| b.members.iter().all(|s| s.differs_everywhere(t)))
}

/// Candidate orbits grouped by point-orbit, with the compatibility relation
/// between different layers.
pub struct CompatibilityGraph {
    pub layers: Vec<Vec<CandidateOrbit>>,
    /// `adjacency[l][i][m]`: bitset over layer `m > l` of orbits compatible
    /// with orbit `i` of layer `l`.
    adjacency: Vec<Vec<Vec<Vec<u64>>>>,
}

impl CompatibilityGraph {
    pub fn new(layers: Vec<Vec<CandidateOrbit>>) -> Self {
        let n = layers.len();
        let adjacency = (0..n)
            .map(|l| {
                layers[l]
                    .par_iter()
                    .map(|a| {
                        (0..n)
                            .map(|m| {
                                if m <= l {
                                    return Vec::new();
                                }
                                let mut bits = vec![0u64; layers[m].len().div_ceil(64)];
                                for (j, b) in layers[m].iter().enumerate() {
                                    if step4_compatible(a, b) {
                                        bits[j / 64] |= 1 << (j % 64);
                                    }
                                }
                                bits
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { layers, adjacency }
    }

    pub fn compatible(&self, l: usize, i: usize, m: usize, j: usize) -> bool {
        let (l, i, m, j) = if l < m { (l, i, m, j) } else { (m, j, l, i) };
        self.adjacency[l][i][m][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn edge_count(&self) -> u64 {
        self.adjacency
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .map(|w| w.count_ones() as u64)
            .sum()
    }
}

/// Outcome of Step 5.
pub struct Assembly {
    /// Chosen orbit index per layer, for each complete selection, sorted.
    pub selections: Vec<Vec<usize>>,
    pub nodes: u64,
}

/// Step 5: all selections of one orbit per layer that are pairwise
/// compatible (exactly the complete subgraphs of total weight `d - 1`).
/// The first layer is split across worker threads; results are sorted.
pub fn step5_assemble(graph: &CompatibilityGraph, node_limit: u64) -> Result<Assembly> {
    let n = graph.layers.len();
    if n == 0 {
        return Ok(Assembly {
            selections: vec![Vec::new()],
            nodes: 0,
        });
    }
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let mut selections: Vec<Vec<usize>> = (0..graph.layers[0].len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut chosen = vec![first];
            dfs(graph, &mut chosen, &mut out, &nodes, &aborted, node_limit);
            out
        })
        .collect();
    let nodes = nodes.into_inner();
    if aborted.into_inner() {
        return Err(Error::ResourceLimit {
            what: "clique search nodes".into(),
            limit: node_limit,
        });
    }
    selections.sort_unstable();
    Ok(Assembly { selections, nodes })
}

fn dfs(
    graph: &CompatibilityGraph,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    nodes: &AtomicU64,
    aborted: &AtomicBool,
    limit: u64,
) {
    if aborted.load(Ordering::Relaxed) {
        return;
    }
    if nodes.fetch_add(1, Ordering::Relaxed) >= limit {
        aborted.store(true, Ordering::Relaxed);
        return;
    }
    let layer = chosen.len();
    if layer == graph.layers.len() {
        out.push(chosen.clone());
        return;
    }
    for j in 0..graph.layers[layer].len() {
        if chosen
            .iter()
            .enumerate()
            .all(|(l, &i)| graph.compatible(l, i, layer, j))
        {
            chosen.push(j);
            dfs(graph, chosen, out, nodes, aborted, limit);
            chosen.pop();
        }
    }
}

/// The loop of a selection: identity plus the chosen orbits, each member
/// placed at the point it sends the neutral element to.
pub fn selection_to_loop(graph: &CompatibilityGraph, selection: &[usize], degree: usize) -> Result<LoopTable> {
    let mut rights: Vec<Option<Permutation>> = vec![None; degree];
    rights[0] = Some(Permutation::identity(degree));
    for (layer, &i) in selection.iter().enumerate() {
        for m in &graph.layers[layer][i].members {
            rights[m.image(0)] = Some(m.clone());
        }
    }
    let rights: Vec<Permutation> = rights
        .into_iter()
        .map(|r| r.ok_or_else(|| Error::InvalidLoop("selection misses a point".into())))
        .collect::<Result<_>>()?;
    loop_from_transversal(&rights)
}
