//! Brute-force reference implementations, used to cross-check the fast
//! algorithms in tests. Everything here enumerates whole groups or whole
//! search spaces and is only practical at small sizes.

use std::collections::{BTreeSet, HashSet};

use crate::loopcore::LoopTable;
use crate::permkernel::{PermGroup, Permutation};

/// Every element of `<generators>`, by closing under right multiplication.
/// `None` once more than `limit` elements are found.
pub fn closure(degree: usize, generators: &[Permutation], limit: usize) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut next = 0;
    while next < out.len() {
        let x = out[next].clone();
        next += 1;
        for g in generators {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                out.push(y);
                if out.len() > limit {
                    return None;
                }
            }
        }
    }
    Some(out)
}

/// `{g in elements : g k = k g for every generator k}`.
pub fn centralizer(elements: &[Permutation], k_generators: &[Permutation]) -> BTreeSet<Permutation> {
    elements
        .iter()
        .filter(|g| k_generators.iter().all(|k| g.then(k) == k.then(g)))
        .cloned()
        .collect()
}

/// Whether `rights` lie in pairwise distinct right cosets of every
/// conjugate `H^g` of the stabilizer of the neutral element. `H^g` is the
/// stabilizer of `1 g`, enumerated from `elements`.
pub fn transversal_to_all_conjugates(elements: &[Permutation], rights: &[Permutation]) -> bool {
    let degree = elements.first().map_or(0, Permutation::degree);
    (0..degree).all(|point| {
        let conjugate: HashSet<&Permutation> = elements.iter().filter(|g| g.fixes(point)).collect();
        (0..rights.len()).all(|i| {
            (i + 1..rights.len()).all(|j| !conjugate.contains(&rights[i].then_inverse(&rights[j])))
        })
    })
}

/// Whether the group given by `elements` preserves some partition into
/// blocks other than the two trivial ones.
pub fn has_nontrivial_blocks(degree: usize, elements: &[Permutation]) -> bool {
    // every nontrivial block system has a block through 0 of size 2..d-1
    (0u64..1 << (degree - 1)).any(|mask| {
        let block: Vec<usize> = std::iter::once(0)
            .chain((1..degree).filter(|&k| mask >> (k - 1) & 1 == 1))
            .collect();
        if block.len() < 2 || block.len() == degree || degree % block.len() != 0 {
            return false;
        }
        let member: Vec<bool> = (0..degree).map(|k| block.contains(&k)).collect();
        elements.iter().all(|g| {
            let hits = block.iter().filter(|&&k| member[g.image(k)]).count();
            hits == 0 || hits == block.len()
        })
    })
}

/// All Latin squares of order `n` whose first row and column are
/// `0, 1, .., n-1`, i.e. all loops on `{0, .., n-1}` with neutral 0.
pub fn all_loops(n: usize) -> Vec<LoopTable> {
    assert!(n >= 1);
    let mut cells = vec![0u16; n * n];
    for k in 0..n {
        cells[k] = k as u16;
        cells[k * n] = k as u16;
    }
    let mut out = Vec::new();
    fill(n, 1, &mut cells, &mut out);
    out
}

fn fill(n: usize, pos: usize, cells: &mut Vec<u16>, out: &mut Vec<LoopTable>) {
    if pos == n * n {
        out.push(LoopTable::from_rows(&rows(n, cells)).expect("complete Latin square"));
        return;
    }
    let (i, j) = (pos / n, pos % n);
    if i == 0 || j == 0 {
        return fill(n, pos + 1, cells, out);
    }
    for v in 0..n as u16 {
        let clash = (0..j).any(|k| cells[i * n + k] == v) || (0..i).any(|k| cells[k * n + j] == v);
        if !clash {
            cells[pos] = v;
            fill(n, pos + 1, cells, out);
        }
    }
}

fn rows(n: usize, cells: &[u16]) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| (0..n).map(|j| cells[i * n + j] as usize + 1).collect())
        .collect()
}

/// Every loop with all right translations in `G` on which `H = G_1` acts by
/// automorphisms: systems `r_1 = id, r_2, .., r_d` of elements of `G` with
/// `1 r_i = i`, pairwise quotients fixed-point-free and `R^h = R` for
/// `h in H`. `None` if `G` has more than `limit` elements.
pub fn loops_in_group(group: &PermGroup, limit: usize) -> Option<BTreeSet<LoopTable>> {
    let d = group.degree();
    let elements = closure(d, group.generators(), limit)?;
    let h_gens: Vec<Permutation> = group.stabilizer(&[0]).generators().to_vec();
    let mut by_point: Vec<Vec<Permutation>> = vec![Vec::new(); d];
    for g in elements {
        if g.is_fixed_point_free() {
            by_point[g.image(0)].push(g);
        }
    }
    let mut system: Vec<Option<Permutation>> = vec![None; d];
    system[0] = Some(Permutation::identity(d));
    let mut out = BTreeSet::new();
    choose(1, &by_point, &h_gens, &mut system, &mut out);
    Some(out)
}

fn choose(
    i: usize,
    by_point: &[Vec<Permutation>],
    h_gens: &[Permutation],
    system: &mut Vec<Option<Permutation>>,
    out: &mut BTreeSet<LoopTable>,
) {
    let d = system.len();
    if i == d {
        let rights: Vec<Permutation> = system.iter().map(|r| r.clone().unwrap()).collect();
        let set: HashSet<&Permutation> = rights.iter().collect();
        if h_gens.iter().all(|h| rights.iter().all(|r| set.contains(&r.conjugate_by(h)))) {
            out.insert(LoopTable::from_right_translations(&rights).expect("fixed-point-free quotients"));
        }
        return;
    }
    for r in &by_point[i] {
        let fits = system[..i]
            .iter()
            .all(|s| s.as_ref().unwrap().differs_everywhere(r));
        // conjugation by H must map chosen translations to chosen ones
        let closed = h_gens.iter().all(|h| {
            let conjugate = r.conjugate_by(h);
            let t = h.image(i);
            let forward = t > i || (t == i && conjugate == *r) || system[t].as_ref() == Some(&conjugate);
            let backward = (1..i)
                .filter(|&j| h.image(j) == i)
                .all(|j| system[j].as_ref().unwrap().conjugate_by(h) == *r);
            forward && backward
        });
        if fits && closed {
            system[i] = Some(r.clone());
            choose(i + 1, by_point, h_gens, system, out);
            system[i] = None;
        }
    }
}
