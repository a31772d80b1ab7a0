//! Conjugacy classes with a size cutoff, and the smallest nontrivial class.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::centralizer::commutes_with_all;
use super::group::PermGroup;
use super::perm::Permutation;
use super::random::DEFAULT_SEED;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassSize {
    Exact(u64),
    ExceededCutoff,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassResult {
    pub representative: Permutation,
    pub size: ClassSize,
    pub cutoff: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "size")]
pub enum MinClassSize {
    /// Smallest size of a non-central class, which is at most the bound.
    Min(u64),
    /// Non-central classes exist but all are larger than the bound.
    AllExceedBound,
    /// The group is abelian.
    NoNontrivialClass,
}

impl PermGroup {
    /// Closes `{h}` under conjugation by the generators, giving up once more
    /// than `cutoff` elements are found.
    pub fn conjugacy_class(&self, h: &Permutation, cutoff: u64) -> ConjugacyClassResult {
        let size = match class_members(self.generators(), h, cutoff) {
            Some(members) => ClassSize::Exact(members.len() as u64),
            None => ClassSize::ExceededCutoff,
        };
        ConjugacyClassResult {
            representative: h.clone(),
            size,
            cutoff,
        }
    }

    /// The smallest size of a non-central conjugacy class if it is at most
    /// `bound`.
    ///
    /// If a class of size `s <= bound` misses a prime `p` dividing `|G|`,
    /// the centralizer of one of its elements contains a Sylow `p`-subgroup,
    /// so the class meets `C_G(P)` for a fixed Sylow `P`. Choosing primes
    /// with product above `bound` guarantees every such class misses one, so
    /// only elements of a few small centralizers need their classes
    /// measured. When cyclic Sylow subgroups cannot be found the whole group
    /// is enumerated, within `limit` elements.
    pub fn min_nontrivial_class_size(&self, bound: u64, limit: u64) -> Result<MinClassSize> {
        if self.is_abelian() {
            return Ok(MinClassSize::NoNontrivialClass);
        }
        if let Some(reps) = self.sylow_centralizer_elements(bound, limit) {
            return Ok(self.smallest_class_among(reps.into_iter(), bound));
        }
        let order = self.order();
        if order > BigUint::from(limit) {
            return Err(Error::ResourceLimit {
                what: format!("class enumeration in a group of order {order}"),
                limit,
            });
        }
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut best: Option<u64> = None;
        for x in self.chain().elements() {
            if seen.contains(&x) || commutes_with_all(&x, self.generators()) {
                continue;
            }
            let (members, complete) = explore_class(self.generators(), &x, bound);
            if complete {
                best = Some(best.map_or(members.len() as u64, |b| b.min(members.len() as u64)));
            }
            seen.extend(members);
        }
        Ok(best.map_or(MinClassSize::AllExceedBound, MinClassSize::Min))
    }

    fn smallest_class_among(&self, reps: impl Iterator<Item = Permutation>, bound: u64) -> MinClassSize {
        let mut best: Option<u64> = None;
        for x in reps {
            if commutes_with_all(&x, self.generators()) {
                continue;
            }
            let cutoff = best.map_or(bound, |b| b.min(bound));
            if let Some(members) = class_members(self.generators(), &x, cutoff) {
                best = Some(members.len() as u64);
            }
        }
        best.map_or(MinClassSize::AllExceedBound, MinClassSize::Min)
    }

    /// Elements of `C_G(P_p)` for cyclic Sylow subgroups `P_p` over a set of
    /// primes whose product exceeds `bound`, or `None` if no such set with
    /// small enough centralizers is found.
    fn sylow_centralizer_elements(&self, bound: u64, limit: u64) -> Option<Vec<Permutation>> {
        let order = self.order().to_u128()?;
        let mut usable: Vec<(u64, u128, PermGroup)> = Vec::new();
        for (p, part) in prime_parts(order, self.degree()) {
            let Some(y) = self.random_elements(DEFAULT_SEED ^ p as u64)
                .take(400)
                .find_map(|g| {
                    let o = g.order();
                    (o % part == 0).then(|| g.pow(o / part))
                })
            else {
                continue;
            };
            let sylow = PermGroup::from_generators(self.degree(), vec![y]);
            let c = self.centralizer(&sylow);
            let size = c.order().to_u128()?;
            usable.push((p as u64, size, c));
        }
        usable.sort_by_key(|(p, size, _)| (*size, *p));
        let mut product: u128 = 1;
        let mut total: u128 = 0;
        let mut chosen = Vec::new();
        for (p, size, c) in usable {
            if product > bound as u128 {
                break;
            }
            product *= p as u128;
            total += size;
            chosen.push(c);
        }
        if product <= bound as u128 || total > limit as u128 {
            return None;
        }
        log::debug!("class bound via {} Sylow centralizers ({} elements)", chosen.len(), total);
        let mut out = Vec::new();
        for c in chosen {
            out.extend(c.chain().elements());
        }
        Some(out)
    }
}

/// `(p, p^a)` for each prime `p` with `p^a` exactly dividing `order`; every
/// prime divisor of a permutation group order is at most the degree.
fn prime_parts(mut order: u128, degree: usize) -> Vec<(u128, u128)> {
    let mut out = Vec::new();
    for p in 2..=degree.max(2) as u128 {
        if order % p != 0 {
            continue;
        }
        let mut part = 1;
        while order % p == 0 {
            order /= p;
            part *= p;
        }
        out.push((p, part));
    }
    out
}

fn class_members(gens: &[Permutation], h: &Permutation, cutoff: u64) -> Option<Vec<Permutation>> {
    let (members, complete) = explore_class(gens, h, cutoff);
    complete.then_some(members)
}

/// Breadth-first class closure; the flag is false if it stopped at the
/// cutoff, in which case the members found so far are returned.
fn explore_class(gens: &[Permutation], h: &Permutation, cutoff: u64) -> (Vec<Permutation>, bool) {
    let mut seen: HashSet<Permutation> = HashSet::from([h.clone()]);
    let mut members = vec![h.clone()];
    let mut next = 0;
    while next < members.len() {
        let x = members[next].clone();
        next += 1;
        for g in gens {
            let y = x.conjugate_by(g);
            if seen.insert(y.clone()) {
                members.push(y);
                if members.len() as u64 > cutoff {
                    return (members, false);
                }
            }
        }
    }
    (members, true)
}
