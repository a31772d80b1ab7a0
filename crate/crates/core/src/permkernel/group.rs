use std::collections::VecDeque;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::chain::{build_chain, ChainBuilder, StabChain};
use super::perm::Permutation;
use super::random::{ProductReplacement, DEFAULT_SEED};
use crate::error::{Error, Result};

/// A permutation group given by generators, with a lazily built
/// stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    known_order: Option<BigUint>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    /// Identity generators are dropped; an empty list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidGroup("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(Self::from_generators(degree, generators))
    }

    pub(crate) fn from_generators(degree: usize, generators: Vec<Permutation>) -> Self {
        let mut gens: Vec<Permutation> = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Self {
            degree,
            generators: gens,
            known_order: None,
            chain: OnceLock::new(),
        }
    }

    /// The group generated by `elements`, keeping only those that enlarge
    /// the group generated by the ones kept before them.
    pub fn generated_by(degree: usize, elements: &[Permutation]) -> Self {
        let mut builder = ChainBuilder::new(degree, &[], None);
        let kept = elements
            .iter()
            .filter(|e| !e.is_identity() && builder.sift_and_add(e))
            .cloned()
            .collect();
        Self::from_generators(degree, kept)
    }

    pub(crate) fn from_chain(degree: usize, chain: StabChain) -> Self {
        let generators = chain.generators_from(0);
        let order = chain.order();
        let group = Self {
            degree,
            generators,
            known_order: Some(order),
            chain: OnceLock::new(),
        };
        let _ = group.chain.set(chain);
        group
    }

    /// Declares the group order. Chains are then built by random
    /// Schreier-Sims that stops exactly at this order; a wrong claim is
    /// detected (the deterministic completion runs instead) and logged.
    pub fn with_known_order(mut self, order: BigUint) -> Self {
        self.known_order = Some(order);
        self
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new())
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(transposition(n, 0, 1));
            gens.push(cycle(n, &(0..n).collect::<Vec<_>>()));
        }
        let order: BigUint = (1..=n).map(BigUint::from).product();
        Self::from_generators(n, gens).with_known_order(order)
    }

    pub fn alternating(n: usize) -> Self {
        if n < 3 {
            return Self::trivial(n.max(1));
        }
        let gens = (2..n).map(|k| cycle(n, &[0, 1, k])).collect();
        let order: BigUint = (3..=n).map(BigUint::from).product();
        Self::from_generators(n, gens).with_known_order(order)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_generators(n, vec![cycle(n, &(0..n).collect::<Vec<_>>())])
            .with_known_order(BigUint::from(n))
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn known_order(&self) -> Option<&BigUint> {
        self.known_order.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// The stabilizer chain with the default base (smallest moved point
    /// first).
    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            let target = self.known_order.clone().or_else(|| self.giant_order());
            build_chain(self.degree, &self.generators, &[], None, target.as_ref())
        })
    }

    /// A chain whose base starts with `prefix` and otherwise prefers points
    /// in `preference` order.
    pub fn chain_with_base(&self, prefix: &[usize], preference: Option<&[usize]>) -> StabChain {
        let order = self.order();
        build_chain(self.degree, &self.generators, prefix, preference, Some(&order))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// The order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        self.check_degree(p)?;
        Ok(self.chain().contains(p))
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(())
    }

    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        orbit(self.degree, &self.generators, point)
    }

    /// All orbits, each in increasing order, sorted by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(self.degree, &self.generators)
    }

    /// Some element mapping `a` to `b`, or `None` if `b` is not in the
    /// orbit of `a`.
    pub fn representative_action(&self, a: usize, b: usize) -> Option<Permutation> {
        if a >= self.degree || b >= self.degree {
            return None;
        }
        let mut word: Vec<Option<Permutation>> = vec![None; self.degree];
        word[a] = Some(Permutation::identity(self.degree));
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                return word[b].take();
            }
            for g in &self.generators {
                let y = g.image(x);
                if word[y].is_none() {
                    word[y] = Some(word[x].as_ref().unwrap().then(g));
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// The pointwise stabilizer of `points`, with its own chain.
    pub fn stabilizer(&self, points: &[usize]) -> PermGroup {
        if self.is_trivial() {
            return Self::trivial(self.degree);
        }
        let chain = self.chain_with_base(points, None);
        PermGroup::from_chain(self.degree, chain.subchain(points.len()))
    }

    /// All elements, if there are at most `limit` of them.
    pub fn elements(&self, limit: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigUint::from(limit) {
            return Err(Error::ResourceLimit {
                what: format!("enumerating a group of order {order}"),
                limit,
            });
        }
        Ok(self.chain().elements().collect())
    }

    /// The right coset `self * rep`, each element once, in chain order.
    pub fn right_coset(&self, rep: &Permutation, limit: u64) -> Result<Vec<Permutation>> {
        self.check_degree(rep)?;
        let order = self.order();
        if order > BigUint::from(limit) {
            return Err(Error::ResourceLimit {
                what: format!("right coset of size {order}"),
                limit,
            });
        }
        Ok(self.chain().elements().map(|s| s.then(rep)).collect())
    }

    pub fn is_transitive(&self) -> bool {
        orbit(self.degree, &self.generators, 0)
            .map(|o| o.len() == self.degree)
            .unwrap_or(false)
    }

    /// Transitivity on ordered `k`-tuples of distinct points, read off the
    /// basic orbit lengths of a chain with base `0, 1, .., k-1`.
    pub fn is_k_transitive(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        if k > self.degree {
            return false;
        }
        if !self.is_transitive() {
            return false;
        }
        let order = self.order();
        let mut needed = BigUint::one();
        for j in 0..k {
            needed *= BigUint::from(self.degree - j);
        }
        if order < needed || (&order % &needed) != BigUint::ZERO {
            return false;
        }
        let prefix: Vec<usize> = (0..k).collect();
        let chain = self.chain_with_base(&prefix, None);
        chain
            .basic_orbit_lengths()
            .iter()
            .take(k)
            .enumerate()
            .all(|(j, &len)| len == self.degree - j)
    }

    /// Transitive and no nontrivial block system: for every `b`, the
    /// smallest block containing `0` and `b` is everything.
    pub fn is_primitive(&self) -> bool {
        if self.degree < 2 || !self.is_transitive() {
            return false;
        }
        (1..self.degree).all(|b| minimal_block(self.degree, &self.generators, b).len() == self.degree)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].then(&g[j]) == g[j].then(&g[i])))
    }

    /// Normal closure of `⟨elements⟩` under conjugation by this group.
    pub fn normal_closure(&self, elements: &[Permutation]) -> PermGroup {
        let bound = self.order();
        let mut builder = ChainBuilder::new(self.degree, &[], None);
        let mut gens: Vec<Permutation> = Vec::new();
        for e in elements {
            if !e.is_identity() && builder.sift_and_add(e) {
                gens.push(e.clone());
            }
        }
        // random conjugates often reach the whole group at once
        if !gens.is_empty() {
            let mut pr = ProductReplacement::new(self.degree, &self.generators, DEFAULT_SEED);
            let mut seeds = gens.clone();
            for round in 0..8 {
                let g = pr.next_element();
                let c = seeds[round % seeds.len()].conjugate_by(&g);
                seeds.push(c);
            }
            builder.random_phase(&seeds, Some(&bound), 64, DEFAULT_SEED);
            if builder.order() == bound {
                let chain = builder.finish();
                return PermGroup::from_chain(self.degree, chain);
            }
        }
        builder.complete();
        loop {
            let mut grew = false;
            let mut idx = 0;
            while idx < gens.len() {
                for g in &self.generators {
                    let c = gens[idx].conjugate_by(g);
                    if !builder.absorbs(&c) {
                        builder.sift_and_add(&c);
                        builder.complete();
                        gens.push(c);
                        grew = true;
                    }
                }
                idx += 1;
            }
            if !grew {
                break;
            }
        }
        PermGroup::from_chain(self.degree, builder.finish())
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let g = &self.generators;
        let mut comms = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let c = g[i].commutator(&g[j]);
                if !c.is_identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// True iff the derived series reaches the trivial group.
    pub fn is_solvable(&self) -> bool {
        let n = self.degree;
        if n >= 5 {
            let half: BigUint = (3..=n).map(BigUint::from).product();
            if self.order() >= half {
                // contains the alternating group
                return false;
            }
        }
        let mut current = self.clone();
        loop {
            if current.is_trivial() {
                return true;
            }
            let next = current.derived_subgroup();
            if next.order() == current.order() {
                return false;
            }
            current = next;
        }
    }

    /// Deterministic stream of random elements.
    pub fn random_elements(&self, seed: u64) -> impl Iterator<Item = Permutation> {
        let mut pr = ProductReplacement::new(self.degree, &self.generators, seed);
        std::iter::from_fn(move || Some(pr.next_element()))
    }

    /// For a primitive group containing a prime cycle of length at most
    /// `degree - 3`, the group contains the alternating group (Jordan), so
    /// its order is known from the parity of the generators.
    fn giant_order(&self) -> Option<BigUint> {
        let n = self.degree;
        if n < 8 || !self.is_primitive() {
            return None;
        }
        let found = self.random_elements(DEFAULT_SEED ^ 0x9e37).take(80).any(|g| {
            let ct = g.cycle_type();
            ct.iter().any(|&p| {
                p >= 2
                    && p + 3 <= n
                    && is_prime(p)
                    && ct.iter().filter(|&&c| c == p).count() == 1
                    && ct.iter().all(|&c| c == p || c % p != 0)
            })
        });
        if !found {
            return None;
        }
        let full: BigUint = (1..=n).map(BigUint::from).product();
        if self.generators.iter().all(|g| g.is_even()) {
            Some(full / BigUint::from(2u32))
        } else {
            Some(full)
        }
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn transposition(n: usize, a: usize, b: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.swap(a, b);
    Permutation::from_images(images).expect("transposition")
}

fn cycle(n: usize, points: &[usize]) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for (i, &p) in points.iter().enumerate() {
        images[p] = points[(i + 1) % points.len()];
    }
    Permutation::from_images(images).expect("cycle")
}

/// The orbit of `point` under `generators`, in breadth-first order.
pub fn orbit(degree: usize, generators: &[Permutation], point: usize) -> Result<Vec<usize>> {
    if point >= degree {
        return Err(Error::PointOutOfRange { point, degree });
    }
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut out = vec![point];
    let mut next = 0;
    while next < out.len() {
        let x = out[next];
        next += 1;
        for g in generators {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// All orbits, each sorted, ordered by least point.
pub fn orbits(degree: usize, generators: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut o = orbit(degree, generators, start).expect("point in range");
        for &x in &o {
            seen[x] = true;
        }
        o.sort_unstable();
        out.push(o);
    }
    out
}

/// The smallest block of imprimitivity containing `0` and `b`.
pub(crate) fn minimal_block(degree: usize, generators: &[Permutation], b: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue = vec![(0usize, b)];
    let r0 = find(&mut parent, 0);
    let rb = find(&mut parent, b);
    if r0 != rb {
        parent[rb] = r0;
    }
    while let Some((x, y)) = queue.pop() {
        for g in generators {
            let a = find(&mut parent, g.image(x));
            let c = find(&mut parent, g.image(y));
            if a != c {
                parent[c] = a;
                queue.push((a, c));
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..degree).filter(|&x| find(&mut parent, x) == root).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(images: &[usize]) -> Permutation {
        Permutation::from_images_one_based(images).unwrap()
    }

    #[test]
    fn s4_order_from_two_generators() {
        let g = PermGroup::new(4, vec![p1(&[2, 1, 3, 4]), p1(&[2, 3, 4, 1])]).unwrap();
        assert_eq!(g.order(), BigUint::from(24u32));
        assert!(g.is_k_transitive(4));
        assert!(g.is_solvable());
    }

    #[test]
    fn trivial_group_has_order_one() {
        let g = PermGroup::new(5, vec![Permutation::identity(5)]).unwrap();
        assert_eq!(g.order(), BigUint::one());
        assert!(g.contains(&Permutation::identity(5)).unwrap());
    }

    #[test]
    fn membership() {
        let g = PermGroup::new(3, vec![p1(&[2, 3, 1])]).unwrap();
        assert!(!g.contains(&p1(&[2, 1, 3])).unwrap());
        assert!(g.contains(&p1(&[3, 1, 2])).unwrap());
        assert!(g.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn stabilizers() {
        let c5 = PermGroup::cyclic(5);
        assert!(c5.stabilizer(&[0]).is_trivial());
        let s4 = PermGroup::symmetric(4);
        let h = s4.stabilizer(&[0]);
        assert_eq!(h.order(), BigUint::from(6u32));
        assert!(h.generators().iter().all(|g| g.fixes(0)));
    }

    #[test]
    fn representative_action_cases() {
        let g = PermGroup::new(3, vec![p1(&[2, 3, 1])]).unwrap();
        let r = g.representative_action(0, 2).unwrap();
        assert_eq!(r, p1(&[2, 3, 1]).pow(2));
        let h = PermGroup::new(4, vec![p1(&[2, 1, 3, 4])]).unwrap();
        assert!(h.representative_action(0, 3).is_none());
    }

    #[test]
    fn primitivity() {
        assert!(!PermGroup::cyclic(4).is_primitive());
        assert!(PermGroup::cyclic(3).is_primitive());
        assert!(PermGroup::symmetric(6).is_primitive());
        assert_eq!(minimal_block(4, PermGroup::cyclic(4).generators(), 2), vec![0, 2]);
    }

    #[test]
    fn solvability() {
        assert!(!PermGroup::alternating(5).is_solvable());
        assert!(PermGroup::cyclic(7).is_solvable());
        assert!(!PermGroup::symmetric(6).is_solvable());
    }

    #[test]
    fn k_transitivity() {
        assert!(PermGroup::symmetric(5).is_k_transitive(4));
        assert!(!PermGroup::cyclic(5).is_k_transitive(2));
        assert!(PermGroup::alternating(6).is_k_transitive(4));
        assert!(!PermGroup::alternating(6).is_k_transitive(5));
    }

    #[test]
    fn giant_detected_without_known_order() {
        let gens = PermGroup::alternating(12).generators().to_vec();
        let g = PermGroup::new(12, gens).unwrap();
        assert_eq!(g.order(), BigUint::from(239_500_800u64));
    }

    #[test]
    fn coset_has_subgroup_size() {
        let s4 = PermGroup::symmetric(4);
        let h = s4.stabilizer(&[0]);
        let rep = p1(&[2, 1, 4, 3]);
        let coset = h.right_coset(&rep, 100).unwrap();
        assert_eq!(coset.len(), 6);
        assert!(coset.iter().all(|x| x.image(0) == 1));
    }
}
