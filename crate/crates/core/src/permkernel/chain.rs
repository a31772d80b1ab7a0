//! Stabilizer chains (bases and strong generating sets) via Schreier-Sims.
//!
//! Two construction paths share one builder:
//! - with a known group order, random Schreier-Sims runs until the chain
//!   reaches that order (every sifted element lies in the group, so reaching
//!   the order certifies completeness);
//! - without one, a short random phase seeds the chain and the deterministic
//!   Schreier generator check completes it.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use super::perm::Permutation;
use super::random::{ProductReplacement, DEFAULT_SEED};

/// One level of a stabilizer chain: the basic orbit of `base` under the
/// pointwise stabilizer of all earlier base points, with explicit
/// transversal elements.
#[derive(Clone, Debug)]
pub struct ChainLevel {
    base: usize,
    generators: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

impl ChainLevel {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        inverse[base] = Some(Permutation::identity(degree));
        Self {
            base,
            generators: Vec::new(),
            orbit: vec![base],
            transversal,
            inverse,
        }
    }

    pub fn base_point(&self) -> usize {
        self.base
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn in_orbit(&self, point: usize) -> bool {
        self.transversal[point].is_some()
    }

    /// Transversal element `u` with `base * u = point`.
    pub fn transversal(&self, point: usize) -> Option<&Permutation> {
        self.transversal[point].as_ref()
    }

    pub fn transversal_inverse(&self, point: usize) -> Option<&Permutation> {
        self.inverse[point].as_ref()
    }

    fn add_generator(&mut self, g: Permutation) {
        let old_len = self.orbit.len();
        for idx in 0..old_len {
            let from = self.orbit[idx];
            let to = g.image(from);
            if self.transversal[to].is_none() {
                self.discover(from, to, &g);
            }
        }
        self.generators.push(g);
        let mut next = old_len;
        while next < self.orbit.len() {
            let from = self.orbit[next];
            next += 1;
            for gi in 0..self.generators.len() {
                let to = self.generators[gi].image(from);
                if self.transversal[to].is_none() {
                    let gen = self.generators[gi].clone();
                    self.discover(from, to, &gen);
                }
            }
        }
    }

    fn discover(&mut self, from: usize, to: usize, g: &Permutation) {
        let u = self.transversal[from]
            .as_ref()
            .expect("orbit point has a transversal")
            .then(g);
        self.inverse[to] = Some(u.inverse());
        self.transversal[to] = Some(u);
        self.orbit.push(to);
    }
}

impl AsRef<ChainLevel> for ChainLevel {
    fn as_ref(&self) -> &ChainLevel {
        self
    }
}

/// A base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Arc<ChainLevel>>,
}

impl StabChain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Arc<ChainLevel>] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.order_from(0)
    }

    /// Order of the pointwise stabilizer of the first `depth` base points.
    pub fn order_from(&self, depth: usize) -> BigUint {
        self.levels[depth.min(self.levels.len())..]
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strips `g` through the levels starting at `start`. Returns the residue
    /// and the index of the level where stripping stopped (`levels.len()` if
    /// it passed all of them).
    pub fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        sift(&self.levels, g, start)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (residue, depth) = self.sift_from(g, 0);
        depth == self.levels.len() && residue.is_identity()
    }

    /// Strong generators of the stabilizer of the first `depth` base points.
    pub fn generators_from(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map(|l| l.generators.clone())
            .unwrap_or_default()
    }

    /// The chain of the stabilizer of the first `depth` base points.
    pub fn subchain(&self, depth: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels[depth.min(self.levels.len())..].to_vec(),
        }
    }

    /// Every group element exactly once, in a fixed order.
    pub fn elements(&self) -> ChainElements<'_> {
        ChainElements::new(self)
    }
}

fn sift<L: AsRef<ChainLevel>>(
    levels: &[L],
    g: &Permutation,
    start: usize,
) -> (Permutation, usize) {
    let mut g = g.clone();
    for (i, level) in levels.iter().enumerate().skip(start) {
        let level = level.as_ref();
        let b = g.image(level.base);
        match &level.inverse[b] {
            Some(inv) => {
                if b != level.base {
                    g = g.then(inv);
                }
            }
            None => return (g, i),
        }
    }
    (g, levels.len())
}

/// Enumerates products `u_{m-1} ... u_1 u_0` of transversal elements.
pub struct ChainElements<'a> {
    chain: &'a StabChain,
    indices: Vec<usize>,
    done: bool,
}

impl<'a> ChainElements<'a> {
    fn new(chain: &'a StabChain) -> Self {
        Self {
            chain,
            indices: vec![0; chain.levels.len()],
            done: false,
        }
    }
}

impl Iterator for ChainElements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let levels = &self.chain.levels;
        let mut g = Permutation::identity(self.chain.degree);
        for (level, &idx) in levels.iter().zip(&self.indices).rev() {
            let point = level.orbit[idx];
            g = g.then(level.transversal[point].as_ref().unwrap());
        }
        // odometer, fastest digit at the deepest level
        let mut pos = levels.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.indices[pos] += 1;
            if self.indices[pos] < levels[pos].orbit.len() {
                break;
            }
            self.indices[pos] = 0;
        }
        Some(g)
    }
}

/// Incremental chain construction.
pub(crate) struct ChainBuilder {
    degree: usize,
    levels: Vec<ChainLevel>,
    rank: Option<Vec<usize>>,
}

impl ChainBuilder {
    /// `prefix` points become the first base points even if their basic
    /// orbits stay trivial. Further base points are the first moved point of
    /// a residue, in `preference` order when given, else smallest first.
    pub fn new(degree: usize, prefix: &[usize], preference: Option<&[usize]>) -> Self {
        let rank = preference.map(|order| {
            let mut rank = vec![usize::MAX; degree];
            for (r, &p) in order.iter().enumerate() {
                if rank[p] == usize::MAX {
                    rank[p] = r;
                }
            }
            let mut next = order.len();
            for r in rank.iter_mut() {
                if *r == usize::MAX {
                    *r = next;
                    next += 1;
                }
            }
            rank
        });
        Self {
            degree,
            levels: prefix.iter().map(|&b| ChainLevel::new(degree, b)).collect(),
            rank,
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    fn sift(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        sift(&self.levels, g, start)
    }

    /// Sifts `g` and adds its residue as a strong generator if it is not
    /// absorbed. Returns true if the chain changed.
    pub fn sift_and_add(&mut self, g: &Permutation) -> bool {
        let (residue, depth) = self.sift(g, 0);
        if depth == self.levels.len() && residue.is_identity() {
            return false;
        }
        self.add_residue(residue, depth);
        true
    }

    /// True if `g` is certainly in the group of the current (possibly
    /// incomplete) chain.
    pub fn absorbs(&self, g: &Permutation) -> bool {
        let (residue, depth) = self.sift(g, 0);
        depth == self.levels.len() && residue.is_identity()
    }

    fn new_base_point(&self, h: &Permutation) -> usize {
        match &self.rank {
            None => h.first_moved_point().expect("non-identity residue"),
            Some(rank) => (0..self.degree)
                .filter(|&k| !h.fixes(k))
                .min_by_key(|&k| rank[k])
                .expect("non-identity residue"),
        }
    }

    fn add_residue(&mut self, h: Permutation, depth: usize) {
        let depth = if depth == self.levels.len() {
            let b = self.new_base_point(&h);
            self.levels.push(ChainLevel::new(self.degree, b));
            self.levels.len() - 1
        } else {
            depth
        };
        for level in &mut self.levels[..=depth] {
            level.add_generator(h.clone());
        }
    }

    /// Random phase: stops when `target` is reached or after `patience`
    /// consecutive absorbed elements. Returns false if a target was given
    /// and not reached.
    pub fn random_phase(
        &mut self,
        generators: &[Permutation],
        target: Option<&BigUint>,
        patience: usize,
        seed: u64,
    ) -> bool {
        for g in generators {
            self.sift_and_add(g);
        }
        let reached = |b: &Self| target.is_some_and(|t| &b.order() >= t);
        if reached(self) {
            return true;
        }
        let mut pr = ProductReplacement::new(self.degree, generators, seed);
        let mut quiet = 0usize;
        while quiet < patience {
            let g = pr.next_element();
            if self.sift_and_add(&g) {
                quiet = 0;
                if reached(self) {
                    return true;
                }
            } else {
                quiet += 1;
            }
        }
        target.is_none()
    }

    /// Deterministic completion: every Schreier generator of every level
    /// must sift through the levels below it.
    pub fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let mut restart = None;
            let orbit = self.levels[li].orbit.clone();
            let gens = self.levels[li].generators.clone();
            'scan: for &beta in &orbit {
                let u = self.levels[li].transversal[beta].clone().unwrap();
                for x in &gens {
                    let target = x.image(beta);
                    let s = u
                        .then(x)
                        .then(self.levels[li].inverse[target].as_ref().unwrap());
                    if s.is_identity() {
                        continue;
                    }
                    let (h, depth) = self.sift(&s, li + 1);
                    if depth < self.levels.len() || !h.is_identity() {
                        let at = if depth == self.levels.len() {
                            self.levels.len()
                        } else {
                            depth
                        };
                        self.add_residue(h, depth);
                        restart = Some(at);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(at) => i = at as isize,
                None => i -= 1,
            }
        }
    }

    pub fn finish(self) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels.into_iter().map(Arc::new).collect(),
        }
    }
}

/// Builds a chain for `⟨generators⟩`. With `known_order` the random phase
/// is certified by reaching it; if it is not reached the deterministic
/// completion runs and the computed order wins.
pub(crate) fn build_chain(
    degree: usize,
    generators: &[Permutation],
    prefix: &[usize],
    preference: Option<&[usize]>,
    known_order: Option<&BigUint>,
) -> StabChain {
    let mut builder = ChainBuilder::new(degree, prefix, preference);
    match known_order {
        Some(order) => {
            if !builder.random_phase(generators, Some(order), 4000, DEFAULT_SEED) {
                builder.complete();
                if &builder.order() != order {
                    log::warn!(
                        "claimed group order {order} disagrees with computed {}",
                        builder.order()
                    );
                }
            }
        }
        None => {
            builder.random_phase(generators, None, 24, DEFAULT_SEED);
            builder.complete();
        }
    }
    builder.finish()
}
