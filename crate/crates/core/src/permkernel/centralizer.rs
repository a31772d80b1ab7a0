//! Centralizers by backtrack search over a stabilizer chain.
//!
//! An element centralizing `K` is determined on a whole `K`-orbit by the
//! image of one point of it (`(x k) g = (x g) k`), so the base of `G` is
//! taken along `K`-orbits and most base images end up forced. A branch is
//! cut as soon as some forced image leaves the orbit structure allowed by
//! the remaining coset of the chain.

use num_bigint::BigUint;

use super::chain::StabChain;
use super::group::{orbits, PermGroup};
use super::perm::Permutation;
use crate::error::Result;

const UNSET: u16 = u16::MAX;

impl PermGroup {
    /// `C_G(K) = {g in G : g k = k g for all generators k of K}`.
    pub fn centralizer(&self, k: &PermGroup) -> PermGroup {
        if k.is_trivial() || self.is_trivial() {
            return self.clone();
        }
        let search = Search::new(self, k.generators());
        search.run()
    }

    /// The centralizer by filtering all elements; for cross-checks and small
    /// groups.
    pub fn centralizer_by_enumeration(&self, k: &PermGroup, limit: u64) -> Result<PermGroup> {
        let kept: Vec<Permutation> = self
            .elements(limit)?
            .into_iter()
            .filter(|g| commutes_with_all(g, k.generators()))
            .collect();
        let order = BigUint::from(kept.len());
        Ok(PermGroup::from_generators(self.degree(), kept).with_known_order(order))
    }
}

pub(crate) fn commutes_with_all(g: &Permutation, gens: &[Permutation]) -> bool {
    gens.iter().all(|k| g.then(k) == k.then(g))
}

struct KOrbits {
    /// orbit index of each point
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    /// `word[x]` maps the first point of `x`'s orbit to `x`
    word: Vec<Permutation>,
}

impl KOrbits {
    fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut orbit_of = vec![usize::MAX; degree];
        let mut word = vec![Permutation::identity(degree); degree];
        let mut found: Vec<Vec<usize>> = Vec::new();
        for start in 0..degree {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let idx = found.len();
            orbit_of[start] = idx;
            let mut orbit = vec![start];
            let mut next = 0;
            while next < orbit.len() {
                let x = orbit[next];
                next += 1;
                for g in gens {
                    let y = g.image(x);
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = idx;
                        word[y] = word[x].then(g);
                        orbit.push(y);
                    }
                }
            }
            found.push(orbit);
        }
        Self {
            orbit_of,
            orbits: found,
            word,
        }
    }

    /// Points in breadth-first order inside orbits, largest orbits first.
    fn preference(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.orbits.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(self.orbits[i].len()), self.orbits[i][0]));
        order
            .into_iter()
            .flat_map(|i| self.orbits[i].iter().copied())
            .collect()
    }
}

struct Search<'a> {
    degree: usize,
    k_gens: &'a [Permutation],
    korb: KOrbits,
    chain: StabChain,
    /// `level_orbit[l][x]`: orbit id of `x` under the stabilizer at depth `l`
    level_orbit: Vec<Vec<u16>>,
}

struct Partial {
    img: Vec<u16>,
    used: Vec<bool>,
    log: Vec<usize>,
}

impl Partial {
    fn new(degree: usize) -> Self {
        Self {
            img: vec![UNSET; degree],
            used: vec![false; degree],
            log: Vec::new(),
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.log.len() > mark {
            let x = self.log.pop().unwrap();
            self.used[self.img[x] as usize] = false;
            self.img[x] = UNSET;
        }
    }
}

impl<'a> Search<'a> {
    fn new(group: &PermGroup, k_gens: &'a [Permutation]) -> Self {
        let degree = group.degree();
        let korb = KOrbits::new(degree, k_gens);
        let preference = korb.preference();
        let chain = group.chain_with_base(&[], Some(&preference));
        let m = chain.levels().len();
        let mut level_orbit = Vec::with_capacity(m + 1);
        for l in 0..=m {
            let gens = chain.generators_from(l);
            let mut ids = vec![0u16; degree];
            for (id, orbit) in orbits(degree, &gens).iter().enumerate() {
                for &x in orbit {
                    ids[x] = id as u16;
                }
            }
            level_orbit.push(ids);
        }
        Self {
            degree,
            k_gens,
            korb,
            chain,
            level_orbit,
        }
    }

    /// Assigns `x -> y` and, by equivariance, the whole `K`-orbit of `x`.
    /// Returns false (leaving `p` unchanged) on any inconsistency.
    fn assign_orbit(&self, p: &mut Partial, x: usize, y: usize) -> bool {
        if p.img[x] != UNSET {
            return p.img[x] as usize == y;
        }
        let oi = self.korb.orbit_of[x];
        let orbit = &self.korb.orbits[oi];
        if self.korb.orbits[self.korb.orbit_of[y]].len() != orbit.len() {
            return false;
        }
        let mark = p.log.len();
        // image of the orbit's first point: y * word[x]^-1
        let first_img = self.korb.word[x].inverse().image(y);
        for &z in orbit {
            let t = self.korb.word[z].image(first_img);
            if p.used[t] {
                p.undo_to(mark);
                return false;
            }
            p.img[z] = t as u16;
            p.used[t] = true;
            p.log.push(z);
        }
        let consistent = orbit.iter().all(|&z| {
            self.k_gens
                .iter()
                .all(|k| p.img[k.image(z)] as usize == k.image(p.img[z] as usize))
        });
        if !consistent {
            p.undo_to(mark);
        }
        consistent
    }

    /// Every assigned image must stay reachable from the coset
    /// `G^(depth) * P`.
    fn feasible(&self, p: &Partial, depth: usize, p_inv: &Permutation) -> bool {
        let ids = &self.level_orbit[depth];
        p.log
            .iter()
            .all(|&z| ids[z] == ids[p_inv.image(p.img[z] as usize)])
    }

    /// Finds one element of `G^(depth) * pp` agreeing with the partial map.
    fn extend(
        &self,
        p: &mut Partial,
        depth: usize,
        pp: &Permutation,
        pp_inv: &Permutation,
    ) -> Option<Permutation> {
        let levels = self.chain.levels();
        if depth == levels.len() {
            return commutes_with_all(pp, self.k_gens).then(|| pp.clone());
        }
        let level = &levels[depth];
        let b = level.base_point();
        let candidates: Vec<usize> = if p.img[b] != UNSET {
            vec![p.img[b] as usize]
        } else {
            let mut c: Vec<usize> = level.orbit().iter().map(|&x| pp.image(x)).collect();
            c.sort_unstable();
            c
        };
        for y in candidates {
            let x = pp_inv.image(y);
            let Some(u) = level.transversal(x) else {
                continue;
            };
            let mark = p.log.len();
            if !self.assign_orbit(p, b, y) {
                continue;
            }
            let next = u.then(pp);
            let next_inv = pp_inv.then(level.transversal_inverse(x).unwrap());
            if self.feasible(p, depth + 1, &next_inv) {
                if let Some(g) = self.extend(p, depth + 1, &next, &next_inv) {
                    p.undo_to(mark);
                    return Some(g);
                }
            }
            p.undo_to(mark);
        }
        None
    }

    fn run(self) -> PermGroup {
        let n = self.degree;
        let levels = self.chain.levels();
        let m = levels.len();
        let base = self.chain.base();
        let mut found: Vec<Permutation> = Vec::new();
        let mut order = BigUint::from(1u32);
        for depth in (0..m).rev() {
            let level = &levels[depth];
            let b = base[depth];
            let mut reached = orbit_under(n, &found, b);
            let mut failed = vec![false; n];
            let mut p = Partial::new(n);
            let fixed_ok = base[..depth].iter().all(|&bi| self.assign_orbit(&mut p, bi, bi));
            debug_assert!(fixed_ok);
            if p.img[b] == UNSET {
                let mut targets: Vec<usize> = level.orbit().to_vec();
                targets.sort_unstable();
                for gamma in targets {
                    if reached[gamma] || failed[gamma] {
                        continue;
                    }
                    let mark = p.log.len();
                    let mut hit = None;
                    if self.assign_orbit(&mut p, b, gamma) {
                        let u = level.transversal(gamma).unwrap();
                        let u_inv = level.transversal_inverse(gamma).unwrap();
                        if self.feasible(&p, depth + 1, u_inv) {
                            hit = self.extend(&mut p, depth + 1, u, u_inv);
                        }
                    }
                    p.undo_to(mark);
                    match hit {
                        Some(g) => {
                            found.push(g);
                            reached = orbit_under(n, &found, b);
                        }
                        None => {
                            for x in orbit_list(n, &found, gamma) {
                                failed[x] = true;
                            }
                        }
                    }
                }
            }
            order *= BigUint::from(reached.iter().filter(|&&r| r).count());
        }
        PermGroup::from_generators(n, found).with_known_order(order)
    }
}

fn orbit_list(n: usize, gens: &[Permutation], point: usize) -> Vec<usize> {
    super::group::orbit(n, gens, point).expect("point in range")
}

fn orbit_under(n: usize, gens: &[Permutation], point: usize) -> Vec<bool> {
    let mut mask = vec![false; n];
    for x in orbit_list(n, gens, point) {
        mask[x] = true;
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(images: &[usize]) -> Permutation {
        Permutation::from_images_one_based(images).unwrap()
    }

    #[test]
    fn centralizer_of_trivial_is_whole_group() {
        let s4 = PermGroup::symmetric(4);
        let c = s4.centralizer(&PermGroup::trivial(4));
        assert_eq!(c.order(), BigUint::from(24u32));
    }

    #[test]
    fn symmetric_group_is_centerless() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.centralizer(&s3).order(), BigUint::from(1u32));
    }

    #[test]
    fn centralizer_of_a_transposition_in_s5() {
        let s5 = PermGroup::symmetric(5);
        let t = PermGroup::new(5, vec![p1(&[2, 1, 3, 4, 5])]).unwrap();
        let c = s5.centralizer(&t);
        // (1 2) x S_3
        assert_eq!(c.order(), BigUint::from(12u32));
        let brute = s5.centralizer_by_enumeration(&t, 1000).unwrap();
        assert_eq!(brute.order(), c.order());
        assert!(c.generators().iter().all(|g| commutes_with_all(g, t.generators())));
    }

    #[test]
    fn centralizer_of_regular_cycle_is_itself() {
        let s6 = PermGroup::symmetric(6);
        let c6 = PermGroup::cyclic(6);
        assert_eq!(s6.centralizer(&c6).order(), BigUint::from(6u32));
    }
}
