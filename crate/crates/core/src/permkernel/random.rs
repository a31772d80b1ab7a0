//! Seeded product-replacement random elements ("rattle" variant).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::perm::Permutation;

pub(crate) const DEFAULT_SEED: u64 = 0x6c6f_6f70_666f_7267;

pub(crate) struct ProductReplacement {
    slots: Vec<Permutation>,
    accumulator: Permutation,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    pub fn new(degree: usize, generators: &[Permutation], seed: u64) -> Self {
        let mut slots: Vec<Permutation> = generators.to_vec();
        if slots.is_empty() {
            slots.push(Permutation::identity(degree));
        }
        let base = slots.clone();
        while slots.len() < 10.max(2 * base.len()) {
            let next = base[slots.len() % base.len()].clone();
            slots.push(next);
        }
        let mut pr = Self {
            slots,
            accumulator: Permutation::identity(degree),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..60 {
            pr.next_element();
        }
        pr
    }

    pub fn next_element(&mut self) -> Permutation {
        let n = self.slots.len();
        let i = self.rng.random_range(0..n);
        let mut j = self.rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let updated = if self.rng.random_bool(0.5) {
            self.slots[i].then(&self.slots[j])
        } else {
            self.slots[j].then(&self.slots[i])
        };
        self.slots[i] = updated;
        self.accumulator = self.accumulator.then(&self.slots[i]);
        self.accumulator.clone()
    }
}
