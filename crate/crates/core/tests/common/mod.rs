#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use loopforge_core::{PermGroup, Permutation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_perm(degree: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// A group of the given degree generated by `count` random permutations.
pub fn random_group(degree: usize, count: usize, rng: &mut ChaCha8Rng) -> PermGroup {
    let gens = (0..count).map(|_| random_perm(degree, rng)).collect();
    PermGroup::new(degree, gens).unwrap()
}

/// Random small groups, including intransitive and imprimitive ones: a
/// random permutation of small support mixed with a random element.
pub fn small_groups(count: usize, seed: u64) -> Vec<PermGroup> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let degree = 3 + k % 5;
            let mut gens = vec![random_perm(degree, &mut r)];
            if k % 3 != 0 {
                gens.push(random_perm(degree, &mut r));
            }
            if k % 4 == 0 {
                let mut images: Vec<usize> = (0..degree).collect();
                images.swap(0, 1);
                gens.push(Permutation::from_images(images).unwrap());
            }
            PermGroup::new(degree, gens).unwrap()
        })
        .collect()
}

pub fn perm(images: &[usize]) -> Permutation {
    Permutation::from_images_one_based(images).unwrap()
}
