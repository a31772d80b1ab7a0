//! Loop isomorphism and reduction of loop lists up to isomorphism.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::loopcore::LoopTable;
use crate::permkernel::Permutation;

/// Isomorphism invariants of a loop.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LoopFingerprint {
    pub order: usize,
    /// Sorted cycle types of the left translations.
    pub row_cycle_types: Vec<Vec<usize>>,
    /// Sorted `(left order, right order)` pairs over all elements.
    pub power_orders: Vec<(u64, u64)>,
    pub idempotents: usize,
    pub involutions: usize,
    pub mlt_order: String,
    pub rmlt_order: String,
}

/// Per-element invariants: an isomorphism maps each element to one with
/// the same profile.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ElementProfile {
    left_order: u64,
    right_order: u64,
    row: Vec<usize>,
    column: Vec<usize>,
}

fn profiles(table: &LoopTable) -> Vec<ElementProfile> {
    let (left, right) = table.power_orders();
    (0..table.order())
        .map(|x| ElementProfile {
            left_order: left[x],
            right_order: right[x],
            row: table.left_translation(x).cycle_type(),
            column: table.right_translation(x).cycle_type(),
        })
        .collect()
}

pub fn fingerprint(table: &LoopTable) -> LoopFingerprint {
    let d = table.order();
    let (left, right) = table.power_orders();
    let mut row_cycle_types: Vec<Vec<usize>> =
        (0..d).map(|x| table.left_translation(x).cycle_type()).collect();
    row_cycle_types.sort_unstable();
    let mut power_orders: Vec<(u64, u64)> = left.into_iter().zip(right).collect();
    power_orders.sort_unstable();
    let (rmlt, mlt) = table.mult_groups();
    LoopFingerprint {
        order: d,
        row_cycle_types,
        power_orders,
        idempotents: (0..d).filter(|&x| table.mul(x, x) == x).count(),
        involutions: (1..d).filter(|&x| table.mul(x, x) == 0).count(),
        mlt_order: mlt.order().to_string(),
        rmlt_order: rmlt.order().to_string(),
    }
}

/// Partial map from the first loop to the second, closed under
/// multiplication on its domain.
#[derive(Clone)]
struct PartialIso {
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    domain: Vec<usize>,
}

impl PartialIso {
    fn new(d: usize) -> Self {
        let mut image = vec![None; d];
        let mut used = vec![false; d];
        image[0] = Some(0);
        used[0] = true;
        Self {
            image,
            used,
            domain: vec![0],
        }
    }

    fn assign(&mut self, x: usize, y: usize, pa: &[ElementProfile], pb: &[ElementProfile]) -> bool {
        match self.image[x] {
            Some(z) => z == y,
            None if self.used[y] || pa[x] != pb[y] => false,
            None => {
                self.image[x] = Some(y);
                self.used[y] = true;
                self.domain.push(x);
                true
            }
        }
    }

    /// Maps `x` to `y` and closes the domain under products; false on any
    /// conflict.
    fn extend(
        &mut self,
        a: &LoopTable,
        b: &LoopTable,
        x: usize,
        y: usize,
        pa: &[ElementProfile],
        pb: &[ElementProfile],
    ) -> bool {
        let start = self.domain.len();
        if !self.assign(x, y, pa, pb) {
            return false;
        }
        // every element from `start` on is paired with all earlier ones and
        // itself, in both orders
        let mut k = start;
        while k < self.domain.len() {
            let u = self.domain[k];
            for j in 0..=k {
                let v = self.domain[j];
                let (fu, fv) = (self.image[u].unwrap(), self.image[v].unwrap());
                if !self.assign(a.mul(u, v), b.mul(fu, fv), pa, pb)
                    || !self.assign(a.mul(v, u), b.mul(fv, fu), pa, pb)
                {
                    return false;
                }
            }
            k += 1;
        }
        true
    }
}

/// Some `phi` with `(i * j) phi = (i phi) * (j phi)`, verified before it is
/// returned. Isomorphisms fix the neutral element.
pub fn find_isomorphism(a: &LoopTable, b: &LoopTable) -> Option<Permutation> {
    if a.order() != b.order() {
        return None;
    }
    let d = a.order();
    if a == b {
        return Some(Permutation::identity(d));
    }
    let (pa, pb) = (profiles(a), profiles(b));
    let mut sorted_a = pa.clone();
    let mut sorted_b = pb.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }
    let mut class_size: BTreeMap<&ElementProfile, usize> = BTreeMap::new();
    for p in &pb {
        *class_size.entry(p).or_default() += 1;
    }
    let state = PartialIso::new(d);
    let phi = search(a, b, &pa, &pb, &class_size, state)?;
    let phi = Permutation::from_images(phi).expect("bijection");
    assert!(
        (0..d).all(|i| (0..d).all(|j| phi.image(a.mul(i, j)) == b.mul(phi.image(i), phi.image(j)))),
        "isomorphism witness failed verification"
    );
    Some(phi)
}

fn search(
    a: &LoopTable,
    b: &LoopTable,
    pa: &[ElementProfile],
    pb: &[ElementProfile],
    class_size: &BTreeMap<&ElementProfile, usize>,
    state: PartialIso,
) -> Option<Vec<usize>> {
    let d = a.order();
    // branch on the unmapped element with the fewest possible images
    let Some(x) = (0..d)
        .filter(|&x| state.image[x].is_none())
        .min_by_key(|&x| (class_size[&pa[x]], x))
    else {
        return Some(state.image.iter().map(|y| y.unwrap()).collect());
    };
    for y in 0..d {
        if state.used[y] || pa[x] != pb[y] {
            continue;
        }
        let mut next = state.clone();
        if next.extend(a, b, x, y, pa, pb) {
            if let Some(phi) = search(a, b, pa, pb, class_size, next) {
                return Some(phi);
            }
        }
    }
    None
}

pub fn are_isomorphic(a: &LoopTable, b: &LoopTable) -> bool {
    find_isomorphism(a, b).is_some()
}

/// One representative per isomorphism class: the least table of the class
/// among the inputs. Output is sorted.
pub fn filter_up_to_isomorphism(loops: &[LoopTable]) -> Vec<LoopTable> {
    let mut sorted: Vec<&LoopTable> = loops.iter().collect();
    sorted.sort_unstable();
    sorted.dedup();
    let mut buckets: BTreeMap<LoopFingerprint, Vec<&LoopTable>> = BTreeMap::new();
    for table in sorted {
        let reps = buckets.entry(fingerprint(table)).or_default();
        if !reps.iter().any(|r| are_isomorphic(r, table)) {
            reps.push(table);
        }
    }
    let mut out: Vec<LoopTable> = buckets.into_values().flatten().cloned().collect();
    out.sort_unstable();
    out
}
