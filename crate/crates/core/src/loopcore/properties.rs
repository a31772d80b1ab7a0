use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use super::LoopTable;
use crate::permkernel::Permutation;

/// Generators of the inner mapping group, each fixing the neutral element.
#[derive(Clone, Debug)]
pub struct InnerGenerators {
    /// `R_{x,y} = R_x R_y R_{xy}^-1`, indexed `x * d + y`.
    pub right: Vec<Permutation>,
    /// `L_{x,y} = L_x L_y L_{yx}^-1`, indexed `x * d + y`.
    pub left: Vec<Permutation>,
    /// `T_x = R_x L_x^-1`.
    pub middle: Vec<Permutation>,
}

impl InnerGenerators {
    pub fn all(&self) -> impl Iterator<Item = &Permutation> {
        self.right.iter().chain(&self.left).chain(&self.middle)
    }

    /// Each distinct non-identity generator once, in first-seen order.
    pub fn distinct(&self) -> Vec<Permutation> {
        distinct(self.all())
    }
}

fn distinct<'a>(perms: impl Iterator<Item = &'a Permutation>) -> Vec<Permutation> {
    let mut seen = HashSet::new();
    perms
        .filter(|p| !p.is_identity() && seen.insert((*p).clone()))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopProperties {
    pub associative: bool,
    pub commutative: bool,
    pub flexible: bool,
    /// `(xy)^-1 = y^-1 x^-1`; false when inverses are not two-sided.
    pub aaip: bool,
    pub has_two_sided_inverses: bool,
    /// Least `n` with `x^n = 1` for all `x`, powers bracketed to the left
    /// (`x^(k+1) = x^k * x`).
    pub left_exponent: u64,
    /// Whether left- and right-bracketed powers give every element the same
    /// order.
    pub powers_agree: bool,
    /// `left_exponent` when the two bracketings agree, else `None`.
    pub exponent: Option<u64>,
}

impl LoopTable {
    pub fn inner_generators(&self) -> InnerGenerators {
        let d = self.order();
        let (rights, lefts) = self.translations();
        let mut right = Vec::with_capacity(d * d);
        let mut left = Vec::with_capacity(d * d);
        for x in 0..d {
            for y in 0..d {
                right.push(rights[x].then(&rights[y]).then_inverse(&rights[self.mul(x, y)]));
                left.push(lefts[x].then(&lefts[y]).then_inverse(&lefts[self.mul(y, x)]));
            }
        }
        let middle = (0..d).map(|x| rights[x].then_inverse(&lefts[x])).collect();
        InnerGenerators {
            right,
            left,
            middle,
        }
    }

    fn all_automorphisms<'a>(&self, perms: impl Iterator<Item = &'a Permutation>) -> bool {
        distinct(perms).iter().all(|p| self.is_automorphism(p))
    }

    /// Every right inner mapping `R_{x,y}` is an automorphism.
    pub fn is_right_automorphic(&self) -> bool {
        self.all_automorphisms(self.inner_generators().right.iter())
    }

    /// Every inner mapping is an automorphism (checked on all generators).
    pub fn is_automorphic(&self) -> bool {
        self.all_automorphisms(self.inner_generators().all())
    }

    /// Right automorphic and every conjugation `T_x` an automorphism; equal
    /// to [`Self::is_automorphic`] for every loop.
    pub fn is_automorphic_via_conjugations(&self) -> bool {
        let inner = self.inner_generators();
        self.all_automorphisms(inner.right.iter()) && self.all_automorphisms(inner.middle.iter())
    }

    /// Every conjugation `T_x` is an automorphism.
    pub fn conjugations_are_automorphisms(&self) -> bool {
        self.all_automorphisms(self.inner_generators().middle.iter())
    }

    pub fn is_associative(&self) -> bool {
        let d = self.order();
        (0..d).all(|x| {
            (0..d).all(|y| {
                let xy = self.mul(x, y);
                (0..d).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.order();
        (0..d).all(|x| (x + 1..d).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// `xy * x = x * yx`.
    pub fn is_flexible(&self) -> bool {
        let d = self.order();
        (0..d).all(|x| (0..d).all(|y| self.mul(self.mul(x, y), x) == self.mul(x, self.mul(y, x))))
    }

    /// Two-sided inverses, if every element has one.
    pub fn inverses(&self) -> Option<Vec<usize>> {
        (0..self.order())
            .map(|x| {
                let r = self.left_div(x, 0);
                (self.mul(r, x) == 0).then_some(r)
            })
            .collect()
    }

    pub fn has_aaip(&self) -> bool {
        let Some(inv) = self.inverses() else {
            return false;
        };
        let d = self.order();
        (0..d).all(|x| (0..d).all(|y| inv[self.mul(x, y)] == self.mul(inv[y], inv[x])))
    }

    /// Orders of every element under left- and right-bracketed powers.
    pub(crate) fn power_orders(&self) -> (Vec<u64>, Vec<u64>) {
        let d = self.order();
        let cycle_through_one = |step: &dyn Fn(usize) -> usize| {
            let mut k = 1u64;
            let mut y = step(0);
            while y != 0 {
                y = step(y);
                k += 1;
            }
            k
        };
        let left = (0..d).map(|x| cycle_through_one(&|y| self.mul(y, x))).collect();
        let right = (0..d).map(|x| cycle_through_one(&|y| self.mul(x, y))).collect();
        (left, right)
    }

    pub fn properties(&self) -> LoopProperties {
        let (left, right) = self.power_orders();
        let left_exponent = left.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        let powers_agree = left == right;
        let inverses = self.inverses();
        LoopProperties {
            associative: self.is_associative(),
            commutative: self.is_commutative(),
            flexible: self.is_flexible(),
            aaip: self.has_aaip(),
            has_two_sided_inverses: inverses.is_some(),
            left_exponent,
            powers_agree,
            exponent: powers_agree.then_some(left_exponent),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> LoopTable {
        LoopTable::cyclic(2).direct_product(&LoopTable::cyclic(2))
    }

    #[test]
    fn group_properties() {
        let p = klein().properties();
        assert!(p.associative && p.commutative && p.flexible && p.aaip);
        assert_eq!(p.exponent, Some(2));
        assert_eq!(LoopTable::cyclic(6).properties().exponent, Some(6));
    }

    #[test]
    fn inner_generators_of_abelian_group_are_trivial() {
        let inner = LoopTable::cyclic(5).inner_generators();
        assert!(inner.all().all(|p| p.is_identity()));
        assert!(inner.distinct().is_empty());
    }

    #[test]
    fn inner_generators_fix_the_neutral_element() {
        // smallest non-associative loop, order 5
        let rows = vec![
            vec![1, 2, 3, 4, 5],
            vec![2, 1, 4, 5, 3],
            vec![3, 5, 1, 2, 4],
            vec![4, 3, 5, 1, 2],
            vec![5, 4, 2, 3, 1],
        ];
        let l = LoopTable::from_rows(&rows).unwrap();
        assert!(!l.is_associative());
        assert!(l.inner_generators().all().all(|p| p.fixes(0)));
        assert!(!l.is_automorphic());
        assert_eq!(l.is_automorphic(), l.is_automorphic_via_conjugations());
    }

    #[test]
    fn groups_are_automorphic() {
        let s3 = symmetric_group_table();
        assert!(s3.is_right_automorphic());
        assert!(s3.is_automorphic());
        assert!(s3.is_automorphic_via_conjugations());
        assert!(!s3.is_commutative());
    }

    fn symmetric_group_table() -> LoopTable {
        let elems: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![1, 0, 2],
            vec![0, 2, 1],
            vec![2, 1, 0],
        ];
        let idx = |p: &Vec<usize>| elems.iter().position(|q| q == p).unwrap();
        let rows: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| idx(&a.iter().map(|&k| b[k]).collect()) + 1)
                    .collect()
            })
            .collect();
        LoopTable::from_rows(&rows).unwrap()
    }
}
