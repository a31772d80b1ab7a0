//! Permutations of `{0, .., d-1}` acting on the right.
//!
//! Points are 0-based inside the crate; every external format (cycle
//! notation, loop JSON) is 1-based. Composition is left to right:
//! `p.then(&q)` maps `k` to `(k p) q`, so `1 r_i r_j = i r_j` reads literally.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A bijection of `{0, .., degree-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub const MAX_DEGREE: usize = u16::MAX as usize;

    pub fn identity(degree: usize) -> Self {
        assert!(degree <= Self::MAX_DEGREE, "degree {degree} too large");
        Self {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        if degree > Self::MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {degree} too large")));
        }
        let mut seen = vec![false; degree];
        for &k in &images {
            if k >= degree {
                return Err(Error::PointOutOfRange { point: k, degree });
            }
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidPermutation(format!("image {k} repeated")));
            }
        }
        Ok(Self {
            images: images.into_iter().map(|k| k as u16).collect(),
        })
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images_one_based(images: &[usize]) -> Result<Self> {
        let zero = images
            .iter()
            .map(|&k| {
                k.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation("point 0 in 1-based images".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(zero)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&k| k as usize + 1).collect()
    }

    /// `self` followed by `other`, with a degree check.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// `self` followed by `other`. Degrees must agree.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let o = &other.images;
        Permutation {
            images: self.images.iter().map(|&k| o[k as usize]).collect(),
        }
    }

    /// `self` followed by the inverse of `other`, i.e. `self * other^-1`.
    pub fn then_inverse(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let mut inv = vec![0u16; other.degree()];
        for (k, &v) in other.images.iter().enumerate() {
            inv[v as usize] = k as u16;
        }
        Permutation {
            images: self.images.iter().map(|&k| inv[k as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v as usize] = k as u16;
        }
        Permutation { images: inv.into() }
    }

    /// `h^-1 self h`, the conjugate written `self^h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), h.degree());
        let mut out = vec![0u16; self.degree()];
        for (k, &v) in self.images.iter().enumerate() {
            out[h.images[k] as usize] = h.images[v as usize];
        }
        Permutation { images: out.into() }
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    pub fn pow(&self, exp: u128) -> Permutation {
        let mut out = Permutation::identity(self.degree());
        for cycle in self.cycles() {
            let len = cycle.len() as u128;
            let shift = (exp % len) as usize;
            for (pos, &k) in cycle.iter().enumerate() {
                out_set(&mut out, k, cycle[(pos + shift) % cycle.len()]);
            }
        }
        out
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    #[inline]
    pub fn fixes(&self, point: usize) -> bool {
        self.images[point] as usize == point
    }

    /// True iff no point is fixed (a derangement).
    #[inline]
    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| k != v as usize)
    }

    /// True iff `self * other^-1` is fixed-point-free, i.e. the two
    /// permutations disagree on every point.
    #[inline]
    pub fn differs_everywhere(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .all(|(a, b)| a != b)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(k, &v)| k != v as usize)
            .map(|(k, _)| k)
    }

    pub fn moved_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(k, &v)| k != v as usize)
            .count()
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.fixes(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut k = self.image(start);
            while k != start {
                seen[k] = true;
                cycle.push(k);
                k = self.image(k);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted multiset of all cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                len += 1;
                k = self.image(k);
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    pub fn order(&self) -> u128 {
        self.cycle_type()
            .into_iter()
            .fold(1u128, |acc, len| acc.lcm(&(len as u128)))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

fn out_set(p: &mut Permutation, k: usize, v: usize) {
    p.images[k] = v as u16;
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::catalog::format_cycles(self))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::catalog::format_cycles(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(images: &[usize]) -> Permutation {
        Permutation::from_images_one_based(images).unwrap()
    }

    #[test]
    fn identity_then_p_is_p() {
        let p = p1(&[2, 3, 1, 5, 4]);
        assert_eq!(Permutation::identity(5).then(&p), p);
        assert_eq!(p.then(&p.inverse()), Permutation::identity(5));
    }

    #[test]
    fn compose_is_left_to_right() {
        // (1 2 3) then (1 2): 1 -> 2 -> 1, 2 -> 3 -> 3, 3 -> 1 -> 2
        let p = p1(&[2, 3, 1]);
        let q = p1(&[2, 1, 3]);
        assert_eq!(p.compose(&q).unwrap().images_one_based(), vec![1, 3, 2]);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = Permutation::identity(3).compose(&Permutation::identity(4));
        assert!(matches!(err, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn fixed_point_free_examples() {
        assert!(!Permutation::identity(5).is_fixed_point_free());
        assert!(p1(&[2, 1, 4, 3]).is_fixed_point_free());
        assert!(!p1(&[2, 1, 3]).is_fixed_point_free());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn conjugation_matches_definition() {
        let p = p1(&[2, 3, 1, 4]);
        let h = p1(&[1, 2, 4, 3]);
        assert_eq!(p.conjugate_by(&h), h.inverse().then(&p).then(&h));
    }

    #[test]
    fn order_and_cycles() {
        let p = p1(&[2, 3, 1, 5, 4, 6]);
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycles(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(p.cycle_type(), vec![1, 2, 3]);
        assert_eq!(p.pow(3), p1(&[1, 2, 3, 5, 4, 6]));
        assert!(!p.is_even());
    }

    #[test]
    fn differs_everywhere_is_quotient_fpf() {
        let p = p1(&[2, 3, 1]);
        let q = p1(&[3, 1, 2]);
        assert!(p.differs_everywhere(&q));
        assert_eq!(
            p.differs_everywhere(&q),
            p.then_inverse(&q).is_fixed_point_free()
        );
        assert!(!p.differs_everywhere(&p));
    }
}
