//! Conditions under which a group cannot carry a loop of the wanted kind.

use serde::Serialize;

use super::{Mode, SearchOptions, SearchTarget, SkipReason};
use crate::permkernel::{MinClassSize, PermGroup};

/// The checks that were run, in order, and what they found. Checks after
/// the first applicable skip are not run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Prefilter {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub four_transitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solvable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine: Option<AffineCheck>,
    pub forced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineCheck {
    /// Largest orbit of the stabilizer.
    pub gamma: u64,
    pub stabilizer_order: String,
    pub outcome: AffineOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum AffineOutcome {
    /// Some nontrivial class has at most `gamma` elements: no prune.
    SmallClass { size: u64 },
    /// Every nontrivial class is larger than `gamma`: prune.
    AllClassesExceed,
    /// The stabilizer is abelian, so every class is trivial: prune.
    AbelianStabilizer,
    /// The stabilizer is trivial: prune.
    TrivialStabilizer,
    /// Classes could not be measured within the limit: no prune.
    EnumerationLimit { message: String },
}

impl AffineOutcome {
    pub fn prunes(&self) -> bool {
        matches!(
            self,
            AffineOutcome::AllClassesExceed
                | AffineOutcome::AbelianStabilizer
                | AffineOutcome::TrivialStabilizer
        )
    }
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|p| n % p == 0).expect("n >= 2 has a prime divisor");
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

/// The class-size bound for affine groups: prune unless the stabilizer
/// `H = G_1` has a nontrivial conjugacy class of size at most the largest
/// `H`-orbit. Returns `None` when the rule does not apply (degree not a
/// prime power).
pub fn affine_class_prune(group: &PermGroup, class_limit: u64) -> Option<AffineCheck> {
    if !is_prime_power(group.degree()) {
        return None;
    }
    let h = group.stabilizer(&[0]);
    let gamma = h.orbits().iter().map(Vec::len).max().unwrap_or(1) as u64;
    let outcome = if h.is_trivial() {
        AffineOutcome::TrivialStabilizer
    } else {
        match h.min_nontrivial_class_size(gamma, class_limit) {
            Ok(MinClassSize::Min(size)) => AffineOutcome::SmallClass { size },
            Ok(MinClassSize::AllExceedBound) => AffineOutcome::AllClassesExceed,
            Ok(MinClassSize::NoNontrivialClass) => AffineOutcome::AbelianStabilizer,
            Err(e) => AffineOutcome::EnumerationLimit {
                message: e.to_string(),
            },
        }
    };
    Some(AffineCheck {
        gamma,
        stabilizer_order: h.order().to_string(),
        outcome,
    })
}

/// Runs the enabled checks in a fixed order and returns the first skip.
pub fn prefilter(target: &SearchTarget, options: &SearchOptions) -> (Prefilter, Option<(SkipReason, String)>) {
    let group = &target.group;
    let d = group.degree();
    let mut pre = Prefilter {
        forced: options.force_search,
        ..Prefilter::default()
    };
    if !group.is_transitive() {
        return (pre, Some((SkipReason::Intransitive, "the group is not transitive".into())));
    }
    if options.force_search {
        return (pre, None);
    }
    if options.skip_four_transitive {
        let four = d >= 4 && group.is_k_transitive(4);
        pre.four_transitive = Some(four);
        if four {
            return (
                pre,
                Some((
                    SkipReason::FourTransitive,
                    "the group is 4-transitive".into(),
                )),
            );
        }
    }
    let automorphic = options.mode != Mode::RightAutomorphic;
    if automorphic && options.skip_solvable {
        let solvable = group.is_solvable();
        pre.solvable = Some(solvable);
        if solvable {
            return (
                pre,
                Some((
                    SkipReason::Solvable,
                    "the group is solvable".into(),
                )),
            );
        }
    }
    if options.mode == Mode::Automorphic && d % 2 == 1 {
        return (
            pre,
            Some((SkipReason::OddDegree, format!("degree {d} is odd"))),
        );
    }
    if options.mode == Mode::CommutativeAutomorphic && !d.is_power_of_two() {
        return (
            pre,
            Some((
                SkipReason::NotPowerOfTwo,
                format!("degree {d} is not a power of two"),
            )),
        );
    }
    if options.affine_prune && target.affine {
        if let Some(check) = affine_class_prune(group, options.limits.class_enumeration) {
            let skip = match &check.outcome {
                AffineOutcome::TrivialStabilizer => Some((
                    SkipReason::TrivialStabilizer,
                    "the stabilizer is trivial".into(),
                )),
                AffineOutcome::AbelianStabilizer => Some((
                    SkipReason::AffineClassBound,
                    "the stabilizer is abelian".into(),
                )),
                AffineOutcome::AllClassesExceed => Some((
                    SkipReason::AffineClassBound,
                    format!(
                        "no nontrivial conjugacy class of the stabilizer has size at most {}",
                        check.gamma
                    ),
                )),
                _ => None,
            };
            pre.affine = Some(check);
            if skip.is_some() {
                return (pre, skip);
            }
        }
    }
    (pre, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        let yes: Vec<usize> = (1..40).filter(|&n| is_prime_power(n)).collect();
        assert_eq!(
            yes,
            vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37]
        );
    }
}
