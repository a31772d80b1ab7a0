//! Loop folders: a transitive group `G`, its point stabilizer `H = G_1` and
//! a transversal `R = {r_i}` with `1 r_i = i`, encoding the loop
//! `i * j = i r_j`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::catalog::{parse_cycles, Catalog};
use crate::error::{Error, Result};
use crate::loopcore::LoopTable;
use crate::permkernel::{PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FolderScope {
    /// `G = RMlt(Q)`.
    Right,
    /// `G = Mlt(Q)`.
    Full,
}

#[derive(Clone, Debug)]
pub struct LoopFolder {
    pub group: PermGroup,
    pub stabilizer: PermGroup,
    /// `transversal[i]` maps the neutral element to `i`.
    pub transversal: Vec<Permutation>,
}

impl LoopFolder {
    pub fn from_loop(table: &LoopTable, scope: FolderScope) -> Self {
        let (rmlt, mlt) = table.mult_groups();
        let group = match scope {
            FolderScope::Right => rmlt,
            FolderScope::Full => mlt,
        };
        let stabilizer = group.stabilizer(&[0]);
        Self {
            group,
            stabilizer,
            transversal: table.translations().0,
        }
    }

    pub fn to_loop(&self) -> Result<LoopTable> {
        loop_from_transversal(&self.transversal)
    }
}

/// Reorders `rights` so that entry `i` maps the neutral element to `i`.
pub fn normalize_transversal(rights: Vec<Permutation>) -> Result<Vec<Permutation>> {
    let d = rights.len();
    let mut slots: Vec<Option<Permutation>> = vec![None; d];
    for r in rights {
        if r.degree() != d {
            return Err(Error::DegreeMismatch {
                expected: d,
                found: r.degree(),
            });
        }
        let i = r.image(0);
        if slots[i].is_some() {
            return Err(Error::InvalidLoop(format!(
                "two transversal elements map 1 to {}",
                i + 1
            )));
        }
        slots[i] = Some(r);
    }
    Ok(slots.into_iter().map(|s| s.expect("d elements, distinct images")).collect())
}

/// Builds `i * j = i r_j`. Succeeds iff every `r_i r_j^-1` (`i != j`) is
/// fixed-point-free; otherwise names the first offending pair (1-based).
pub fn loop_from_transversal(rights: &[Permutation]) -> Result<LoopTable> {
    let d = rights.len();
    for (i, r) in rights.iter().enumerate() {
        if r.degree() != d {
            return Err(Error::DegreeMismatch {
                expected: d,
                found: r.degree(),
            });
        }
        if r.image(0) != i {
            return Err(Error::InvalidLoop(format!(
                "transversal element {} maps 1 to {}",
                i + 1,
                r.image(0) + 1
            )));
        }
    }
    if d > 0 && !rights[0].is_identity() {
        return Err(Error::InvalidLoop("first transversal element must be the identity".into()));
    }
    for i in 0..d {
        for j in i + 1..d {
            if let Some(k) = (0..d).find(|&k| rights[i].image(k) == rights[j].image(k)) {
                return Err(Error::NotALoop {
                    first: i + 1,
                    second: j + 1,
                    point: k + 1,
                });
            }
        }
    }
    LoopTable::from_right_translations(rights)
}

/// `R` is a transversal to every conjugate of `H` iff all quotients
/// `r_i r_j^-1` with `i != j` are fixed-point-free.
pub fn is_transversal_to_all_conjugates(rights: &[Permutation]) -> bool {
    (0..rights.len()).all(|i| (i + 1..rights.len()).all(|j| rights[i].differs_everywhere(&rights[j])))
}

/// The six conditions characterizing folders of non-associative simple
/// commutative automorphic loops of exponent two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReformulationReport {
    /// `G` primitive of degree `2^n > 2`.
    pub a_primitive_power_of_two: bool,
    /// `R` is a right transversal to `H = G_1` inside `G`.
    pub b_right_transversal: bool,
    /// `⟨R⟩ = G`.
    pub c_generates: bool,
    /// `[r^-1, s^-1] ∈ H` for all `r, s ∈ R`.
    pub d_commutators_in_stabilizer: bool,
    /// `R^h = R` for every `h ∈ H`.
    pub e_conjugation_invariant: bool,
    /// `r^2 ∈ H` for every `r ∈ R`.
    pub f_squares_in_stabilizer: bool,
}

impl ReformulationReport {
    pub fn all_hold(&self) -> bool {
        self.a_primitive_power_of_two
            && self.b_right_transversal
            && self.c_generates
            && self.d_commutators_in_stabilizer
            && self.e_conjugation_invariant
            && self.f_squares_in_stabilizer
    }
}

/// Evaluates every condition, even after one fails.
pub fn verify_reformulation(group: &PermGroup, rights: &[Permutation]) -> Result<ReformulationReport> {
    let d = group.degree();
    for r in rights {
        if r.degree() != d {
            return Err(Error::DegreeMismatch {
                expected: d,
                found: r.degree(),
            });
        }
    }
    let in_stabilizer = |p: &Permutation| p.fixes(0) && group.contains(p).unwrap_or(false);
    let a = d > 2 && d.is_power_of_two() && group.is_primitive();
    let inside = rights.iter().all(|r| group.contains(r).unwrap_or(false));
    let images: HashSet<usize> = rights.iter().map(|r| r.image(0)).collect();
    let b = inside && rights.len() == d && images.len() == d;
    let c = inside && PermGroup::generated_by(d, rights).order() == group.order();
    let inverses: Vec<Permutation> = rights.iter().map(|r| r.inverse()).collect();
    let dd = inverses
        .iter()
        .enumerate()
        .all(|(i, x)| inverses[i + 1..].iter().all(|y| in_stabilizer(&x.commutator(y))));
    let set: HashSet<&Permutation> = rights.iter().collect();
    let stabilizer = group.stabilizer(&[0]);
    let e = stabilizer
        .generators()
        .iter()
        .all(|h| rights.iter().all(|r| set.contains(&r.conjugate_by(h))));
    let f = rights.iter().all(|r| in_stabilizer(&r.then(r)));
    Ok(ReformulationReport {
        a_primitive_power_of_two: a,
        b_right_transversal: b,
        c_generates: c,
        d_commutators_in_stabilizer: dd,
        e_conjugation_invariant: e,
        f_squares_in_stabilizer: f,
    })
}

/// How a folder file names its group.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// `"<degree>/<index>"` or a unique catalog name.
    Reference(String),
    Inline {
        degree: usize,
        generators: Vec<String>,
    },
}

/// `{"group": ..., "transversal": ["(1,2)", ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FolderFile {
    pub group: GroupSpec,
    pub transversal: Vec<String>,
}

impl FolderFile {
    /// Resolves the group and parses the transversal, re-indexed so that
    /// entry `i` maps 1 to `i`.
    pub fn resolve(&self, catalog: &Catalog) -> Result<(PermGroup, Vec<Permutation>)> {
        let group = match &self.group {
            GroupSpec::Reference(name) => catalog
                .resolve(name)
                .ok_or_else(|| Error::InvalidGroup(format!("no catalog entry {name:?}")))?
                .group()?,
            GroupSpec::Inline { degree, generators } => {
                if *degree < 2 {
                    return Err(Error::InvalidGroup(format!("degree {degree} is below 2")));
                }
                let gens = generators
                    .iter()
                    .map(|s| parse_cycles(s, *degree))
                    .collect::<Result<Vec<_>>>()?;
                PermGroup::new(*degree, gens)?
            }
        };
        let rights = self
            .transversal
            .iter()
            .map(|s| parse_cycles(s, group.degree()))
            .collect::<Result<Vec<_>>>()?;
        if rights.len() != group.degree() {
            return Err(Error::InvalidLoop(format!(
                "transversal has {} elements, degree is {}",
                rights.len(),
                group.degree()
            )));
        }
        Ok((group, normalize_transversal(rights)?))
    }
}
