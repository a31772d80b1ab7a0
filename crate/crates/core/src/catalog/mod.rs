//! Named permutation groups stored as JSON lines, with the tags used by the
//! search prefilters.

mod cycles;

use std::collections::BTreeSet;
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

pub use cycles::{format_cycles, parse_cycles};

use crate::error::{Error, Result};
use crate::permkernel::PermGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Affine,
    KnownNotMlt,
    FourTransitiveClaimed,
    SolvableClaimed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCatalogEntry {
    pub name: String,
    pub degree: usize,
    /// Group order as a decimal string, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub tags: BTreeSet<Tag>,
    #[serde(default)]
    pub provenance: String,
}

impl GroupCatalogEntry {
    pub fn has_tag(&self, tag: Tag) -> bool {
        self.tags.contains(&tag)
    }

    /// Parses the generators into a group (carrying the stated order).
    pub fn group(&self) -> Result<PermGroup> {
        if self.degree < 2 {
            return Err(Error::InvalidGroup(format!(
                "{}: degree {} is below 2",
                self.name, self.degree
            )));
        }
        let gens = self
            .generators
            .iter()
            .map(|s| parse_cycles(s, self.degree))
            .collect::<Result<Vec<_>>>()?;
        let mut group = PermGroup::new(self.degree, gens)?;
        if let Some(order) = &self.order {
            let order: BigUint = order
                .parse()
                .map_err(|_| Error::InvalidGroup(format!("{}: bad order {order:?}", self.name)))?;
            group = group.with_known_order(order);
        }
        Ok(group)
    }

    /// Recomputes the claimed tags; returns a description of every mismatch.
    pub fn verify_tags(&self) -> Result<Vec<String>> {
        let group = self.group()?;
        let mut problems = Vec::new();
        let four = group.is_k_transitive(4);
        if four != self.has_tag(Tag::FourTransitiveClaimed) {
            problems.push(format!("4-transitive is {four}, tag says otherwise"));
        }
        let solvable = group.is_solvable();
        if solvable != self.has_tag(Tag::SolvableClaimed) {
            problems.push(format!("solvable is {solvable}, tag says otherwise"));
        }
        if let Some(order) = &self.order {
            if group.chain().order().to_string() != *order {
                problems.push(format!("order {} differs from stated {order}", group.order()));
            }
        }
        Ok(problems)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<GroupCatalogEntry>,
}

/// The shipped catalog: every primitive group of degrees 15, 27, 32, 60,
/// 64, 81 and 128.
const EMBEDDED: &[&str] = &[
    include_str!("../../data/primitive_15.jsonl"),
    include_str!("../../data/primitive_27.jsonl"),
    include_str!("../../data/primitive_32.jsonl"),
    include_str!("../../data/primitive_60.jsonl"),
    include_str!("../../data/primitive_64.jsonl"),
    include_str!("../../data/primitive_81.jsonl"),
    include_str!("../../data/primitive_128.jsonl"),
];

impl Catalog {
    pub fn new(entries: Vec<GroupCatalogEntry>) -> Self {
        Self { entries }
    }

    pub fn embedded() -> Self {
        let mut entries = Vec::new();
        for text in EMBEDDED {
            entries.extend(parse_catalog(text).expect("embedded catalog is valid"));
        }
        Self { entries }
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(Self {
            entries: load_catalog(path)?,
        })
    }

    pub fn entries(&self) -> &[GroupCatalogEntry] {
        &self.entries
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.entries.iter().map(|e| e.degree).collect()
    }

    /// Entries of degree `d`, in catalog order. Entries tagged
    /// known-not-mlt are dropped only when `use_known_exclusions` is set.
    pub fn groups_of_degree(&self, d: usize, use_known_exclusions: bool) -> Vec<&GroupCatalogEntry> {
        let out: Vec<_> = self
            .entries
            .iter()
            .filter(|e| e.degree == d)
            .filter(|e| !(use_known_exclusions && e.has_tag(Tag::KnownNotMlt)))
            .collect();
        if out.is_empty() {
            log::warn!("catalog has no groups of degree {d}; results for it are not authoritative");
        }
        out
    }

    /// Resolves `"<degree>/<index>"` (1-based within the degree) or an
    /// entry name that is unique in the catalog.
    pub fn resolve(&self, reference: &str) -> Option<&GroupCatalogEntry> {
        if let Some((d, i)) = reference.split_once('/') {
            if let (Ok(d), Ok(i)) = (d.trim().parse::<usize>(), i.trim().parse::<usize>()) {
                return self
                    .entries
                    .iter()
                    .filter(|e| e.degree == d)
                    .nth(i.checked_sub(1)?);
            }
        }
        let mut named = self.entries.iter().filter(|e| e.name == reference);
        match (named.next(), named.next()) {
            (Some(e), None) => Some(e),
            _ => None,
        }
    }

    /// `"<degree>/<index>"` reference of an entry.
    pub fn reference_of(&self, entry: &GroupCatalogEntry) -> String {
        let index = self
            .entries
            .iter()
            .filter(|e| e.degree == entry.degree)
            .position(|e| e == entry)
            .map_or(0, |i| i + 1);
        format!("{}/{}", entry.degree, index)
    }

    /// Recomputes claimed tags on every entry; errors name the first
    /// offending line.
    pub fn verify_strict(&self) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            let problems = e.verify_tags()?;
            if !problems.is_empty() {
                return Err(Error::Catalog {
                    line: i + 1,
                    message: format!("{}: {}", e.name, problems.join("; ")),
                });
            }
        }
        Ok(())
    }
}

/// Parses JSON lines; blank lines are skipped. Each entry's generators are
/// checked against its degree.
pub fn parse_catalog(text: &str) -> Result<Vec<GroupCatalogEntry>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let catalog_err = |message: String| Error::Catalog {
            line: i + 1,
            message,
        };
        let entry: GroupCatalogEntry =
            serde_json::from_str(line).map_err(|e| catalog_err(e.to_string()))?;
        entry.group().map_err(|e| catalog_err(format!("{}: {e}", entry.name)))?;
        out.push(entry);
    }
    Ok(out)
}

pub fn load_catalog(path: &Path) -> Result<Vec<GroupCatalogEntry>> {
    parse_catalog(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_counts_per_degree() {
        let cat = Catalog::embedded();
        let count = |d| cat.groups_of_degree(d, false).len();
        assert_eq!(count(15), 6);
        assert_eq!(count(27), 15);
        assert_eq!(count(32), 7);
        assert_eq!(count(60), 9);
        assert_eq!(count(64), 74);
        assert_eq!(count(81), 155);
        assert_eq!(count(128), 7);
        assert!(cat.groups_of_degree(3, false).is_empty());
    }

    #[test]
    fn known_exclusions_drop_projective_groups() {
        let cat = Catalog::embedded();
        let names: Vec<_> = cat
            .groups_of_degree(32, true)
            .iter()
            .map(|e| e.name.clone())
            .collect();
        assert!(!names.iter().any(|n| n.starts_with("PSL") || n.starts_with("PGL")));
        assert_eq!(names.len(), 5);
    }

    #[test]
    fn empty_file_is_empty_catalog() {
        assert!(parse_catalog("").unwrap().is_empty());
    }

    #[test]
    fn wrong_degree_generator_is_rejected() {
        let line = r#"{"name":"bad","degree":3,"generators":["(1,4)"],"tags":[],"provenance":"test"}"#;
        match parse_catalog(line) {
            Err(Error::Catalog { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degree_one_is_rejected() {
        let line = r#"{"name":"tiny","degree":1,"generators":["()"],"tags":[],"provenance":"test"}"#;
        assert!(parse_catalog(line).is_err());
    }

    #[test]
    fn resolve_by_index_and_name() {
        let cat = Catalog::embedded();
        assert_eq!(cat.resolve("15/1").unwrap().name, "A(7)");
        assert_eq!(cat.resolve("PSL(4, 2)").unwrap().degree, 15);
        assert!(cat.resolve("15/99").is_none());
        let e = cat.resolve("32/3").unwrap();
        assert_eq!(cat.reference_of(e), "32/3");
    }
}
