use std::io::Write;

use loopforge_core::catalog::{load_catalog, Tag};
use loopforge_core::{Catalog, Error};

#[test]
fn shipped_catalog_passes_strict_verification() {
    let catalog = Catalog::embedded();
    catalog.verify_strict().unwrap();
    for e in catalog.entries() {
        let g = e.group().unwrap();
        assert!(g.is_primitive(), "{}", e.name);
        assert_eq!(g.order().to_string(), *e.order.as_ref().unwrap(), "{}", e.name);
    }
}

#[test]
fn affine_tags_sit_on_prime_power_degrees() {
    for e in Catalog::embedded().entries().iter().filter(|e| e.has_tag(Tag::Affine)) {
        let d = e.degree;
        let p = (2..=d).find(|p| d % p == 0).unwrap();
        assert!(std::iter::successors(Some(d), |m| (m % p == 0).then_some(m / p)).any(|m| m == 1));
    }
}

#[test]
fn load_from_file_and_report_bad_lines() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, r#"{{"name":"C3","degree":3,"generators":["(1,2,3)"]}}"#).unwrap();
    writeln!(file).unwrap();
    writeln!(file, r#"{{"name":"S3","degree":3,"order":"6","generators":["(1,2,3)","(1,2)"]}}"#).unwrap();
    let entries = load_catalog(file.path()).unwrap();
    assert_eq!(entries.len(), 2);
    let catalog = Catalog::load(file.path()).unwrap();
    assert_eq!(catalog.resolve("3/2").unwrap().name, "S3");
    assert_eq!(catalog.reference_of(&entries[0]), "3/1");

    writeln!(file, r#"{{"name":"bad","degree":3,"generators":["(1,4)"]}}"#).unwrap();
    match load_catalog(file.path()) {
        Err(Error::Catalog { line, .. }) => assert_eq!(line, 4),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn false_claimed_tag_fails_strict_mode() {
    let text = r#"{"name":"C5","degree":5,"generators":["(1,2,3,4,5)"],"tags":["four-transitive-claimed"]}"#;
    let catalog = Catalog::new(loopforge_core::catalog::parse_catalog(text).unwrap());
    assert!(matches!(catalog.verify_strict(), Err(Error::Catalog { line: 1, .. })));
}
