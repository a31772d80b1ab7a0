use criterion::{criterion_group, criterion_main, Criterion};

use loopforge_core::search::{search_targets, Mode, SearchOptions, SearchTarget};
use loopforge_core::{Catalog, PermGroup};

fn group(name: &str) -> PermGroup {
    Catalog::embedded()
        .entries()
        .iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("{name} not in catalog"))
        .group()
        .unwrap()
}

fn chain(c: &mut Criterion) {
    let g = group("PSL(2, 31)");
    c.bench_function("chain PSL(2,31)", |b| {
        b.iter(|| PermGroup::new(g.degree(), g.generators().to_vec()).unwrap().order())
    });
    let g = group("AGL(7, 2)");
    c.bench_function("chain AGL(7,2)", |b| {
        b.iter(|| PermGroup::new(g.degree(), g.generators().to_vec()).unwrap().order())
    });
}

fn centralizer(c: &mut Criterion) {
    let g = group("PGL(2, 31)");
    let h = g.stabilizer(&[0]);
    let hi = h.stabilizer(&[1]);
    c.bench_function("centralizer of a two-point stabilizer", |b| b.iter(|| g.centralizer(&hi).order()));
}

fn search(c: &mut Criterion) {
    let catalog = Catalog::embedded();
    let options = SearchOptions::for_mode(Mode::RightAutomorphic);
    for degree in [15, 27] {
        let targets: Vec<SearchTarget> = catalog
            .groups_of_degree(degree, false)
            .into_iter()
            .map(|e| SearchTarget::from_entry(e, None).unwrap())
            .collect();
        c.bench_function(&format!("search degree {degree}"), |b| b.iter(|| search_targets(&targets, &options)));
    }
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = chain, centralizer, search
}
criterion_main!(benches);
