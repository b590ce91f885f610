//! Timings for the hot paths: character tables, the twist pipeline, and
//! the cyclotomic arithmetic underneath everything.

use criterion::{criterion_group, criterion_main, Criterion};

use gerbedual::rational::{rat, rat_int};
use gerbedual::repcat::character_table;
use gerbedual::{compute_twist, extension_cocycle, induce_plain, CycloElement, FiniteGroup, GroupExtension};

fn character_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_table");
    for (name, g) in [
        ("S3", FiniteGroup::symmetric(3)),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion()),
        ("A4", FiniteGroup::alternating(4)),
    ] {
        group.bench_function(name, |b| b.iter(|| character_table(&g).unwrap()));
    }
    group.finish();
}

fn twist_pipeline(c: &mut Criterion) {
    let ext = GroupExtension::from_kernel(FiniteGroup::quaternion(), &[0, 1, 2, 3]).unwrap();
    let refined = extension_cocycle(&ext).unwrap();
    let datum = induce_plain(&refined, &[0, 1, 0, 1]).unwrap();
    let table = character_table(ext.kernel_group()).unwrap();
    c.bench_function("twist/q8_extension", |b| {
        b.iter(|| compute_twist(&datum, &table).unwrap())
    });
}

fn cyclotomic_arithmetic(c: &mut Criterion) {
    let a = CycloElement::root_of_unity(12, 1)
        .add(&CycloElement::root_of_unity(12, 2).scale(&rat_int(2)))
        .add(&CycloElement::root_of_unity(12, 3).scale(&rat(-1, 3)));
    let b = CycloElement::root_of_unity(12, 5)
        .scale(&rat(7, 2))
        .sub(&CycloElement::one(12));
    c.bench_function("cyclo/mul_order_12", |bench| bench.iter(|| a.mul(&b)));
    c.bench_function("cyclo/inv_order_12", |bench| {
        bench.iter(|| b.inv().unwrap())
    });
}

criterion_group!(benches, character_tables, twist_pipeline, cyclotomic_arithmetic);
criterion_main!(benches);
