//! Acceptance suite: eleven end-to-end checks, one test per criterion.
//!
//! Each test prints a `ACCEPTANCE n (...): PASS` line on success; run with
//! `cargo test --test acceptance -- --nocapture` to see them. Oracles here
//! are written independently of the engine code paths they check: the
//! character-degree oracle re-derives degrees from class-multiplication
//! coefficients by brute-force eigenvector search modulo a prime, and the
//! ring-map oracle enumerates every set map between the rings.

use std::path::{Path, PathBuf};
use std::process::Command;

use rand_core::{RngCore, SeedableRng};

use gerbedual::descent::{
    compute_twist_with_taus, is_intertwiner, mu_component, tetrahedron_check,
};
use gerbedual::repcat::character_table;
use gerbedual::{
    compute_twist, dual_space, extension_cocycle, induce_plain, reconstruct_hom, ring_homs,
    two_point_example, verify_gerbe_side, verify_twist_cocycle, CharacterTable, CocycleDatum,
    CycloElement, DescentStatus, ExactMatrix, FiniteCommRing, FiniteGroup, FunctorDatum,
    GroupExtension, MultiplicityVector,
};

// ---------------------------------------------------------------------------
// shared fixtures

fn fixture_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("C2", FiniteGroup::cyclic(2)),
        ("C3", FiniteGroup::cyclic(3)),
        ("C4", FiniteGroup::cyclic(4)),
        ("C2xC2", FiniteGroup::klein()),
        ("S3", FiniteGroup::symmetric(3)),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion()),
        ("A4", FiniteGroup::alternating(4)),
    ]
}

fn fixture_extensions() -> Vec<(&'static str, GroupExtension)> {
    vec![
        (
            "C3 -> S3 -> C2",
            GroupExtension::from_kernel(FiniteGroup::symmetric(3), &[0, 3, 4]).unwrap(),
        ),
        (
            "C2 -> C4 -> C2",
            GroupExtension::from_kernel(FiniteGroup::cyclic(4), &[0, 2]).unwrap(),
        ),
        (
            "C4 -> Q8 -> C2",
            GroupExtension::from_kernel(FiniteGroup::quaternion(), &[0, 1, 2, 3]).unwrap(),
        ),
    ]
}

/// Spread a refined datum over at least four indices, cycling through the
/// quotient, so the quadruple checks are non-vacuous.
fn induced_datum(ext: &GroupExtension) -> CocycleDatum {
    let refined = extension_cocycle(ext).unwrap();
    let q = ext.quotient().order();
    let index_map: Vec<usize> = (0..q.max(4)).map(|i| i % q).collect();
    induce_plain(&refined, &index_map).unwrap()
}

// ---------------------------------------------------------------------------
// criterion 1: character tables against the class-sum oracle

fn is_prime_td(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

struct OracleClasses {
    classes: Vec<Vec<usize>>,
    /// class index of each element
    of: Vec<usize>,
    /// index of the class {identity}
    id_class: usize,
}

fn oracle_classes(g: &FiniteGroup) -> OracleClasses {
    let n = g.order();
    let mut of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if of[x] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = (0..n)
            .map(|c| g.mul(g.mul(g.inv(c), x), c))
            .collect();
        members.sort_unstable();
        members.dedup();
        let idx = classes.len();
        for &m in &members {
            of[m] = idx;
        }
        classes.push(members);
    }
    let id_class = of[g.identity()];
    OracleClasses { classes, of, id_class }
}

/// Degrees of the irreducible characters, re-derived from scratch: count the
/// class-multiplication coefficients, search every normalized vector modulo
/// a suitable prime for the simultaneous eigenvectors of the class-sum
/// matrices, and read each degree off the orthogonality relation.
fn oracle_degrees(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order() as u64;
    let mut exponent = 1u64;
    for x in 0..g.order() {
        let mut ord = 1u64;
        let mut cur = x;
        while cur != g.identity() {
            cur = g.mul(cur, x);
            ord += 1;
        }
        exponent = exponent / gcd(exponent, ord) * ord;
    }
    let mut p = exponent + 1;
    while !is_prime_td(p) || p * p <= 4 * n {
        p += exponent;
    }

    let oc = oracle_classes(g);
    let k = oc.classes.len();
    let reps: Vec<usize> = oc.classes.iter().map(|c| c[0]).collect();
    let rep_of_element: Vec<Option<usize>> = (0..g.order())
        .map(|x| reps.iter().position(|&r| r == x))
        .collect();

    // a[i][j][m] = #{(x, y) in C_i x C_j : x*y = reps[m]}
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            for &x in &oc.classes[i] {
                for &y in &oc.classes[j] {
                    if let Some(m) = rep_of_element[g.mul(x, y)] {
                        a[i][j][m] += 1;
                    }
                }
            }
        }
    }

    // Search all vectors w mod p with w[id_class] = 1 satisfying
    // sum_m a[i][j][m] w[m] = w[i] w[j] for all i, j.
    let free: Vec<usize> = (0..k).filter(|&j| j != oc.id_class).collect();
    let mut w = vec![0u64; k];
    w[oc.id_class] = 1;
    let mut digits = vec![0u64; free.len()];
    let mut found: Vec<Vec<u64>> = Vec::new();
    loop {
        for (pos, &j) in free.iter().enumerate() {
            w[j] = digits[pos];
        }
        let ok = (0..k).all(|i| {
            (0..k).all(|j| {
                let lhs: u64 = (0..k).map(|m| a[i][j][m] % p * w[m] % p).sum::<u64>() % p;
                lhs == w[i] * w[j] % p
            })
        });
        if ok {
            found.push(w.clone());
        }
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                break;
            }
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == digits.len() {
            break;
        }
    }
    assert_eq!(found.len(), k, "expected {k} simultaneous eigenvectors");

    // d^2 = |G| / sum_j w_j w_{j'} / h_j  with j' the inverse class.
    let inverse_class: Vec<usize> = reps.iter().map(|&r| oc.of[g.inv(r)]).collect();
    let mut degrees: Vec<usize> = found
        .iter()
        .map(|w| {
            let mut s = 0u64;
            for j in 0..k {
                let h = oc.classes[j].len() as u64;
                s = (s + w[j] * w[inverse_class[j]] % p * invmod(h % p, p)) % p;
            }
            let d_squared = n % p * invmod(s, p) % p;
            let d = (1..=(p - 1) / 2)
                .find(|&d| d * d % p == d_squared)
                .expect("degree below p/2");
            d as usize
        })
        .collect();
    degrees.sort_unstable();
    degrees
}

fn assert_orthogonality(table: &CharacterTable) {
    let group = table.group();
    let e = table.exponent();
    let order = group.order() as i64;
    let classes = table.classes();
    let sizes = classes.sizes();
    let zero = CycloElement::zero(e);
    for r in 0..table.count() {
        for t in 0..table.count() {
            let mut sum = zero.clone();
            for (j, &h) in sizes.iter().enumerate() {
                let term = table.value(r, j).mul(&table.value(t, j).conj());
                sum = sum.add(&term.scale(&gerbedual::rational::rat_int(h as i64)));
            }
            let expected = if r == t { order } else { 0 };
            assert_eq!(sum, CycloElement::from_int(e, expected), "rows {r},{t}");
        }
    }
    for c in 0..classes.count() {
        for d in 0..classes.count() {
            let mut sum = zero.clone();
            for r in 0..table.count() {
                sum = sum.add(&table.value(r, c).mul(&table.value(r, d).conj()));
            }
            let expected = if c == d { order / sizes[c] as i64 } else { 0 };
            assert_eq!(sum, CycloElement::from_int(e, expected), "columns {c},{d}");
        }
    }
}

#[test]
fn acceptance_01_character_tables_match_the_class_sum_oracle() {
    for (name, group) in fixture_groups() {
        let table = character_table(&group).unwrap();
        assert_orthogonality(&table);
        let square_sum: usize = table.degrees().iter().map(|d| d * d).sum();
        assert_eq!(square_sum, group.order(), "{name}: sum of squared degrees");
        let mut degrees = table.degrees().to_vec();
        degrees.sort_unstable();
        assert_eq!(degrees, oracle_degrees(&group), "{name}: degrees");
    }
    println!("ACCEPTANCE 1 (character tables vs class-sum oracle): PASS");
}

// ---------------------------------------------------------------------------
// criterion 2: componentwise tensor kills distinct irreducibles; two units

#[test]
fn acceptance_02_componentwise_tensor_and_distinct_units() {
    for (name, group) in fixture_groups() {
        let table = character_table(&group).unwrap();
        let count = table.count();
        for i in 0..count {
            for j in 0..count {
                if i == j {
                    continue;
                }
                let product = MultiplicityVector::basis(count, i)
                    .tensor_split(&MultiplicityVector::basis(count, j))
                    .unwrap();
                assert!(product.is_zero(), "{name}: rows {i},{j}");
            }
        }
        assert!(count > 1, "{name}: fixture has more than one irreducible");
        assert_ne!(table.unit_split(), table.unit_tensor(), "{name}: units");
    }
    println!("ACCEPTANCE 2 (componentwise tensor and the two units): PASS");
}

// ---------------------------------------------------------------------------
// criterion 3: the character action reverses composition

#[test]
fn acceptance_03_character_action_is_an_anti_homomorphism() {
    for group in [FiniteGroup::symmetric(3), FiniteGroup::dihedral(4)] {
        let table = character_table(&group).unwrap();
        let autos = group.automorphism_group(24).unwrap();
        let e = table.exponent();
        for a in &autos {
            let pa = table.char_action(a).unwrap();
            for b in &autos {
                let pb = table.char_action(b).unwrap();
                let composed = table.char_action(&a.compose(b)).unwrap();
                let reversed: Vec<usize> = (0..table.count()).map(|s| pb[pa[s]]).collect();
                assert_eq!(composed, reversed);
                // the same identity as permutation matrices
                let lhs = ExactMatrix::permutation(e, &composed);
                let rhs = ExactMatrix::permutation(e, &pb)
                    .mul(&ExactMatrix::permutation(e, &pa))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
    println!("ACCEPTANCE 3 (character action anti-homomorphism): PASS");
}

// ---------------------------------------------------------------------------
// criterion 4: inner automorphisms act trivially on characters

#[test]
fn acceptance_04_inner_automorphisms_fix_every_character() {
    for (name, group) in fixture_groups() {
        let table = character_table(&group).unwrap();
        let identity: Vec<usize> = (0..table.count()).collect();
        for beta in 0..group.order() {
            let action = table.char_action(&group.inner(beta)).unwrap();
            assert_eq!(action, identity, "{name}: element {beta}");
        }
    }
    println!("ACCEPTANCE 4 (inner automorphisms act trivially): PASS");
}

// ---------------------------------------------------------------------------
// criterion 5: naturality and composition of the canonical components

#[test]
fn acceptance_05_canonical_components_randomized() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xDEC0DE);
    for group in [FiniteGroup::symmetric(3), FiniteGroup::dihedral(4)] {
        let table = character_table(&group).unwrap();
        let autos = group.automorphism_group(24).unwrap();
        for _ in 0..50 {
            let alpha = &autos[rng.next_u64() as usize % autos.len()];
            let alpha_prime = &autos[rng.next_u64() as usize % autos.len()];
            let beta = rng.next_u64() as usize % group.order();
            for row in 0..table.count() {
                let model = table.model(row);
                // (i) the component at row is the matrix of alpha(beta),
                //     and it intertwines the twisted pullback into the plain one
                //     (mu_component verifies that internally).
                let m = mu_component(&table, alpha, beta, row).unwrap();
                assert_eq!(&m, model.matrix(alpha.apply(beta)));
                // (ii) composing the automorphism first gives the component
                //      of the composite.
                let composite = alpha_prime.compose(alpha);
                let m2 = mu_component(&table, &composite, beta, row).unwrap();
                assert_eq!(&m2, model.matrix(alpha_prime.apply(alpha.apply(beta))));
                // (iii) the same component also intertwines after extending
                //       both sides by a further automorphism.
                let inner = group.inner(beta);
                let twisted = model
                    .pullback(&alpha.compose(&inner).compose(alpha_prime))
                    .unwrap();
                let plain = model.pullback(&alpha.compose(alpha_prime)).unwrap();
                assert!(is_intertwiner(&m, &twisted, &plain).unwrap());
            }
        }
    }
    println!("ACCEPTANCE 5 (canonical component laws, randomized): PASS");
}

// ---------------------------------------------------------------------------
// criterion 6: extension data verifies, both refined and induced

#[test]
fn acceptance_06_extension_data_passes_all_identities() {
    for (name, ext) in fixture_extensions() {
        let refined = extension_cocycle(&ext).unwrap();
        let report = refined.verify();
        assert_eq!(report.status, DescentStatus::Pass, "{name}: refined");

        let datum = induced_datum(&ext);
        let report = datum.verify_cocycle();
        assert_eq!(report.status, DescentStatus::Pass, "{name}: induced");

        let table = character_table(ext.kernel_group()).unwrap();
        let report = tetrahedron_check(&datum, &table).unwrap();
        assert_eq!(report.status, DescentStatus::Pass, "{name}: tetrahedron");
    }
    println!("ACCEPTANCE 6 (extension factor data and tetrahedron): PASS");
}

// ---------------------------------------------------------------------------
// criterion 7: dual orbit structure

#[test]
fn acceptance_07_dual_orbit_structure() {
    let expected_orbit_counts = [2usize, 2, 3];
    for ((name, ext), expected) in fixture_extensions().into_iter().zip(expected_orbit_counts)
    {
        let refined = extension_cocycle(&ext).unwrap();
        let table = character_table(ext.kernel_group()).unwrap();
        let space = dual_space(&refined, &table).unwrap();
        if name.contains("S3") || name.contains("Q8") {
            assert_eq!(space.orbits.len(), expected, "{name}: orbit count");
        }
        let total: usize = space.orbits.iter().map(Vec::len).sum();
        assert_eq!(total, table.count(), "{name}: orbit sizes sum");
        let q = ext.quotient().order();
        for stabilizer in &space.stabilizers {
            assert_eq!(q % stabilizer.len(), 0, "{name}: stabilizer order");
        }
    }
    println!("ACCEPTANCE 7 (dual orbits and stabilizers): PASS");
}

// ---------------------------------------------------------------------------
// criterion 8: twist scalars and the rescaling coboundary

#[test]
fn acceptance_08_twist_scalars_and_rescaling_metamorphic() {
    for (name, ext) in fixture_extensions() {
        let datum = induced_datum(&ext);
        let table = character_table(ext.kernel_group()).unwrap();
        let twist = compute_twist(&datum, &table).unwrap();
        for ((row, i, j, k), scalar) in &twist.scalars {
            assert!(!scalar.is_zero(), "{name}: scalar at ({row},{i},{j},{k})");
        }
        let report = verify_twist_cocycle(&twist, &datum, &table).unwrap();
        assert_eq!(report.status, DescentStatus::Pass, "{name}: quadruples");

        // Rescale one intertwiner by a root of unity; each triangle scalar
        // must pick up exactly one factor per appearance of that
        // intertwiner among its three legs.
        let e = table.exponent();
        let lambda = CycloElement::root_of_unity(e, 1);
        let &(pi, pj, prow) = twist
            .taus
            .keys()
            .find(|(i, j, _)| i != j)
            .expect("a crossing pair exists");
        let mut rescaled = twist.taus.clone();
        let entry = rescaled.get_mut(&(pi, pj, prow)).unwrap();
        *entry = entry.scale(&lambda);
        let rescaled_twist = compute_twist_with_taus(&datum, &table, rescaled).unwrap();

        let n = datum.n_indices();
        let mut touched = 0usize;
        for ((s, i, j, k), old) in &twist.scalars {
            let t = twist.transport[k * n + i][*s];
            let u = twist.transport[j * n + k][t];
            let legs = [(*i, *j, u), (*j, *k, t), (*k, *i, *s)];
            let count = legs
                .iter()
                .filter(|&&(li, lj, ls)| (li, lj, ls) == (pi, pj, prow))
                .count();
            if count > 0 {
                touched += 1;
            }
            let expected = old.mul(&lambda.pow(count as i64).unwrap());
            assert_eq!(
                rescaled_twist.scalar(*s, *i, *j, *k),
                &expected,
                "{name}: scalar at ({s},{i},{j},{k})"
            );
        }
        assert!(touched > 0, "{name}: the rescaled leg occurs somewhere");
    }
    println!("ACCEPTANCE 8 (twist scalars and rescaling coboundary): PASS");
}

// ---------------------------------------------------------------------------
// criterion 9: the algebra-side comparison needs no twist

#[test]
fn acceptance_09_algebra_side_comparison_is_untwisted() {
    for (name, ext) in fixture_extensions() {
        let datum = induced_datum(&ext);
        let report = verify_gerbe_side(&datum);
        assert_eq!(report.status, DescentStatus::Pass, "{name}");
    }
    println!("ACCEPTANCE 9 (algebra-side comparison, identity twist): PASS");
}

// ---------------------------------------------------------------------------
// criterion 10: finite-ring demo against the all-maps oracle

fn oracle_ring_maps(source: &FiniteCommRing, target: &FiniteCommRing) -> Vec<Vec<usize>> {
    let s = source.order();
    let t = target.order();
    let is_map = |image: &[usize]| {
        if image[source.zero()] != target.zero() || image[source.one()] != target.one() {
            return false;
        }
        for a in 0..s {
            for b in 0..s {
                if image[source.add(a, b)] != target.add(image[a], image[b])
                    || image[source.mul(a, b)] != target.mul(image[a], image[b])
                {
                    return false;
                }
            }
        }
        true
    };
    let mut image = vec![0usize; s];
    let mut out = Vec::new();
    loop {
        if is_map(&image) {
            out.push(image.clone());
        }
        let mut pos = 0;
        loop {
            if pos == s {
                break;
            }
            image[pos] += 1;
            if image[pos] < t {
                break;
            }
            image[pos] = 0;
            pos += 1;
        }
        if pos == s {
            break;
        }
    }
    out.sort();
    out
}

#[test]
fn acceptance_10_ring_maps_round_trip_and_two_point_example() {
    let f2 = FiniteCommRing::prime_field(2).unwrap();
    let f3 = FiniteCommRing::prime_field(3).unwrap();
    let dual_numbers = FiniteCommRing::poly_quotient(2, &[0, 0, 1]).unwrap();
    let split = FiniteCommRing::product(&f3, &f3).unwrap();
    let pairs: Vec<(&str, &FiniteCommRing, &FiniteCommRing, usize)> = vec![
        ("Z/2 -> Z/2", &f2, &f2, 1),
        ("F2[x]/(x^2) -> F2", &dual_numbers, &f2, 1),
        ("F3 x F3 -> F3", &split, &f3, 2),
    ];
    for (name, source, target, expected_count) in pairs {
        let homs = ring_homs(source, target, 81).unwrap();
        let images: Vec<Vec<usize>> = homs.iter().map(|h| h.image().to_vec()).collect();
        assert_eq!(images.len(), expected_count, "{name}: count");
        assert_eq!(images, oracle_ring_maps(source, target), "{name}: images");
        for (idx, hom) in homs.iter().enumerate() {
            let datum = FunctorDatum::from_base_change(hom).unwrap();
            let back = reconstruct_hom(&datum).unwrap();
            assert_eq!(back.image(), hom.image(), "{name}: round trip of map {idx}");
        }
    }

    let example = two_point_example(3).unwrap();
    assert_eq!(example.sheaf_unit_vector, [1, 1]);
    assert_eq!(example.representation_unit_vector, [1, 0]);
    println!("ACCEPTANCE 10 (ring maps, round trip, two-point example): PASS");
}

// ---------------------------------------------------------------------------
// criterion 11: the binary is deterministic over the full fixture suite

fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

#[test]
fn acceptance_11_cli_fixture_suite_is_byte_deterministic() {
    let suite: Vec<(&str, &str, i32)> = vec![
        ("chartable", "group-c2.json", 0),
        ("chartable", "group-c3.json", 0),
        ("chartable", "group-c4.json", 0),
        ("chartable", "group-klein.json", 0),
        ("chartable", "group-s3.json", 0),
        ("chartable", "group-d4.json", 0),
        ("chartable", "group-q8.json", 0),
        ("chartable", "group-a4.json", 0),
        ("auts", "group-c2.json", 0),
        ("auts", "group-c3.json", 0),
        ("auts", "group-c4.json", 0),
        ("auts", "group-klein.json", 0),
        ("auts", "group-s3.json", 0),
        ("auts", "group-d4.json", 0),
        ("auts", "group-q8.json", 0),
        ("auts", "group-a4.json", 0),
        ("extension", "ext-s3.json", 0),
        ("extension", "ext-c4.json", 0),
        ("extension", "ext-q8.json", 0),
        ("dual", "ext-s3.json", 0),
        ("dual", "ext-c4.json", 0),
        ("dual", "ext-q8.json", 0),
        ("twist", "ext-s3.json", 0),
        ("twist", "ext-c4.json", 0),
        ("twist", "ext-q8.json", 0),
        ("gerbe-check", "ext-s3.json", 0),
        ("gerbe-check", "ext-c4.json", 0),
        ("gerbe-check", "ext-q8.json", 0),
        ("cocycle-check", "datum-induced.json", 0),
        ("cocycle-check", "datum-perturbed.json", 1),
        ("affine-demo", "affine-two-point.json", 0),
        ("affine-demo", "affine-pair-z2.json", 0),
        ("affine-demo", "affine-pair-dual.json", 0),
        ("affine-demo", "affine-pair-split.json", 0),
    ];
    let dir = tempfile::tempdir().unwrap();
    for run_idx in 0..2 {
        for &(verb, name, expected_exit) in &suite {
            let out = dir
                .path()
                .join(format!("{verb}-{name}.run{run_idx}.json"));
            let output = Command::new(env!("CARGO_BIN_EXE_gerbedual"))
                .args([
                    verb,
                    fixture_path(name).to_str().unwrap(),
                    "--out",
                    out.to_str().unwrap(),
                ])
                .output()
                .expect("binary runs");
            assert_eq!(
                output.status.code(),
                Some(expected_exit),
                "{verb} {name} run {run_idx}"
            );
        }
    }
    for (verb, name, _) in &suite {
        let first = std::fs::read(dir.path().join(format!("{verb}-{name}.run0.json"))).unwrap();
        let second = std::fs::read(dir.path().join(format!("{verb}-{name}.run1.json"))).unwrap();
        assert_eq!(first, second, "{verb} {name}: reports differ between runs");
        assert!(!first.is_empty());
    }
    println!("ACCEPTANCE 11 (fixture suite byte determinism): PASS");
}
