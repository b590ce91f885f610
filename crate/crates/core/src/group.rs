//! Finite groups as validated multiplication tables.
//!
//! Elements are opaque indices into the table.  Permutation input is
//! converted to a table on construction, after which nothing downstream
//! cares where the group came from.  The extension machinery at the bottom
//! extracts the conjugation automorphisms and factor elements attached to a
//! normal subgroup and a choice of section.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("row {row} has {len} entries, expected {expected}")]
    RowLength {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry at row {row}, column {col} is {value}, outside [0, {order})")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({a}\u{b7}{b})\u{b7}{c} \u{2260} {a}\u{b7}({b}\u{b7}{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("generator {index} has length {len}, expected degree {degree}")]
    DegreeMismatch {
        index: usize,
        len: usize,
        degree: usize,
    },
    #[error("map does not preserve products at ({a}, {b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("image is not a bijection")]
    NotBijective,
    #[error("subset is not closed: {a}\u{b7}{b} lands outside")]
    NotClosed { a: usize, b: usize },
    #[error("subset does not contain the identity")]
    MissingIdentity,
    #[error("subset lacks the inverse of {0}")]
    MissingInverse(usize),
    #[error("subgroup is not normal: conjugating {element} by {conjugator} leaves the subset")]
    NotNormal { conjugator: usize, element: usize },
    #[error("group order {order} exceeds the brute-force bound {bound}")]
    AutBoundExceeded { order: usize, bound: usize },
    #[error("section must have one entry per quotient element, got {got} for {expected}")]
    SectionLength { got: usize, expected: usize },
    #[error("section image {section_value} of quotient element {q} projects to the wrong coset")]
    SectionNotRightInverse { q: usize, section_value: usize },
    #[error("section must send the quotient identity to the group identity")]
    SectionIdentity,
    #[error("kernel must be a proper normal subgroup given by valid element indices, found {0}")]
    KernelElementOutOfRange(usize),
}

/// A finite group: order, multiplication table, identity, inverses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validate a multiplication table: shape, range, identity, inverses,
    /// and associativity (naming the first violating triple).
    pub fn from_mult_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::RowLength {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        order: n,
                    });
                }
                table.push(v);
            }
        }
        if n == 0 {
            return Err(GroupError::NoIdentity);
        }
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::NoInverse(a))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            identity,
            inverse,
        })
    }

    fn from_table_unchecked(order: usize, table: Vec<usize>) -> Self {
        let at = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .expect("constructed table has an identity");
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| at(a, b) == identity).unwrap())
            .collect();
        FiniteGroup {
            order,
            table,
            identity,
            inverse,
        }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push((a + b) % n);
            }
        }
        Self::from_table_unchecked(n, table)
    }

    pub fn klein() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    /// Dihedral group of order 2n; element s^a r^x has index a·n + x, with
    /// the relation r·s = s·r⁻¹.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let order = 2 * n;
        let mut table = vec![0; order * order];
        for a in 0..2 {
            for x in 0..n {
                for b in 0..2 {
                    for y in 0..n {
                        let sign = if b == 0 { x } else { n - x % n };
                        let rx = (sign % n + y) % n;
                        let sa = (a + b) % 2;
                        table[(a * n + x) * order + (b * n + y)] = sa * n + rx;
                    }
                }
            }
        }
        Self::from_table_unchecked(order, table)
    }

    /// The quaternion group on [1, -1, i, -i, j, -j, k, -k].
    pub fn quaternion() -> Self {
        // Unit products (e, i, j, k) with signs: (unit, sign) pairs.
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let order = 8;
        let mut table = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let (ua, sa) = (a / 2, a % 2 == 1);
                let (ub, sb) = (b / 2, b % 2 == 1);
                let (uc, flip) = UNIT[ua][ub];
                let sc = (sa ^ sb) ^ flip;
                table[a * order + b] = uc * 2 + usize::from(sc);
            }
        }
        Self::from_table_unchecked(order, table)
    }

    /// Symmetric group on `degree` points, elements in lexicographic order
    /// of their image tuples (so the identity has index 0).
    pub fn symmetric(degree: usize) -> Self {
        let perms = all_permutations(degree);
        Self::from_permutation_list(&perms)
    }

    /// Alternating group on `degree` points, lexicographically ordered.
    pub fn alternating(degree: usize) -> Self {
        let perms: Vec<Vec<usize>> = all_permutations(degree)
            .into_iter()
            .filter(|p| permutation_parity(p) == 0)
            .collect();
        Self::from_permutation_list(&perms)
    }

    /// Direct product with lexicographic element order: (a, b) ↦ a·|B| + b.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let order = a.order * b.order;
        let mut table = vec![0; order * order];
        for a1 in 0..a.order {
            for b1 in 0..b.order {
                for a2 in 0..a.order {
                    for b2 in 0..b.order {
                        let lhs = a1 * b.order + b1;
                        let rhs = a2 * b.order + b2;
                        table[lhs * order + rhs] = a.mul(a1, a2) * b.order + b.mul(b1, b2);
                    }
                }
            }
        }
        Self::from_table_unchecked(order, table)
    }

    /// Closure of permutation generators under composition, sorted
    /// lexicographically, converted to a table.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        for (index, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(GroupError::DegreeMismatch {
                    index,
                    len: g.len(),
                    degree,
                });
            }
            let mut seen = vec![false; degree];
            for &v in g {
                if v >= degree || seen[v] {
                    return Err(GroupError::NotAPermutation { index, degree });
                }
                seen[v] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements: BTreeSet<Vec<usize>> = BTreeSet::new();
        elements.insert(identity.clone());
        let mut queue = vec![identity];
        while let Some(p) = queue.pop() {
            for g in generators {
                let q = compose_perms(g, &p);
                if elements.insert(q.clone()) {
                    queue.push(q);
                }
            }
        }
        let sorted: Vec<Vec<usize>> = elements.into_iter().collect();
        Ok(Self::from_permutation_list(&sorted))
    }

    fn from_permutation_list(perms: &[Vec<usize>]) -> Self {
        let index: BTreeMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let n = perms.len();
        let mut table = vec![0; n * n];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let prod = compose_perms(p, q);
                table[i * n + j] = index[prod.as_slice()];
            }
        }
        Self::from_table_unchecked(n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conjugate(&self, x: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv(by), x), by)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, a| num::integer::lcm(acc, self.element_order(a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let mut class_of = vec![usize::MAX; self.order];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> =
                (0..self.order).map(|g| self.conjugate(x, g)).collect();
            let id = raw.len();
            for &m in &members {
                class_of[m] = id;
            }
            raw.push(members.into_iter().collect());
        }
        // Identity class first, the rest by (size, least element).
        let identity_pos = class_of[self.identity];
        let mut rest: Vec<Vec<usize>> = raw
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != identity_pos)
            .map(|(_, c)| c.clone())
            .collect();
        rest.sort_by_key(|c| (c.len(), c[0]));
        let mut classes = vec![raw[identity_pos].clone()];
        classes.extend(rest);
        for (i, class) in classes.iter().enumerate() {
            for &m in class {
                class_of[m] = i;
            }
        }
        ConjugacyClasses { classes, class_of }
    }

    /// Closure of a generating set, sorted ascending.
    pub fn closure(&self, generators: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = vec![self.identity];
        for &g in generators {
            if !seen[g] {
                seen[g] = true;
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            for &g in generators {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Check that a subset of element indices forms a subgroup, naming the
    /// first failure.
    pub fn check_subgroup(&self, subset: &[usize]) -> Result<(), GroupError> {
        for &x in subset {
            if x >= self.order {
                return Err(GroupError::KernelElementOutOfRange(x));
            }
        }
        let members: BTreeSet<usize> = subset.iter().copied().collect();
        if !members.contains(&self.identity) {
            return Err(GroupError::MissingIdentity);
        }
        for &a in &members {
            for &b in &members {
                if !members.contains(&self.mul(a, b)) {
                    return Err(GroupError::NotClosed { a, b });
                }
            }
        }
        for &a in &members {
            if !members.contains(&self.inv(a)) {
                return Err(GroupError::MissingInverse(a));
            }
        }
        Ok(())
    }

    /// Check normality of a subgroup, returning a conjugation witness on
    /// failure.
    pub fn check_normal(&self, subset: &[usize]) -> Result<(), GroupError> {
        let members: BTreeSet<usize> = subset.iter().copied().collect();
        for g in 0..self.order {
            for &k in &members {
                if !members.contains(&self.conjugate(k, g)) {
                    return Err(GroupError::NotNormal {
                        conjugator: g,
                        element: k,
                    });
                }
            }
        }
        Ok(())
    }

    /// The inner automorphism x ↦ β⁻¹·x·β.
    pub fn inner(&self, beta: usize) -> Automorphism {
        Automorphism {
            image: (0..self.order).map(|x| self.conjugate(x, beta)).collect(),
        }
    }

    /// All automorphisms, in lexicographic image order.  Brute-force over
    /// generator images, refusing groups larger than `bound`.
    pub fn automorphism_group(&self, bound: usize) -> Result<Vec<Automorphism>, GroupError> {
        if self.order > bound {
            return Err(GroupError::AutBoundExceeded {
                order: self.order,
                bound,
            });
        }
        // Greedy generating set: extend while the closure grows.
        let mut generators = Vec::new();
        let mut span = vec![self.identity];
        for x in 0..self.order {
            if !span.contains(&x) {
                generators.push(x);
                span = self.closure(&generators);
                if span.len() == self.order {
                    break;
                }
            }
        }
        let orders: Vec<u64> = (0..self.order).map(|x| self.element_order(x)).collect();
        let mut found = Vec::new();
        let mut images = Vec::new();
        self.extend_automorphism(&generators, &orders, &mut images, &mut found);
        found.sort();
        Ok(found)
    }

    fn extend_automorphism(
        &self,
        generators: &[usize],
        orders: &[u64],
        images: &mut Vec<usize>,
        found: &mut Vec<Automorphism>,
    ) {
        if images.len() == generators.len() {
            if let Some(full) = self.complete_homomorphism(generators, images) {
                if is_bijection(&full) {
                    found.push(Automorphism { image: full });
                }
            }
            return;
        }
        let g = generators[images.len()];
        for candidate in 0..self.order {
            if orders[candidate] != orders[g] {
                continue;
            }
            images.push(candidate);
            if self.complete_homomorphism(&generators[..images.len()], images).is_some() {
                self.extend_automorphism(generators, orders, images, found);
            }
            images.pop();
        }
    }

    /// Propagate generator images through products; None on contradiction.
    fn complete_homomorphism(&self, generators: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = self.identity;
        for (&g, &im) in generators.iter().zip(images) {
            if map[g] != usize::MAX && map[g] != im {
                return None;
            }
            map[g] = im;
        }
        loop {
            let mut changed = false;
            let known: Vec<usize> = (0..self.order).filter(|&x| map[x] != usize::MAX).collect();
            for &a in &known {
                for &b in &known {
                    let c = self.mul(a, b);
                    let fc = self.mul(map[a], map[b]);
                    if map[c] == usize::MAX {
                        map[c] = fc;
                        changed = true;
                    } else if map[c] != fc {
                        return None;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Some(map)
    }

    /// Class representative powers: entry [j][m] is the class containing the
    /// m-th power of the representative of class j, for m in 0..e.
    pub fn power_class_table(&self, classes: &ConjugacyClasses, e: u64) -> Vec<Vec<usize>> {
        classes
            .representatives()
            .iter()
            .map(|&rep| {
                let mut row = Vec::with_capacity(e as usize);
                let mut x = self.identity;
                for _ in 0..e {
                    row.push(classes.class_of(x));
                    x = self.mul(x, rep);
                }
                row
            })
            .collect()
    }
}

fn all_permutations(degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..degree).collect();
    permute_into(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute_into(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_into(items, k + 1, out);
        items.swap(k, i);
    }
}

fn permutation_parity(p: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// (p∘q)(i) = p(q(i)): the right factor acts first.
fn compose_perms(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn is_bijection(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    for &v in map {
        if v >= map.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// The conjugation orbits of a group, identity class first, the rest ordered
/// by (size, least element).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.classes[class]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

/// A multiplication-preserving bijection, stored as its image permutation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Automorphism {
    image: Vec<usize>,
}

impl Automorphism {
    pub fn identity(order: usize) -> Self {
        Automorphism {
            image: (0..order).collect(),
        }
    }

    /// Validate an image permutation against the group's multiplication.
    pub fn new(image: Vec<usize>, group: &FiniteGroup) -> Result<Self, GroupError> {
        if image.len() != group.order() || !is_bijection(&image) {
            return Err(GroupError::NotBijective);
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if image[group.mul(a, b)] != group.mul(image[a], image[b]) {
                    return Err(GroupError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(Automorphism { image })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// (self ∘ other)(x) = self(other(x)): `other` acts first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.image.len(), other.image.len(), "degree mismatch");
        Automorphism {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Automorphism { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// A group H with a chosen normal subgroup (the kernel copy of G), the
/// quotient Q, the projection, and a section Q → H fixing the identity.
#[derive(Clone, Debug)]
pub struct GroupExtension {
    total: FiniteGroup,
    kernel_embed: Vec<usize>,
    kernel_group: FiniteGroup,
    quotient: FiniteGroup,
    proj: Vec<usize>,
    section: Vec<usize>,
}

impl GroupExtension {
    /// Build the extension data for a normal subgroup, with the default
    /// section sending each coset to its least element (and the quotient
    /// identity to the group identity).
    pub fn from_kernel(total: FiniteGroup, kernel: &[usize]) -> Result<Self, GroupError> {
        Self::build(total, kernel, None)
    }

    /// Same, but with an explicit section (one total-group element per
    /// quotient element).
    pub fn with_section(
        total: FiniteGroup,
        kernel: &[usize],
        section: Vec<usize>,
    ) -> Result<Self, GroupError> {
        Self::build(total, kernel, Some(section))
    }

    fn build(
        total: FiniteGroup,
        kernel: &[usize],
        explicit_section: Option<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        total.check_subgroup(kernel)?;
        total.check_normal(kernel)?;
        let kernel_embed: Vec<usize> = {
            let set: BTreeSet<usize> = kernel.iter().copied().collect();
            set.into_iter().collect()
        };
        let pos_of: BTreeMap<usize, usize> = kernel_embed
            .iter()
            .enumerate()
            .map(|(i, &h)| (h, i))
            .collect();
        let m = kernel_embed.len();
        let mut ktable = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                ktable[a * m + b] = pos_of[&total.mul(kernel_embed[a], kernel_embed[b])];
            }
        }
        let kernel_group = FiniteGroup::from_table_unchecked(m, ktable);

        // Cosets Kx, ordered by least member.
        let mut coset_of = vec![usize::MAX; total.order()];
        let mut coset_reps = Vec::new();
        for x in 0..total.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = coset_reps.len();
            for &k in &kernel_embed {
                coset_of[total.mul(k, x)] = id;
            }
            coset_reps.push(x);
        }
        let q = coset_reps.len();
        let mut qtable = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                qtable[a * q + b] = coset_of[total.mul(coset_reps[a], coset_reps[b])];
            }
        }
        let quotient = FiniteGroup::from_table_unchecked(q, qtable);

        let section = match explicit_section {
            Some(s) => {
                if s.len() != q {
                    return Err(GroupError::SectionLength {
                        got: s.len(),
                        expected: q,
                    });
                }
                for (qi, &h) in s.iter().enumerate() {
                    if h >= total.order() || coset_of[h] != qi {
                        return Err(GroupError::SectionNotRightInverse {
                            q: qi,
                            section_value: h,
                        });
                    }
                }
                if s[quotient.identity()] != total.identity() {
                    return Err(GroupError::SectionIdentity);
                }
                s
            }
            None => {
                let mut s = coset_reps.clone();
                s[quotient.identity()] = total.identity();
                s
            }
        };

        Ok(GroupExtension {
            total,
            kernel_embed,
            kernel_group,
            quotient,
            proj: coset_of,
            section,
        })
    }

    pub fn total(&self) -> &FiniteGroup {
        &self.total
    }

    pub fn kernel_group(&self) -> &FiniteGroup {
        &self.kernel_group
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    /// Kernel element (G-index) as a total-group element.
    pub fn embed(&self, g: usize) -> usize {
        self.kernel_embed[g]
    }

    /// Position of a total-group element inside the kernel, if any.
    pub fn kernel_position(&self, h: usize) -> Option<usize> {
        self.kernel_embed.binary_search(&h).ok()
    }

    pub fn proj(&self, h: usize) -> usize {
        self.proj[h]
    }

    pub fn section(&self, q: usize) -> usize {
        self.section[q]
    }

    /// The automorphism of the kernel group given by conjugating with the
    /// section lift of a quotient element: x ↦ r̃⁻¹·x·r̃.
    pub fn conjugation_on_kernel(&self, r: usize) -> Automorphism {
        let lift = self.section[r];
        let image = self
            .kernel_embed
            .iter()
            .map(|&h| {
                self.kernel_position(self.total.conjugate(h, lift))
                    .expect("normal subgroup is closed under conjugation")
            })
            .collect();
        Automorphism { image }
    }

    /// The kernel element β with r̃·s̃ = β·t̃ for t = rs, as a G-index.
    pub fn factor_element(&self, r: usize, s: usize) -> usize {
        let t = self.quotient.mul(r, s);
        let prod = self.total.mul(self.section[r], self.section[s]);
        let beta = self.total.mul(prod, self.total.inv(self.section[t]));
        self.kernel_position(beta)
            .expect("factor element lies in the kernel because proj is a homomorphism")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_the_order_two_table() {
        let g = FiniteGroup::from_mult_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn rejects_malformed_tables() {
        assert_eq!(
            FiniteGroup::from_mult_table(&[vec![0, 1], vec![1]]),
            Err(GroupError::RowLength {
                row: 1,
                len: 1,
                expected: 2
            })
        );
        assert_eq!(
            FiniteGroup::from_mult_table(&[vec![0, 1], vec![1, 7]]),
            Err(GroupError::EntryOutOfRange {
                row: 1,
                col: 1,
                value: 7,
                order: 2
            })
        );
        assert_eq!(
            FiniteGroup::from_mult_table(&[vec![0, 0], vec![0, 0]]),
            Err(GroupError::NoIdentity)
        );
        assert_eq!(
            FiniteGroup::from_mult_table(&[vec![0, 1], vec![1, 1]]),
            Err(GroupError::NoInverse(1))
        );
    }

    #[test]
    fn rejects_non_associative_table_naming_a_triple() {
        // A tampered order-5 cyclic table: row 2 has columns 1 and 2 swapped,
        // which keeps the identity and all two-sided inverses intact.
        let mut rows: Vec<Vec<usize>> = (0..5)
            .map(|a| (0..5).map(|b| (a + b) % 5).collect())
            .collect();
        rows[2].swap(1, 2);
        let err = FiniteGroup::from_mult_table(&rows).unwrap_err();
        let GroupError::NotAssociative { a, b, c } = err else {
            panic!("expected associativity failure, got {err:?}");
        };
        let at = |x: usize, y: usize| rows[x][y];
        assert_ne!(at(at(a, b), c), at(a, at(b, c)));
    }

    #[test]
    fn symmetric_group_composition_convention() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        // Elements in lex order: 0=id, 1=[0,2,1], 2=[1,0,2], 3=[1,2,0],
        // 4=[2,0,1], 5=[2,1,0].  With (p·q)(i) = p(q(i)):
        // [0,2,1]·[1,0,2] sends 0→2, 1→0, 2→1, i.e. [2,0,1].
        assert_eq!(s3.mul(1, 2), 4);
        assert_eq!(s3.mul(2, 1), 3);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn conjugacy_classes_of_s3_and_q8() {
        let s3 = FiniteGroup::symmetric(3);
        let cc = s3.conjugacy_classes();
        assert_eq!(cc.sizes(), vec![1, 2, 3]);
        assert_eq!(cc.members(0), &[0]);
        assert_eq!(cc.members(1), &[3, 4]);
        assert_eq!(cc.members(2), &[1, 2, 5]);

        let q8 = FiniteGroup::quaternion();
        let cc = q8.conjugacy_classes();
        assert_eq!(cc.sizes(), vec![1, 1, 2, 2, 2]);
        assert_eq!(cc.members(1), &[1]);
    }

    #[test]
    fn abelian_groups_have_singleton_classes() {
        for g in [FiniteGroup::cyclic(5), FiniteGroup::klein()] {
            let cc = g.conjugacy_classes();
            assert_eq!(cc.count(), g.order());
            assert!(cc.sizes().iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn element_orders_and_exponents() {
        assert_eq!(FiniteGroup::symmetric(3).exponent(), 6);
        assert_eq!(FiniteGroup::quaternion().exponent(), 4);
        assert_eq!(FiniteGroup::alternating(4).exponent(), 6);
        assert_eq!(FiniteGroup::klein().exponent(), 2);
        assert_eq!(FiniteGroup::dihedral(4).exponent(), 4);
        let q8 = FiniteGroup::quaternion();
        assert_eq!(q8.element_order(1), 2); // -1
        assert_eq!(q8.element_order(2), 4); // i
        assert_eq!(q8.center(), vec![0, 1]);
    }

    #[test]
    fn dihedral_group_relations() {
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        // r = index 1, s = index 4: r·s = s·r⁻¹.
        assert_eq!(d4.mul(1, 4), d4.mul(4, d4.inv(1)));
        assert_eq!(d4.conjugacy_classes().count(), 5);
    }

    #[test]
    fn quaternion_multiplication_spot_checks() {
        let q8 = FiniteGroup::quaternion();
        // [1,-1,i,-i,j,-j,k,-k]: i·j = k, j·i = -k, i² = -1, (-j)·(-j) = -1.
        assert_eq!(q8.mul(2, 4), 6);
        assert_eq!(q8.mul(4, 2), 7);
        assert_eq!(q8.mul(2, 2), 1);
        assert_eq!(q8.mul(5, 5), 1);
        assert_eq!(q8.inv(2), 3);
    }

    #[test]
    fn permutation_closure_builds_s3() {
        let g = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g, FiniteGroup::symmetric(3));
        assert_eq!(
            FiniteGroup::from_permutations(3, &[vec![0, 0, 1]]),
            Err(GroupError::NotAPermutation {
                index: 0,
                degree: 3
            })
        );
        assert_eq!(
            FiniteGroup::from_permutations(3, &[vec![1, 0]]),
            Err(GroupError::DegreeMismatch {
                index: 0,
                len: 2,
                degree: 3
            })
        );
    }

    #[test]
    fn direct_product_is_lexicographic() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(2));
        assert_eq!(g.order(), 6);
        // (1,1)·(2,1) = (0,0)
        assert_eq!(g.mul(1 * 2 + 1, 2 * 2 + 1), 0);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn inner_automorphism_matches_hand_computation() {
        let s3 = FiniteGroup::symmetric(3);
        // inner((0 1)) maps the 3-cycle [1,2,0] to the other 3-cycle [2,0,1].
        let swap01 = 2;
        let iota = s3.inner(swap01);
        assert_eq!(iota.apply(3), 4);
        assert!(s3.inner(s3.identity()).is_identity());
    }

    #[test]
    fn inner_is_an_anti_homomorphism() {
        let s3 = FiniteGroup::symmetric(3);
        for beta in 0..6 {
            for gamma in 0..6 {
                let lhs = s3.inner(beta).compose(&s3.inner(gamma));
                let rhs = s3.inner(s3.mul(gamma, beta));
                assert_eq!(lhs, rhs, "beta={beta} gamma={gamma}");
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(FiniteGroup::cyclic(2).automorphism_group(24).unwrap().len(), 1);
        assert_eq!(FiniteGroup::cyclic(4).automorphism_group(24).unwrap().len(), 2);
        assert_eq!(FiniteGroup::symmetric(3).automorphism_group(24).unwrap().len(), 6);
        assert_eq!(FiniteGroup::klein().automorphism_group(24).unwrap().len(), 6);
        assert_eq!(FiniteGroup::quaternion().automorphism_group(24).unwrap().len(), 24);
        assert_eq!(
            FiniteGroup::symmetric(4).automorphism_group(10),
            Err(GroupError::AutBoundExceeded {
                order: 24,
                bound: 10
            })
        );
    }

    #[test]
    fn automorphisms_form_a_group() {
        let s3 = FiniteGroup::symmetric(3);
        let auts = s3.automorphism_group(24).unwrap();
        for a in &auts {
            assert!(Automorphism::new(a.image().to_vec(), &s3).is_ok());
            assert!(auts.contains(&a.inverse()));
            for b in &auts {
                assert!(auts.contains(&a.compose(b)));
            }
        }
        // Deterministic ordering: identity is lexicographically first.
        assert!(auts[0].is_identity());
    }

    #[test]
    fn automorphism_validation_rejects_non_homomorphisms() {
        let c4 = FiniteGroup::cyclic(4);
        assert!(matches!(
            Automorphism::new(vec![0, 2, 1, 3], &c4),
            Err(GroupError::NotAHomomorphism { .. })
        ));
        assert_eq!(
            Automorphism::new(vec![0, 0, 1, 2], &c4),
            Err(GroupError::NotBijective)
        );
    }

    #[test]
    fn subgroup_and_normality_witnesses() {
        let s3 = FiniteGroup::symmetric(3);
        assert!(s3.check_subgroup(&[0, 3, 4]).is_ok());
        assert!(s3.check_normal(&[0, 3, 4]).is_ok());
        assert!(s3.check_subgroup(&[0, 1]).is_ok());
        let err = s3.check_normal(&[0, 1]).unwrap_err();
        let GroupError::NotNormal {
            conjugator,
            element,
        } = err
        else {
            panic!("expected normality failure");
        };
        assert!(![0usize, 1].contains(&s3.conjugate(element, conjugator)));
        assert_eq!(
            s3.check_subgroup(&[0, 3]),
            Err(GroupError::NotClosed { a: 3, b: 3 })
        );
        assert_eq!(s3.check_subgroup(&[3, 4]), Err(GroupError::MissingIdentity));
    }

    #[test]
    fn extension_quotient_and_default_section() {
        let q8 = FiniteGroup::quaternion();
        let ext = GroupExtension::from_kernel(q8, &[0, 1, 2, 3]).unwrap();
        assert_eq!(ext.quotient().order(), 2);
        assert_eq!(ext.kernel_group().order(), 4);
        assert_eq!(ext.section(0), 0);
        assert_eq!(ext.section(1), 4); // least element of the other coset: j
        assert_eq!(ext.proj(6), 1);
        // Kernel group is cyclic of order 4 generated by i (G-index 2).
        assert_eq!(ext.kernel_group().element_order(2), 4);
    }

    #[test]
    fn factor_elements_of_the_three_reference_extensions() {
        // j·j = -1 inside the quaternion group.
        let q8 = FiniteGroup::quaternion();
        let ext = GroupExtension::from_kernel(q8, &[0, 1, 2, 3]).unwrap();
        assert_eq!(ext.factor_element(1, 1), 1);
        assert_eq!(ext.factor_element(0, 1), 0);

        // 1+1 = 2 inside Z/4 over its order-2 subgroup.
        let c4 = FiniteGroup::cyclic(4);
        let ext = GroupExtension::from_kernel(c4, &[0, 2]).unwrap();
        assert_eq!(ext.factor_element(1, 1), 1);
        assert_eq!(ext.embed(1), 2);

        // A split product has a homomorphic least-element section.
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(2));
        let ext = GroupExtension::from_kernel(g, &[0, 2, 4]).unwrap();
        for r in 0..2 {
            for s in 0..2 {
                assert_eq!(ext.factor_element(r, s), 0, "split extension r={r} s={s}");
            }
        }
    }

    #[test]
    fn conjugation_on_kernel_inverts_for_the_symmetric_extension() {
        let s3 = FiniteGroup::symmetric(3);
        let ext = GroupExtension::from_kernel(s3, &[0, 3, 4]).unwrap();
        assert_eq!(ext.quotient().order(), 2);
        let alpha = ext.conjugation_on_kernel(1);
        // The kernel copy of C3 has elements [id, (012), (021)]; conjugating
        // by a transposition swaps the two 3-cycles.
        assert_eq!(alpha.apply(1), 2);
        assert_eq!(alpha.apply(2), 1);
        assert!(ext.conjugation_on_kernel(0).is_identity());
    }

    #[test]
    fn explicit_sections_are_validated() {
        let c4 = FiniteGroup::cyclic(4);
        let ok = GroupExtension::with_section(c4.clone(), &[0, 2], vec![0, 3]).unwrap();
        assert_eq!(ok.section(1), 3);
        assert_eq!(ok.factor_element(1, 1), 1); // 3+3 = 6 = 2 mod 4
        // 2 lies in the kernel coset, not the nontrivial one.
        assert!(matches!(
            GroupExtension::with_section(c4.clone(), &[0, 2], vec![0, 2]),
            Err(GroupError::SectionNotRightInverse {
                q: 1,
                section_value: 2
            })
        ));
        assert!(matches!(
            GroupExtension::with_section(c4, &[0, 2], vec![2, 1]),
            Err(GroupError::SectionIdentity)
        ));
    }

    #[test]
    fn extension_rejects_bad_kernels() {
        let s3 = FiniteGroup::symmetric(3);
        assert!(matches!(
            GroupExtension::from_kernel(s3.clone(), &[0, 1]),
            Err(GroupError::NotNormal { .. })
        ));
        assert!(matches!(
            GroupExtension::from_kernel(s3, &[0, 3]),
            Err(GroupError::NotClosed { .. })
        ));
    }

    #[test]
    fn power_class_tables() {
        let c3 = FiniteGroup::cyclic(3);
        let cc = c3.conjugacy_classes();
        assert_eq!(
            c3.power_class_table(&cc, 3),
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]
        );
    }

    #[test]
    fn closure_generates_subgroups() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.closure(&[3]), vec![0, 3, 4]);
        assert_eq!(s3.closure(&[1, 3]).len(), 6);
        assert_eq!(s3.closure(&[]), vec![0]);
    }
}
