//! Finite commutative rings, their homomorphisms, and finitely presented
//! modules, at brute-force scale.
//!
//! A ring is a pair of multiplication tables with the axioms checked on
//! construction.  Unital homomorphisms are enumerated by choosing images
//! for a small generating set and closing; the result is validated in
//! full, so the generator bookkeeping only prunes the search.  Presented
//! modules are cokernels of matrices over the ring: base change maps a
//! presentation entrywise, the tensor product stacks the two presentations
//! block-wise, and isomorphism is decided by exhausting generator images
//! over the (finite, bounded) element sets.
//!
//! The two-point demonstration builds F_p[t]/(t²−1) for an odd prime p,
//! splits it by its idempotent pair, and contrasts the unit of the
//! module tensor structure (the regular module, multiplicity vector
//! (1, 1)) with the unit of the group-representation tensor structure
//! (the trivial character, multiplicity vector (1, 0)).

use crate::modular::{is_prime, FpMatrix};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AffineError {
    #[error("{which} table row {row} has {len} entries, expected {expected}")]
    TableShape {
        which: &'static str,
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("{which} table entry at ({row}, {col}) is {value}, outside 0..{order}")]
    EntryOutOfRange {
        which: &'static str,
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("addition is not commutative at ({a}, {b})")]
    AddNotCommutative { a: usize, b: usize },
    #[error("addition is not associative at ({a}, {b}, {c})")]
    AddNotAssociative { a: usize, b: usize, c: usize },
    #[error("no additive identity")]
    NoZero,
    #[error("element {0} has no additive inverse")]
    NoAdditiveInverse(usize),
    #[error("multiplication is not commutative at ({a}, {b})")]
    MulNotCommutative { a: usize, b: usize },
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    MulNotAssociative { a: usize, b: usize, c: usize },
    #[error("distributivity fails at ({a}, {b}, {c})")]
    NotDistributive { a: usize, b: usize, c: usize },
    #[error("no multiplicative identity")]
    NoOne,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the quotient modulus must be monic")]
    NonMonicModulus,
    #[error("the quotient modulus must have degree at least one")]
    ConstantModulus,
    #[error("ring of order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("homomorphism image has {got} entries, expected {expected}")]
    HomLength { got: usize, expected: usize },
    #[error("homomorphism image at {at} is {value}, outside the target ring")]
    HomValueOutOfRange { at: usize, value: usize },
    #[error("zero is not preserved")]
    ZeroNotPreserved,
    #[error("one is not preserved")]
    OneNotPreserved,
    #[error("the map is not additive at ({a}, {b})")]
    NotAdditive { a: usize, b: usize },
    #[error("the map is not multiplicative at ({a}, {b})")]
    NotMultiplicative { a: usize, b: usize },
    #[error("the operands live over different rings")]
    RingMismatch,
    #[error("presentation entry at ({row}, {col}) is {value}, outside the ring")]
    PresentationEntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("the construction requires an odd characteristic")]
    EvenCharacteristic,
    #[error("module on {size} generators over this ring exceeds the enumeration bound {bound}")]
    EnumerationTooLarge { size: usize, bound: usize },
}

/// A finite commutative unital ring given by its operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCommRing {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
    neg: Vec<usize>,
}

impl FiniteCommRing {
    pub fn from_tables(
        add_rows: &[Vec<usize>],
        mul_rows: &[Vec<usize>],
    ) -> Result<Self, AffineError> {
        let n = add_rows.len();
        let check_shape = |rows: &[Vec<usize>], which: &'static str| {
            if rows.len() != n {
                return Err(AffineError::TableShape {
                    which,
                    row: rows.len(),
                    len: rows.len(),
                    expected: n,
                });
            }
            for (i, row) in rows.iter().enumerate() {
                if row.len() != n {
                    return Err(AffineError::TableShape {
                        which,
                        row: i,
                        len: row.len(),
                        expected: n,
                    });
                }
                for (j, &v) in row.iter().enumerate() {
                    if v >= n {
                        return Err(AffineError::EntryOutOfRange {
                            which,
                            row: i,
                            col: j,
                            value: v,
                            order: n,
                        });
                    }
                }
            }
            Ok(())
        };
        check_shape(add_rows, "addition")?;
        check_shape(mul_rows, "multiplication")?;
        let add: Vec<usize> = add_rows.iter().flatten().copied().collect();
        let mul: Vec<usize> = mul_rows.iter().flatten().copied().collect();
        let a = |x: usize, y: usize| add[x * n + y];
        let m = |x: usize, y: usize| mul[x * n + y];
        for x in 0..n {
            for y in 0..n {
                if a(x, y) != a(y, x) {
                    return Err(AffineError::AddNotCommutative { a: x, b: y });
                }
                if m(x, y) != m(y, x) {
                    return Err(AffineError::MulNotCommutative { a: x, b: y });
                }
            }
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| a(z, x) == x))
            .ok_or(AffineError::NoZero)?;
        let mut neg = vec![usize::MAX; n];
        for x in 0..n {
            neg[x] = (0..n)
                .find(|&y| a(x, y) == zero)
                .ok_or(AffineError::NoAdditiveInverse(x))?;
        }
        let one = (0..n)
            .find(|&u| (0..n).all(|x| m(u, x) == x))
            .ok_or(AffineError::NoOne)?;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if a(a(x, y), z) != a(x, a(y, z)) {
                        return Err(AffineError::AddNotAssociative { a: x, b: y, c: z });
                    }
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return Err(AffineError::MulNotAssociative { a: x, b: y, c: z });
                    }
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                        return Err(AffineError::NotDistributive { a: x, b: y, c: z });
                    }
                }
            }
        }
        Ok(FiniteCommRing {
            order: n,
            add,
            mul,
            zero,
            one,
            neg,
        })
    }

    /// The integers modulo n.
    pub fn zmod(n: usize) -> Result<Self, AffineError> {
        assert!(n > 0, "the zero ring needs at least one element");
        let add: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i * j) % n).collect()).collect();
        FiniteCommRing::from_tables(&add, &mul)
    }

    /// The field with p elements.
    pub fn prime_field(p: u64) -> Result<Self, AffineError> {
        if !is_prime(p) {
            return Err(AffineError::NotPrime(p));
        }
        FiniteCommRing::zmod(p as usize)
    }

    /// F_p[x] modulo a monic polynomial, coefficients listed from the
    /// constant term up.  Elements are encoded positionally: the tuple
    /// (c_0, …, c_{d−1}) has index Σ c_i·pⁱ.
    pub fn poly_quotient(p: u64, modulus: &[u64]) -> Result<Self, AffineError> {
        if !is_prime(p) {
            return Err(AffineError::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(AffineError::ConstantModulus);
        }
        if *modulus.last().unwrap() != 1 {
            return Err(AffineError::NonMonicModulus);
        }
        let d = modulus.len() - 1;
        let pu = p as usize;
        let n = pu.pow(d as u32);
        let decode = |idx: usize| -> Vec<u64> {
            let mut c = Vec::with_capacity(d);
            let mut rest = idx;
            for _ in 0..d {
                c.push((rest % pu) as u64);
                rest /= pu;
            }
            c
        };
        let encode = |c: &[u64]| -> usize {
            c.iter()
                .rev()
                .fold(0usize, |acc, &v| acc * pu + (v % p) as usize)
        };
        // x^d reduces to the negation of the lower modulus coefficients.
        let reduction: Vec<u64> = modulus[..d].iter().map(|&c| (p - c % p) % p).collect();
        let mut add = Vec::with_capacity(n);
        let mut mul = Vec::with_capacity(n);
        for i in 0..n {
            let ci = decode(i);
            let mut add_row = Vec::with_capacity(n);
            let mut mul_row = Vec::with_capacity(n);
            for j in 0..n {
                let cj = decode(j);
                let sum: Vec<u64> = ci.iter().zip(&cj).map(|(&a, &b)| (a + b) % p).collect();
                add_row.push(encode(&sum));
                // Schoolbook product followed by repeated x^d reduction.
                let mut prod = vec![0u64; 2 * d - 1];
                for (a, &ca) in ci.iter().enumerate() {
                    for (b, &cb) in cj.iter().enumerate() {
                        prod[a + b] = (prod[a + b] + ca * cb) % p;
                    }
                }
                for deg in (d..prod.len()).rev() {
                    let coeff = prod[deg];
                    if coeff != 0 {
                        prod[deg] = 0;
                        for (off, &r) in reduction.iter().enumerate() {
                            prod[deg - d + off] = (prod[deg - d + off] + coeff * r) % p;
                        }
                    }
                }
                mul_row.push(encode(&prod[..d]));
            }
            add.push(add_row);
            mul.push(mul_row);
        }
        FiniteCommRing::from_tables(&add, &mul)
    }

    /// Componentwise product ring; the pair (x, y) has index x·|B| + y.
    pub fn product(a: &FiniteCommRing, b: &FiniteCommRing) -> Result<Self, AffineError> {
        let n = a.order * b.order;
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut add = vec![vec![0; n]; n];
        let mut mul = vec![vec![0; n]; n];
        for xa in 0..a.order {
            for ya in 0..b.order {
                for xb in 0..a.order {
                    for yb in 0..b.order {
                        add[idx(xa, ya)][idx(xb, yb)] = idx(a.add(xa, xb), b.add(ya, yb));
                        mul[idx(xa, ya)][idx(xb, yb)] = idx(a.mul(xa, xb), b.mul(ya, yb));
                    }
                }
            }
        }
        FiniteCommRing::from_tables(&add, &mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }
}

/// A unital homomorphism between two table rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    source: FiniteCommRing,
    target: FiniteCommRing,
    image: Vec<usize>,
}

impl RingHom {
    pub fn new(
        source: FiniteCommRing,
        target: FiniteCommRing,
        image: Vec<usize>,
    ) -> Result<Self, AffineError> {
        if image.len() != source.order() {
            return Err(AffineError::HomLength {
                got: image.len(),
                expected: source.order(),
            });
        }
        if let Some((at, &value)) = image
            .iter()
            .enumerate()
            .find(|(_, &v)| v >= target.order())
        {
            return Err(AffineError::HomValueOutOfRange { at, value });
        }
        if image[source.zero()] != target.zero() {
            return Err(AffineError::ZeroNotPreserved);
        }
        if image[source.one()] != target.one() {
            return Err(AffineError::OneNotPreserved);
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if image[source.add(a, b)] != target.add(image[a], image[b]) {
                    return Err(AffineError::NotAdditive { a, b });
                }
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(AffineError::NotMultiplicative { a, b });
                }
            }
        }
        Ok(RingHom {
            source,
            target,
            image,
        })
    }

    pub fn identity(ring: &FiniteCommRing) -> Self {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            image: (0..ring.order()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteCommRing {
        &self.source
    }

    pub fn target(&self) -> &FiniteCommRing {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &v in &self.image {
            seen[v] = true;
        }
        self.source.order() == self.target.order() && seen.iter().all(|&s| s)
    }

    /// The composite other ∘ self (self applied first).
    pub fn then(&self, other: &RingHom) -> Result<RingHom, AffineError> {
        if self.target != other.source {
            return Err(AffineError::RingMismatch);
        }
        Ok(RingHom {
            source: self.source.clone(),
            target: other.target.clone(),
            image: self.image.iter().map(|&v| other.image[v]).collect(),
        })
    }
}

/// How each ring element is first reached when closing a generating set
/// under the ring operations.
enum Recipe {
    Zero,
    One,
    Gen(usize),
    Add(usize, usize),
    Mul(usize, usize),
}

/// Generators and element recipes for a ring: every element is reachable
/// from 0, 1 and the generators via the recorded operations, in discovery
/// order.
fn generating_recipes(ring: &FiniteCommRing) -> (Vec<usize>, Vec<(usize, Recipe)>) {
    let n = ring.order();
    let mut recipe_of: Vec<Option<usize>> = vec![None; n];
    let mut recipes: Vec<(usize, Recipe)> = Vec::new();
    let mut gens = Vec::new();
    let push = |element: usize,
                    recipe: Recipe,
                    recipe_of: &mut Vec<Option<usize>>,
                    recipes: &mut Vec<(usize, Recipe)>| {
        if recipe_of[element].is_none() {
            recipe_of[element] = Some(recipes.len());
            recipes.push((element, recipe));
        }
    };
    push(ring.zero(), Recipe::Zero, &mut recipe_of, &mut recipes);
    push(ring.one(), Recipe::One, &mut recipe_of, &mut recipes);
    loop {
        // Close the discovered set under both operations.
        let mut grew = true;
        while grew {
            grew = false;
            let known: Vec<usize> = recipes.iter().map(|(e, _)| *e).collect();
            for &a in &known {
                for &b in &known {
                    let before = recipes.len();
                    push(ring.add(a, b), Recipe::Add(a, b), &mut recipe_of, &mut recipes);
                    push(ring.mul(a, b), Recipe::Mul(a, b), &mut recipe_of, &mut recipes);
                    if recipes.len() > before {
                        grew = true;
                    }
                }
            }
        }
        match recipe_of.iter().position(Option::is_none) {
            Some(next) => {
                gens.push(next);
                push(next, Recipe::Gen(gens.len() - 1), &mut recipe_of, &mut recipes);
            }
            None => break,
        }
    }
    (gens, recipes)
}

/// All unital homomorphisms source → target, ordered by image vector.
/// Candidate maps are generated from images of a generating set and then
/// validated in full.
pub fn ring_homs(
    source: &FiniteCommRing,
    target: &FiniteCommRing,
    bound: usize,
) -> Result<Vec<RingHom>, AffineError> {
    for ring in [source, target] {
        if ring.order() > bound {
            return Err(AffineError::BoundExceeded {
                order: ring.order(),
                bound,
            });
        }
    }
    let (gens, recipes) = generating_recipes(source);
    let mut homs = Vec::new();
    let mut assignment = vec![0usize; gens.len()];
    loop {
        let mut image = vec![usize::MAX; source.order()];
        for (element, recipe) in &recipes {
            image[*element] = match recipe {
                Recipe::Zero => target.zero(),
                Recipe::One => target.one(),
                Recipe::Gen(i) => assignment[*i],
                Recipe::Add(a, b) => target.add(image[*a], image[*b]),
                Recipe::Mul(a, b) => target.mul(image[*a], image[*b]),
            };
        }
        if let Ok(hom) = RingHom::new(source.clone(), target.clone(), image) {
            homs.push(hom);
        }
        // Advance the assignment odometer.
        let mut pos = 0;
        loop {
            if pos == assignment.len() {
                homs.sort_by(|a, b| a.image.cmp(&b.image));
                return Ok(homs);
            }
            assignment[pos] += 1;
            if assignment[pos] < target.order() {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

/// A finitely presented module: the cokernel of a rows × cols matrix over
/// the ring, i.e. R^cols modulo the row span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    ring: FiniteCommRing,
    rows: usize,
    cols: usize,
    entries: Vec<usize>,
}

impl PresentedModule {
    pub fn new(
        ring: FiniteCommRing,
        rows: usize,
        cols: usize,
        entries: Vec<usize>,
    ) -> Result<Self, AffineError> {
        if entries.len() != rows * cols {
            return Err(AffineError::TableShape {
                which: "presentation",
                row: 0,
                len: entries.len(),
                expected: rows * cols,
            });
        }
        if let Some((pos, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= ring.order()) {
            return Err(AffineError::PresentationEntryOutOfRange {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
                value,
            });
        }
        Ok(PresentedModule {
            ring,
            rows,
            cols,
            entries,
        })
    }

    /// Free module of the given rank (no relations).
    pub fn free(ring: FiniteCommRing, rank: usize) -> Self {
        PresentedModule {
            ring,
            rows: 0,
            cols: rank,
            entries: Vec::new(),
        }
    }

    /// R/(a) as a one-generator module.
    pub fn cyclic(ring: FiniteCommRing, a: usize) -> Result<Self, AffineError> {
        PresentedModule::new(ring, 1, 1, vec![a])
    }

    pub fn ring(&self) -> &FiniteCommRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> usize {
        self.entries[r * self.cols + c]
    }

    /// Block-diagonal juxtaposition.
    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule, AffineError> {
        if self.ring != other.ring {
            return Err(AffineError::RingMismatch);
        }
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let zero = self.ring.zero();
        let mut entries = vec![zero; rows * cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[r * cols + c] = self.entry(r, c);
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                entries[(self.rows + r) * cols + self.cols + c] = other.entry(r, c);
            }
        }
        PresentedModule::new(self.ring.clone(), rows, cols, entries)
    }

    /// Tensor product presentation: generators e_a ⊗ f_b, with the
    /// relations of each factor spread across the generators of the other.
    pub fn tensor(&self, other: &PresentedModule) -> Result<PresentedModule, AffineError> {
        if self.ring != other.ring {
            return Err(AffineError::RingMismatch);
        }
        let cols = self.cols * other.cols;
        let rows = self.rows * other.cols + self.cols * other.rows;
        let zero = self.ring.zero();
        let mut entries = vec![zero; rows * cols];
        let col_idx = |a: usize, b: usize| a * other.cols + b;
        let mut row = 0;
        for r in 0..self.rows {
            for b in 0..other.cols {
                for a in 0..self.cols {
                    entries[row * cols + col_idx(a, b)] = self.entry(r, a);
                }
                row += 1;
            }
        }
        for a in 0..self.cols {
            for s in 0..other.rows {
                for b in 0..other.cols {
                    entries[row * cols + col_idx(a, b)] = other.entry(s, b);
                }
                row += 1;
            }
        }
        PresentedModule::new(self.ring.clone(), rows, cols, entries)
    }

    /// Enumerate the underlying set: canonical representatives of
    /// R^cols modulo the row span, plus a coset lookup table.
    fn quotient(&self, bound: usize) -> Result<ModuleQuotient, AffineError> {
        let n = self.ring.order();
        let size = n.checked_pow(self.cols as u32).filter(|&s| s <= bound);
        let Some(total) = size else {
            return Err(AffineError::EnumerationTooLarge {
                size: self.cols,
                bound,
            });
        };
        let decode = |idx: usize| -> Vec<usize> {
            let mut v = Vec::with_capacity(self.cols);
            let mut rest = idx;
            for _ in 0..self.cols {
                v.push(rest % n);
                rest /= n;
            }
            v
        };
        let encode = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &x| acc * n + x) };
        // Span of the relation rows: close {0} under adding scalar
        // multiples of each row.
        let zero_vec = vec![self.ring.zero(); self.cols];
        let mut span = vec![encode(&zero_vec)];
        let mut in_span = vec![false; total];
        in_span[span[0]] = true;
        let mut frontier = span.clone();
        while let Some(v_idx) = frontier.pop() {
            let v = decode(v_idx);
            for r in 0..self.rows {
                for c in 0..n {
                    let shifted: Vec<usize> = (0..self.cols)
                        .map(|j| self.ring.add(v[j], self.ring.mul(c, self.entry(r, j))))
                        .collect();
                    let idx = encode(&shifted);
                    if !in_span[idx] {
                        in_span[idx] = true;
                        span.push(idx);
                        frontier.push(idx);
                    }
                }
            }
        }
        let mut rep_of = vec![usize::MAX; total];
        let mut reps = Vec::new();
        for v_idx in 0..total {
            if rep_of[v_idx] != usize::MAX {
                continue;
            }
            let v = decode(v_idx);
            let rep_pos = reps.len();
            reps.push(v_idx);
            for &s_idx in &span {
                let s = decode(s_idx);
                let sum: Vec<usize> = (0..self.cols)
                    .map(|j| self.ring.add(v[j], s[j]))
                    .collect();
                rep_of[encode(&sum)] = rep_pos;
            }
        }
        Ok(ModuleQuotient {
            ring: self.ring.clone(),
            cols: self.cols,
            reps,
            rep_of,
        })
    }
}

/// The element set of a presented module, as canonical coset indices.
struct ModuleQuotient {
    ring: FiniteCommRing,
    cols: usize,
    /// Vector index of each coset's least representative.
    reps: Vec<usize>,
    /// Coset number of every vector index.
    rep_of: Vec<usize>,
}

impl ModuleQuotient {
    fn len(&self) -> usize {
        self.reps.len()
    }

    fn decode(&self, idx: usize) -> Vec<usize> {
        let n = self.ring.order();
        let mut v = Vec::with_capacity(self.cols);
        let mut rest = idx;
        for _ in 0..self.cols {
            v.push(rest % n);
            rest /= n;
        }
        v
    }

    fn encode(&self, v: &[usize]) -> usize {
        let n = self.ring.order();
        v.iter().rev().fold(0, |acc, &x| acc * n + x)
    }

    /// Coset of a scalar combination Σ scalars_j · basis images.
    fn combine(&self, coeffs: &[usize], images: &[usize]) -> usize {
        let mut acc = vec![self.ring.zero(); self.cols];
        for (&c, &img_rep) in coeffs.iter().zip(images) {
            let img = self.decode(self.reps[img_rep]);
            for j in 0..self.cols {
                acc[j] = self.ring.add(acc[j], self.ring.mul(c, img[j]));
            }
        }
        self.rep_of[self.encode(&acc)]
    }
}

const MODULE_ENUMERATION_BOUND: usize = 1 << 16;

/// Decide isomorphism of two presented modules over the same ring by
/// exhausting generator images.
pub fn modules_isomorphic(
    a: &PresentedModule,
    b: &PresentedModule,
) -> Result<bool, AffineError> {
    if a.ring != b.ring {
        return Err(AffineError::RingMismatch);
    }
    let qa = a.quotient(MODULE_ENUMERATION_BOUND)?;
    let qb = b.quotient(MODULE_ENUMERATION_BOUND)?;
    if qa.len() != qb.len() {
        return Ok(false);
    }
    if qa.len() == 1 {
        return Ok(true);
    }
    // Candidate maps send each generator of a to a coset of b; relations
    // must die and the induced map must be onto.
    let gens = a.cols;
    let candidates = qb.len().checked_pow(gens as u32).filter(|&c| c <= MODULE_ENUMERATION_BOUND);
    let Some(total) = candidates else {
        return Err(AffineError::EnumerationTooLarge {
            size: gens,
            bound: MODULE_ENUMERATION_BOUND,
        });
    };
    'candidate: for cand in 0..total {
        let mut images = Vec::with_capacity(gens);
        let mut rest = cand;
        for _ in 0..gens {
            images.push(rest % qb.len());
            rest /= qb.len();
        }
        for r in 0..a.rows {
            let relation: Vec<usize> = (0..a.cols).map(|c| a.entry(r, c)).collect();
            if qb.combine(&relation, &images) != qb.rep_of[qb.encode(&vec![b.ring.zero(); b.cols])]
            {
                continue 'candidate;
            }
        }
        let mut hit = vec![false; qb.len()];
        for &v_idx in &qa.reps {
            let coeffs = qa.decode(v_idx);
            hit[qb.combine(&coeffs, &images)] = true;
        }
        if hit.iter().all(|&h| h) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Map a presentation entrywise through a homomorphism.
pub fn base_change(
    f: &RingHom,
    module: &PresentedModule,
) -> Result<PresentedModule, AffineError> {
    if module.ring != *f.source() {
        return Err(AffineError::RingMismatch);
    }
    PresentedModule::new(
        f.target().clone(),
        module.rows,
        module.cols,
        module.entries.iter().map(|&e| f.apply(e)).collect(),
    )
}

/// A base-change functor presented by its action on the endomorphisms of
/// the rank-1 free module (each endomorphism is a 1×1 presentation entry).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorDatum {
    source: FiniteCommRing,
    target: FiniteCommRing,
    endo_action: Vec<usize>,
}

impl FunctorDatum {
    pub fn new(
        source: FiniteCommRing,
        target: FiniteCommRing,
        endo_action: Vec<usize>,
    ) -> Result<Self, AffineError> {
        if endo_action.len() != source.order() {
            return Err(AffineError::HomLength {
                got: endo_action.len(),
                expected: source.order(),
            });
        }
        if let Some((at, &value)) = endo_action
            .iter()
            .enumerate()
            .find(|(_, &v)| v >= target.order())
        {
            return Err(AffineError::HomValueOutOfRange { at, value });
        }
        Ok(FunctorDatum {
            source,
            target,
            endo_action,
        })
    }

    /// Record how base change along f acts on each multiplication
    /// endomorphism of the rank-1 free module.
    pub fn from_base_change(f: &RingHom) -> Result<Self, AffineError> {
        let source = f.source().clone();
        let mut endo_action = Vec::with_capacity(source.order());
        for r in 0..source.order() {
            // The endomorphism "multiply by r" is the 1×1 matrix [r];
            // the functor maps matrices entrywise.
            let endo = PresentedModule::new(source.clone(), 1, 1, vec![r])?;
            let moved = base_change(f, &endo)?;
            endo_action.push(moved.entry(0, 0));
        }
        FunctorDatum::new(source, f.target().clone(), endo_action)
    }

    pub fn source(&self) -> &FiniteCommRing {
        &self.source
    }

    pub fn target(&self) -> &FiniteCommRing {
        &self.target
    }
}

/// Recover the ring homomorphism from a functor datum via End(R) ≅ R.
/// Fails if the recorded action is not additive, multiplicative and
/// unital — i.e. if the datum does not come from a tensor functor.
pub fn reconstruct_hom(datum: &FunctorDatum) -> Result<RingHom, AffineError> {
    RingHom::new(
        datum.source.clone(),
        datum.target.clone(),
        datum.endo_action.clone(),
    )
}

/// Report of the two-tensor-structures demonstration over F_p[t]/(t²−1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPointReport {
    pub prime: u64,
    pub ring: FiniteCommRing,
    /// Element index and coefficient pair of (1+t)/2.
    pub idempotent_plus: usize,
    pub idempotent_plus_coeffs: [u64; 2],
    /// Element index and coefficient pair of (1−t)/2.
    pub idempotent_minus: usize,
    pub idempotent_minus_coeffs: [u64; 2],
    /// The splitting isomorphism onto F_p × F_p.
    pub product_iso: RingHom,
    /// Multiplicities of (trivial, sign) in the ring itself — the unit of
    /// the module tensor structure.
    pub sheaf_unit_vector: [u64; 2],
    /// Multiplicities of (trivial, sign) in the trivial character — the
    /// unit of the representation tensor structure.
    pub representation_unit_vector: [u64; 2],
    /// Idempotent classes whose square module is free of rank one.
    pub square_class_count: usize,
}

/// Build F_p[t]/(t²−1) for an odd prime, split it by idempotents, and
/// contrast the units of the two tensor structures on its modules.
pub fn two_point_example(p: u64) -> Result<TwoPointReport, AffineError> {
    if p == 2 {
        return Err(AffineError::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(AffineError::NotPrime(p));
    }
    let pu = p as usize;
    let ring = FiniteCommRing::poly_quotient(p, &[p - 1, 0, 1])?;
    let decode = |idx: usize| [(idx % pu) as u64, (idx / pu) as u64];
    let encode = |c: [u64; 2]| (c[0] as usize) + pu * (c[1] as usize);

    // Idempotents: e² = e.  Exactly 0, 1 and the conjugate pair (1±t)/2.
    let idempotents: Vec<usize> = (0..ring.order())
        .filter(|&e| ring.is_idempotent(e))
        .collect();
    let inv2 = (0..p).find(|&c| (2 * c) % p == 1).expect("odd modulus");
    let plus = encode([inv2, inv2]);
    let minus = encode([inv2, p - inv2]);
    debug_assert!(idempotents.contains(&plus) && idempotents.contains(&minus));

    // Split onto the product of two copies of the prime field: r maps to
    // its coordinates along the idempotent pair.
    let field = FiniteCommRing::prime_field(p)?;
    let double = FiniteCommRing::product(&field, &field)?;
    let coordinate = |r: usize, e: usize| -> usize {
        (0..pu)
            .find(|&c| ring.mul(r, e) == ring.mul(c, e))
            .expect("idempotent coordinates exhaust the prime field")
    };
    let iso_image: Vec<usize> = (0..ring.order())
        .map(|r| coordinate(r, plus) * pu + coordinate(r, minus))
        .collect();
    let product_iso = RingHom::new(ring.clone(), double, iso_image)?;
    debug_assert!(product_iso.is_bijective());

    // Multiplication by t generates an order-two symmetry; multiplicities
    // of its (+1, −1) eigenspaces are ranks over the prime field.
    let t = encode([0, 1]);
    let multiplicities = |action: &FpMatrix| -> [u64; 2] {
        let plus_dim = action.sub_scalar_diag(1).null_space().len() as u64;
        let minus_dim = action.sub_scalar_diag(p - 1).null_space().len() as u64;
        [plus_dim, minus_dim]
    };
    // The ring acting on itself: column j records t·(basis_j).
    let mut rows = vec![vec![0u64; 2]; 2];
    for (j, &basis) in [ring.one(), t].iter().enumerate() {
        let coeffs = decode(ring.mul(t, basis));
        rows[0][j] = coeffs[0];
        rows[1][j] = coeffs[1];
    }
    let sheaf_unit_vector = multiplicities(&FpMatrix::from_rows(p, &rows));
    // The trivial character: the symmetry fixes the one-dimensional line.
    let representation_unit_vector = multiplicities(&FpMatrix::from_rows(p, &[vec![1]]));

    // Square classes: idempotent cuts whose self-tensor is free of rank 1.
    let free_rank_one = PresentedModule::free(ring.clone(), 1);
    let mut square_class_count = 0;
    for &e in &idempotents {
        let cut = PresentedModule::cyclic(ring.clone(), ring.sub(ring.one(), e))?;
        let squared = cut.tensor(&cut)?;
        if modules_isomorphic(&squared, &free_rank_one)? {
            square_class_count += 1;
        }
    }

    Ok(TwoPointReport {
        prime: p,
        ring,
        idempotent_plus: plus,
        idempotent_plus_coeffs: [inv2, inv2],
        idempotent_minus: minus,
        idempotent_minus_coeffs: [inv2, p - inv2],
        product_iso,
        sheaf_unit_vector,
        representation_unit_vector,
        square_class_count,
    })
}
