//! Prime-field staging arithmetic for the character pipeline.
//!
//! Character values live in a cyclotomic field, but the eigenvector analysis
//! that finds them is far cheaper over a prime field F_p with p ≡ 1 (mod e):
//! such a field contains primitive e-th roots of unity, so every character
//! value reduces to an ordinary residue.  This module provides the residue
//! arithmetic, dense matrices over F_p, the prime/root search, and the
//! Fourier-inversion lift back to exact cyclotomic numbers.

use crate::cyclo::CycloElement;
use crate::rational::rat_int;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModularError {
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(u64, u64),
    #[error("no prime p \u{2261} 1 (mod {exponent}) with p\u{b2} > {min_square} at or below {bound}")]
    NoSuitablePrime {
        exponent: u64,
        min_square: u64,
        bound: u64,
    },
    #[error("residue {value} mod {modulus} does not lift to a small non-negative integer")]
    LiftOutOfRange { value: u64, modulus: u64 },
    #[error("expected {expected} power residues, got {got}")]
    WrongValueCount { expected: usize, got: usize },
    #[error("{0} is not a primitive {1}-th root of unity mod {2}")]
    BadEmbedding(u64, u64, u64),
}

/// A residue in [0, p) for a fixed prime modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModularScalar {
    value: u64,
    modulus: u64,
}

impl ModularScalar {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus > 1, "modulus must exceed 1");
        ModularScalar {
            value: value % modulus,
            modulus,
        }
    }

    pub fn zero(modulus: u64) -> Self {
        Self::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Self::new(1, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli in modular arithmetic"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(
            ((self.value as u128 + other.value as u128) % self.modulus as u128) as u64,
            self.modulus,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.modulus - self.value % self.modulus, self.modulus)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(
            ((self.value as u128 * other.value as u128) % self.modulus as u128) as u64,
            self.modulus,
        )
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse via Fermat: the modulus is prime throughout this crate.
    pub fn inv(&self) -> Result<Self, ModularError> {
        if self.value == 0 {
            return Err(ModularError::NotInvertible(0, self.modulus));
        }
        Ok(self.pow(self.modulus - 2))
    }
}

impl fmt::Debug for ModularScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for ModularScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime p ≡ 1 (mod exponent) with p² > 4·group_order, searched up
/// to `bound`.  Both conditions together make the staged character data
/// liftable: the field contains the needed roots of unity, and every
/// eigenvalue multiplicity is small enough to be recovered from its residue.
pub fn dixon_prime(group_order: u64, exponent: u64, bound: u64) -> Result<u64, ModularError> {
    let e = exponent.max(1);
    let min_square = 4 * group_order;
    let mut p = e + 1;
    while p <= bound {
        if p > 2 && p * p > min_square && is_prime(p) {
            return Ok(p);
        }
        p += e;
    }
    Err(ModularError::NoSuitablePrime {
        exponent: e,
        min_square,
        bound,
    })
}

/// A fixed primitive e-th root of unity in F_p, namely g^((p-1)/e) for the
/// least primitive root g of the field.  Deterministic by construction.
pub fn root_of_unity_mod(p: u64, e: u64) -> Result<ModularScalar, ModularError> {
    if e == 0 || (p - 1) % e != 0 {
        return Err(ModularError::BadEmbedding(0, e, p));
    }
    let factors = distinct_prime_factors(p - 1);
    let mut g = 2;
    loop {
        let cand = ModularScalar::new(g, p);
        if factors.iter().all(|&q| cand.pow((p - 1) / q).value() != 1) {
            return Ok(cand.pow((p - 1) / e));
        }
        g += 1;
        assert!(g < p, "no primitive root found — modulus not prime?");
    }
}

fn is_primitive_root_of_unity(z: &ModularScalar, e: u64) -> bool {
    if z.pow(e).value() != 1 {
        return false;
    }
    distinct_prime_factors(e)
        .iter()
        .all(|q| z.pow(e / q).value() != 1)
}

/// Lift one power-residue vector to a cyclotomic value.
///
/// `values[m]` must be the residue of the character at the class of g^m,
/// where g is the class representative being lifted.  Writing the character
/// value as Σ_k n_k ζ_e^k with non-negative integer eigenvalue multiplicities
/// n_k, Fourier inversion over ℤ/e recovers n_k mod p:
///
///   n_k = e⁻¹ Σ_m values[m] · z^{-km}.
///
/// Each multiplicity is at most the degree, which is below p/2 by the prime
/// choice, so the residues determine the integers exactly; anything else is
/// reported as an invalid lift.
pub fn lift_power_residues(
    values: &[ModularScalar],
    e: u64,
    embedding: ModularScalar,
) -> Result<CycloElement, ModularError> {
    if values.len() != e as usize {
        return Err(ModularError::WrongValueCount {
            expected: e as usize,
            got: values.len(),
        });
    }
    let p = embedding.modulus();
    for v in values {
        if v.modulus() != p {
            return Err(ModularError::ModulusMismatch(v.modulus(), p));
        }
    }
    if !is_primitive_root_of_unity(&embedding, e) {
        return Err(ModularError::BadEmbedding(embedding.value(), e, p));
    }
    let e_inv = ModularScalar::new(e % p, p).inv()?;
    let z_inv = embedding.inv()?;
    let mut result = CycloElement::zero(e);
    for k in 0..e {
        let mut acc = ModularScalar::zero(p);
        for (m, v) in values.iter().enumerate() {
            acc = acc.add(&v.mul(&z_inv.pow(k * m as u64)));
        }
        let n = e_inv.mul(&acc).value();
        if 2 * n >= p {
            return Err(ModularError::LiftOutOfRange {
                value: n,
                modulus: p,
            });
        }
        if n != 0 {
            result = result.add(
                &CycloElement::root_of_unity(e, k as i64).scale(&rat_int(n as i64)),
            );
        }
    }
    Ok(result)
}

/// Lift a whole residue character to exact cyclotomic values, one per class.
///
/// `residues[j]` is the staged character value on class j, and
/// `power_class[j][m]` names the class containing the m-th power of the
/// representative of class j (for m in 0..e).
pub fn dixon_lift(
    residues: &[ModularScalar],
    power_class: &[Vec<usize>],
    e: u64,
    embedding: ModularScalar,
) -> Result<Vec<CycloElement>, ModularError> {
    assert_eq!(residues.len(), power_class.len(), "class count mismatch");
    let mut out = Vec::with_capacity(residues.len());
    for powers in power_class {
        let values: Vec<ModularScalar> = powers.iter().map(|&c| residues[c]).collect();
        out.push(lift_power_residues(&values, e, embedding)?);
    }
    Ok(out)
}

/// Dense matrix over F_p with row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(modulus: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut m = Self::zero(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(modulus: u64, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(modulus, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.modulus;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: u64) {
        let p = self.modulus as u128;
        let sum = (self.at(r, c) as u128 + v as u128 % p) % p;
        self.set(r, c, sum as u64);
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.modulus as u128;
        let mut out = Self::zero(self.modulus, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k) as u128;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.at(i, j) as u128;
                    out.set(i, j, ((cur + a * other.at(k, j) as u128) % p) as u64);
                }
            }
        }
        out
    }

    /// A − λ·I, used when scanning for eigenvalues.
    pub fn sub_scalar_diag(&self, lambda: u64) -> Self {
        assert_eq!(self.rows, self.cols, "diagonal shift needs a square matrix");
        let mut out = self.clone();
        for i in 0..self.rows {
            let cur = out.at(i, i);
            out.set(i, i, (cur + self.modulus - lambda % self.modulus) % self.modulus);
        }
        out
    }

    fn inv_mod(&self, v: u64) -> u64 {
        ModularScalar::new(v, self.modulus)
            .inv()
            .expect("pivot must be nonzero")
            .value()
    }

    /// Reduced row echelon form plus the pivot column list.  Pivoting is
    /// leftmost column, first nonzero row — fully deterministic.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let p = self.modulus as u128;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.at(r, col) != 0) else {
                continue;
            };
            for c in 0..m.cols {
                let (a, b) = (m.at(row, c), m.at(pr, c));
                m.set(row, c, b);
                m.set(pr, c, a);
            }
            let scale = m.inv_mod(m.at(row, col)) as u128;
            for c in 0..m.cols {
                m.set(row, c, ((m.at(row, c) as u128 * scale) % p) as u64);
            }
            for r in 0..m.rows {
                if r != row && m.at(r, col) != 0 {
                    let f = m.at(r, col) as u128;
                    for c in 0..m.cols {
                        let val =
                            (m.at(r, c) as u128 + (p - f) * m.at(row, c) as u128 % p) % p;
                        m.set(r, c, val as u64);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column, in free
    /// column order.
    pub fn null_space(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = (self.modulus - r.at(prow, free)) % self.modulus;
            }
            basis.push(v);
        }
        basis
    }

    /// Solve self·X = rhs when self has full column rank; None if the system
    /// is inconsistent or rank-deficient.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "row mismatch in solve");
        let mut aug = Self::zero(self.modulus, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j));
            }
            for j in 0..rhs.cols {
                aug.set(i, self.cols + j, rhs.at(i, j));
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != self.cols || pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        for i in self.cols..self.rows {
            for j in 0..rhs.cols {
                if r.at(i, self.cols + j) != 0 {
                    return None;
                }
            }
        }
        let mut x = Self::zero(self.modulus, self.cols, rhs.cols);
        for i in 0..self.cols {
            for j in 0..rhs.cols {
                x.set(i, j, r.at(i, self.cols + j));
            }
        }
        Some(x)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {}", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
