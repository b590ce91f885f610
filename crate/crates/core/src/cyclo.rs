//! The cyclotomic field Q(zeta_e) in the power basis.
//!
//! An element is a vector of phi(e) rationals: the coefficients of
//! 1, z, z^2, ..., z^{phi(e)-1} where z = zeta_e, reduced modulo the e-th
//! cyclotomic polynomial. Reduction happens after every operation, so two
//! elements are mathematically equal iff they are structurally equal.
//!
//! Character values, intertwiner entries and twist scalars all live here;
//! e is always the exponent of the group in play, which splits every
//! irreducible representation.

use crate::rational::{rat_int, Rational};
use num::bigint::BigInt;
use num::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),
    #[error("order {new} is not a multiple of {old}")]
    NotAMultiple { old: u64, new: u64 },
    #[error("exponent {k} is not invertible modulo {e}")]
    NotAGaloisExponent { k: u64, e: u64 },
}

/// Euler's totient.
pub fn euler_phi(e: u64) -> u64 {
    assert!(e >= 1);
    let mut n = e;
    let mut result = e;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(e: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=e).filter(|k| e % k == 0).collect();
    d.sort_unstable();
    d
}

/// Exact division of integer polynomials, assuming a monic divisor and zero
/// remainder. Coefficient index = power.
fn poly_div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(rem.len() >= den.len());
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (k, dc) in den.iter().enumerate() {
            let idx = i - dd + k;
            rem[idx] = &rem[idx] - &c * dc;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

static CYCLO_POLY_CACHE: LazyLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The e-th cyclotomic polynomial as integer coefficients (index = power,
/// monic of degree phi(e)). Computed by dividing x^e - 1 by the cyclotomic
/// polynomials of the proper divisors; cached per order.
pub fn cyclotomic_polynomial(e: u64) -> Arc<Vec<BigInt>> {
    assert!(e >= 1);
    if let Some(p) = CYCLO_POLY_CACHE.lock().unwrap().get(&e) {
        return p.clone();
    }
    let mut f = vec![BigInt::zero(); (e + 1) as usize];
    f[0] = BigInt::from(-1);
    f[e as usize] = BigInt::one();
    for d in divisors(e) {
        if d == e {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        f = poly_div_exact_monic(&f, &phi_d);
    }
    let arc = Arc::new(f);
    CYCLO_POLY_CACHE.lock().unwrap().insert(e, arc.clone());
    arc
}

/// An element of Q(zeta_e), reduced to the power basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycloElement {
    order: u64,
    coeffs: Vec<Rational>, // length phi(order)
}

impl CycloElement {
    /// Reduces an arbitrary-degree rational polynomial in zeta_e to the
    /// power basis.
    pub fn from_poly(order: u64, mut poly: Vec<Rational>) -> Self {
        assert!(order >= 1);
        let phi = euler_phi(order) as usize;
        let cp = cyclotomic_polynomial(order);
        if poly.len() > phi {
            for i in (phi..poly.len()).rev() {
                let c = poly[i].clone();
                if c.is_zero() {
                    continue;
                }
                // subtract c * x^{i-phi} * Phi_e
                for (k, pk) in cp.iter().enumerate() {
                    let idx = i - phi + k;
                    let delta = &c * Rational::from_integer(pk.clone());
                    poly[idx] -= delta;
                }
                debug_assert!(poly[i].is_zero());
            }
        }
        poly.resize(phi, Rational::zero());
        CycloElement { order, coeffs: poly }
    }

    pub fn zero(order: u64) -> Self {
        CycloElement::from_poly(order, vec![])
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u64, q: Rational) -> Self {
        CycloElement::from_poly(order, vec![q])
    }

    pub fn from_int(order: u64, n: i64) -> Self {
        Self::from_rational(order, rat_int(n))
    }

    /// zeta_e^k (k taken modulo e, negatives allowed).
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        let e = order as i64;
        let k = k.rem_euclid(e) as usize;
        let mut poly = vec![Rational::zero(); k + 1];
        poly[k] = Rational::one();
        CycloElement::from_poly(order, poly)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The element as a rational, if it lies in the prime field.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic order mismatch: {} vs {}",
            self.order, other.order
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloElement { order: self.order, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycloElement { order: self.order, coeffs }
    }

    pub fn neg(&self) -> Self {
        CycloElement {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        CycloElement::from_poly(self.order, prod)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloElement {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended euclidean algorithm against
    /// the (irreducible) cyclotomic polynomial.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero(self.order));
        }
        let cp = cyclotomic_polynomial(self.order);
        let modulus: Vec<Rational> = cp
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // extended gcd of (self, Phi_e) over Q[x]: returns u with
        // u * self == g (mod Phi_e), g a nonzero constant.
        let (g, u) = poly_ext_gcd(&self.coeffs, &modulus);
        debug_assert_eq!(poly_degree(&g), Some(0), "cyclotomic polynomial not coprime to element");
        let ginv = Rational::one() / g[0].clone();
        let inv_poly: Vec<Rational> = u.iter().map(|c| c * &ginv).collect();
        Ok(CycloElement::from_poly(self.order, inv_poly))
    }

    pub fn div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self, CycloError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut result = CycloElement::one(self.order);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        Ok(result)
    }

    /// Applies the field automorphism zeta -> zeta^k; k must be coprime to
    /// the order.
    pub fn galois(&self, k: u64) -> Result<Self, CycloError> {
        let e = self.order;
        let k = k % e;
        if e > 1 && num::integer::gcd(k, e) != 1 {
            return Err(CycloError::NotAGaloisExponent { k, e });
        }
        let mut poly = vec![Rational::zero(); e as usize];
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = ((m as u64) * k % e) as usize;
            poly[target] += c;
        }
        Ok(CycloElement::from_poly(e, poly))
    }

    /// Complex conjugation: zeta -> zeta^{e-1}.
    pub fn conj(&self) -> Self {
        let e = self.order;
        self.galois(if e == 1 { 0 } else { e - 1 })
            .expect("e-1 is always coprime to e")
    }

    /// Re-expresses the element in Q(zeta_new) where the current order
    /// divides the new one.
    pub fn promote(&self, new_order: u64) -> Result<Self, CycloError> {
        if new_order % self.order != 0 {
            return Err(CycloError::NotAMultiple { old: self.order, new: new_order });
        }
        let step = (new_order / self.order) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (m, c) in self.coeffs.iter().enumerate() {
            poly[m * step] = c.clone();
        }
        Ok(CycloElement::from_poly(new_order, poly))
    }
}

fn poly_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

/// Polynomial remainder a mod b over Q[x], plus the quotient's action on a
/// companion accumulator (for the extended algorithm).
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    let mut quot = vec![Rational::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = poly_degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        quot[dr - db] = c.clone();
        for k in 0..=db {
            let delta = &c * &b[k];
            rem[dr - db + k] -= delta;
        }
    }
    (poly_trim(quot), poly_trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), Rational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

/// Extended gcd over Q[x]: returns (g, u) with u*a + v*b = g for some v.
fn poly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut u0 = vec![Rational::one()];
    let mut u1 = vec![Rational::zero()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let u = poly_sub(&u0, &poly_mul(&q, &u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
    }
    (r0, u0)
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_one() && m > 0 {
                String::new()
            } else if (-c).is_one() && m > 0 {
                "-".to_string()
            } else {
                format!("{}", c)
            };
            let mono = match m {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, m),
            };
            let sep = if !coeff.is_empty() && !mono.is_empty() { "*" } else { "" };
            parts.push(format!("{coeff}{sep}{mono}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
