//! Exact rational scalars.
//!
//! Backed by [`num::BigRational`], which maintains the canonical form we
//! rely on everywhere: numerator and denominator coprime, denominator
//! positive, zero represented as 0/1. Structural equality of canonical
//! forms is then mathematical equality.

use num::bigint::BigInt;
use num::BigRational;

pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics on d = 0.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Extracts an i64 numerator/denominator pair, if both fit.
pub fn to_i64_pair(q: &Rational) -> Option<(i64, i64)> {
    use num::ToPrimitive;
    Some((q.numer().to_i64()?, q.denom().to_i64()?))
}

/// The rational as an integer, if it is one.
pub fn as_integer(q: &Rational) -> Option<BigInt> {
    use num::One;
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{One, Signed, Zero};

    #[test]
    fn canonical_form_is_reduced_with_positive_denominator() {
        let q = rat(6, -4);
        assert_eq!(q, rat(-3, 2));
        assert!(q.denom().is_positive());
        assert_eq!(rat(0, 7), rat_int(0));
        assert!(rat(0, 7).is_zero());
        assert!(rat(5, 5).is_one());
    }

    #[test]
    fn arithmetic_matches_hand_values() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
        assert_eq!(rat(1, 2) * rat(2, 3), rat(1, 3));
        assert_eq!(rat(7, 2) - rat(1, 2), rat_int(3));
        assert_eq!(as_integer(&rat(4, 2)), Some(2.into()));
        assert_eq!(as_integer(&rat(1, 2)), None);
    }
}
