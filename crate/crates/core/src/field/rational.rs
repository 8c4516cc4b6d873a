use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Ring};

/// The field Q. Elements are reduced big rationals with positive
/// denominator (`num_rational` maintains both invariants).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn cmp_elems(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    /// Clear denominators, divide by integer content, and fix the sign of
    /// the leading coefficient positive.
    fn canonical_scale(&self, coeffs: &[&BigRational]) -> BigRational {
        let mut denom_lcm = BigInt::one();
        let mut numer_gcd = BigInt::zero();
        for c in coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
            numer_gcd = numer_gcd.gcd(c.numer());
        }
        let mut scale = BigRational::new(denom_lcm, numer_gcd);
        if (coeffs[0] * &scale).numer().is_negative() {
            scale = -scale;
        }
        scale
    }
}

impl Field for Rationals {}

/// Parse "n" or "n/d" into an exact rational.
pub fn rational_from_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse() {
        let q = Rationals;
        assert_eq!(rational_from_str("3/6").unwrap(), q.div(&q.one(), &q.from_i64(2)).unwrap());
        assert_eq!(rational_from_str("-4").unwrap(), q.from_i64(-4));
        assert!(rational_from_str("1/0").is_none());
        assert!(rational_from_str("x").is_none());
    }

    #[test]
    fn canonical_scale_clears_content_and_sign() {
        let q = Rationals;
        let a = q.from_i64(-6);
        let b = BigRational::new(BigInt::from(-3), BigInt::from(2));
        let s = q.canonical_scale(&[&a, &b]);
        assert_eq!(&a * &s, q.from_i64(4));
        assert_eq!(&b * &s, q.from_i64(1));
    }
}
