use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Rationals, Ring};

/// Polynomials in the curve parameters A, B over Q, used as a coefficient
/// ring so that displayed identities can be checked symbolically rather
/// than at sampled points. `inv` succeeds only on nonzero constants, which
/// is all the identity computations ever invert.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPoly {
    /// (deg_A, deg_B) -> coefficient; no zero entries
    coeffs: BTreeMap<(u32, u32), BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BivarRing;

impl BivarPoly {
    pub fn constant(c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((0, 0), c);
        }
        BivarPoly { coeffs }
    }

    pub fn var_a() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    pub fn var_b() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    pub fn monomial(da: u32, db: u32, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((da, db), c);
        }
        BivarPoly { coeffs }
    }

    pub fn as_constant(&self) -> Option<&BigRational> {
        if self.coeffs.is_empty() {
            None // zero; handled by caller
        } else if self.coeffs.len() == 1 {
            self.coeffs.get(&(0, 0))
        } else {
            None
        }
    }

    /// Evaluate at rational (A, B).
    pub fn eval(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(da, db), c) in &self.coeffs {
            let mut term = c.clone();
            for _ in 0..da {
                term *= a;
            }
            for _ in 0..db {
                term *= b;
            }
            acc += term;
        }
        acc
    }

    fn rationals(&self) -> impl Iterator<Item = &BigRational> {
        self.coeffs.values()
    }
}

impl Ring for BivarRing {
    type Elem = BivarPoly;

    fn zero(&self) -> BivarPoly {
        BivarPoly { coeffs: BTreeMap::new() }
    }
    fn one(&self) -> BivarPoly {
        BivarPoly::constant(BigRational::one())
    }
    fn is_zero(&self, a: &BivarPoly) -> bool {
        a.coeffs.is_empty()
    }
    fn add(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        let mut out = a.coeffs.clone();
        for (k, c) in &b.coeffs {
            let v = out.entry(*k).or_insert_with(BigRational::zero);
            *v += c;
            if v.is_zero() {
                out.remove(k);
            }
        }
        BivarPoly { coeffs: out }
    }
    fn sub(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &BivarPoly) -> BivarPoly {
        BivarPoly { coeffs: a.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }
    fn mul(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        let mut out: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
        for (&(i, j), c) in &a.coeffs {
            for (&(k, l), d) in &b.coeffs {
                let key = (i + k, j + l);
                let v = out.entry(key).or_insert_with(BigRational::zero);
                *v += c * d;
            }
        }
        out.retain(|_, v| !v.is_zero());
        BivarPoly { coeffs: out }
    }
    fn inv(&self, a: &BivarPoly) -> Option<BivarPoly> {
        let c = a.as_constant()?;
        Some(BivarPoly::constant(c.recip()))
    }
    fn from_i64(&self, n: i64) -> BivarPoly {
        BivarPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }
    fn cmp_elems(&self, a: &BivarPoly, b: &BivarPoly) -> Ordering {
        let av: Vec<_> = a.coeffs.iter().collect();
        let bv: Vec<_> = b.coeffs.iter().collect();
        av.cmp(&bv)
    }
    fn fmt_elem(&self, a: &BivarPoly) -> String {
        if a.coeffs.is_empty() {
            return "0".into();
        }
        let q = Rationals;
        let mut out = String::new();
        // highest A-degree first, then highest B-degree
        for (&(da, db), c) in a.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (da == 0 && db == 0) {
                parts.push(q.fmt_elem(&mag));
            }
            for (name, d) in [("A", da), ("B", db)] {
                match d {
                    0 => {}
                    1 => parts.push(name.into()),
                    _ => parts.push(format!("{name}^{d}")),
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }

    /// Content-and-sign normalization across every rational coefficient of
    /// every entry, so canonical forms over Q[A,B] have coprime integer
    /// coefficients and positive lexicographically-first term.
    fn canonical_scale(&self, coeffs: &[&BivarPoly]) -> BivarPoly {
        let mut denom_lcm = BigInt::one();
        let mut numer_gcd = BigInt::zero();
        for poly in coeffs {
            for c in poly.rationals() {
                denom_lcm = denom_lcm.lcm(c.denom());
                numer_gcd = numer_gcd.gcd(c.numer());
            }
        }
        let mut scale = BigRational::new(denom_lcm, numer_gcd);
        // sign fix: leading coefficient of the first poly, at its highest monomial
        if let Some((_, lead)) = coeffs[0].coeffs.iter().next_back() {
            if (lead * &scale).is_negative() {
                scale = -scale;
            }
        }
        BivarPoly::constant(scale)
    }
}
