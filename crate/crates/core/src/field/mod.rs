//! Coefficient rings and exact fields.
//!
//! Arithmetic is driven by small context objects (the ring) rather than by
//! trait impls on element types; elements stay plain data. This keeps
//! runtime-parametrized fields (F_p, F_{p^k}) cheap to pass around and lets
//! the polynomial containers work over Q, finite fields and Q[A,B] alike.

use std::cmp::Ordering;
use std::fmt::Debug;

mod bivar;
mod ext;
mod prime;
mod rational;

pub use bivar::{BivarPoly, BivarRing};
pub use ext::ExtField;
pub use prime::{is_prime_u64, PrimeField};
pub use rational::{rational_from_str, Rationals};

pub use num_rational::BigRational;

/// A commutative ring with a partial inverse. `inv` returns `None` for
/// non-units; on types tagged [`Field`] it succeeds exactly on nonzero
/// elements.
pub trait Ring: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Total order on elements used wherever determinism requires one
    /// (canonical cube roots, sorted point lists, dedup).
    fn cmp_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Scalar that `canonicalize` multiplies a coefficient slice by.
    /// `coeffs[0]` is the leading coefficient in the canonical monomial
    /// order. Default (fields): make the lead one. Q and Q[A,B] override
    /// with content-and-sign normalization.
    fn canonical_scale(&self, coeffs: &[&Self::Elem]) -> Self::Elem {
        self.inv(coeffs[0]).expect("leading coefficient must be a unit")
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn sum<I: IntoIterator<Item = Self::Elem>>(&self, it: I) -> Self::Elem {
        it.into_iter().fold(self.zero(), |a, b| self.add(&a, &b))
    }
}

/// Marker: `inv` succeeds on every nonzero element.
pub trait Field: Ring {}

/// Finite fields of odd characteristic p > 3.
pub trait FiniteField: Field {
    fn order(&self) -> u64;
    fn characteristic(&self) -> u64;

    /// Bijection {0, .., order-1} -> field, ascending in `cmp_elems`.
    fn elem_from_index(&self, n: u64) -> Self::Elem;

    /// All field elements in ascending `cmp_elems` order. Only call on
    /// fields small enough to scan.
    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|n| self.elem_from_index(n)).collect()
    }

    /// Square root by Tonelli–Shanks, `None` for non-residues.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        tonelli_shanks(self, a)
    }

    /// The canonical primitive cube root of unity: the smaller (in
    /// `cmp_elems`) of the two roots of x^2 + x + 1, when q = 1 mod 3.
    fn primitive_cube_root(&self) -> Option<Self::Elem> {
        if self.order() % 3 != 1 {
            return None;
        }
        // roots are (-1 +- sqrt(-3)) / 2
        let m3 = self.from_i64(-3);
        let s = self.sqrt(&m3)?;
        let half = self.inv(&self.from_i64(2)).expect("char > 2");
        let r1 = self.mul(&self.add(&self.from_i64(-1), &s), &half);
        let r2 = self.mul(&self.sub(&self.from_i64(-1), &s), &half);
        Some(match self.cmp_elems(&r1, &r2) {
            Ordering::Less => r1,
            _ => r2,
        })
    }
}

fn tonelli_shanks<F: FiniteField + ?Sized>(f: &F, a: &F::Elem) -> Option<F::Elem> {
    if f.is_zero(a) {
        return Some(f.zero());
    }
    let q = f.order();
    if f.pow(a, (q - 1) / 2) != f.one() {
        return None;
    }
    if q % 4 == 3 {
        return Some(f.pow(a, (q + 1) / 4));
    }
    // write q - 1 = s * 2^e with s odd
    let mut s = q - 1;
    let mut e = 0u32;
    while s % 2 == 0 {
        s /= 2;
        e += 1;
    }
    // deterministic non-residue: first in element order
    let n = f
        .elements()
        .into_iter()
        .find(|c| !f.is_zero(c) && f.pow(c, (q - 1) / 2) != f.one())?;
    let mut x = f.pow(a, (s + 1) / 2);
    let mut b = f.pow(a, s);
    let mut g = f.pow(&n, s);
    let mut r = e;
    loop {
        let mut m = 0u32;
        let mut t = b.clone();
        while !f.is_one(&t) {
            t = f.mul(&t, &t);
            m += 1;
            if m == r {
                return None;
            }
        }
        if m == 0 {
            return Some(x);
        }
        let gs = f.pow(&g, 1u64 << (r - m - 1));
        g = f.mul(&gs, &gs);
        x = f.mul(&x, &gs);
        b = f.mul(&b, &g);
        r = m;
    }
}
