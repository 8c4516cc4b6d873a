use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::{pow_mod, xgcd, UniPoly};

use super::{Field, FiniteField, PrimeField, Ring};

/// The field F_{p^k} = F_p[x]/(m) for the deterministically chosen monic
/// irreducible m of degree k: the first one in ascending lexicographic
/// order on the coefficient vector (c_{k-1}, ..., c_0) read
/// most-significant-first, i.e. the order elements are enumerated in.
///
/// Elements are coefficient vectors of length exactly k, lowest degree
/// first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    /// monic modulus, length k+1, lowest degree first
    modulus: Vec<u64>,
    order: u64,
}

impl ExtField {
    /// F_{p^k} with the scan-first irreducible modulus. For k = 1 the
    /// modulus is x and the field is F_p with vector-of-length-1 elements.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if k == 0 {
            return Err(Error::DegenerateMap("extension degree must be >= 1".into()));
        }
        let mut order: u64 = 1;
        for _ in 0..k {
            order = order
                .checked_mul(p)
                .ok_or(Error::FieldTooLarge(u64::MAX))?;
        }
        let modulus = first_irreducible(base, k)?;
        Ok(ExtField { base, modulus, order })
    }

    pub fn degree(&self) -> u32 {
        (self.modulus.len() - 1) as u32
    }

    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    /// Lift a base-field residue.
    pub fn embed(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree() as usize];
        v[0] = c % self.base.modulus();
        v
    }

    /// The class of x (the ring generator).
    pub fn gen_elem(&self) -> Vec<u64> {
        let k = self.degree() as usize;
        let mut v = vec![0; k];
        if k == 1 {
            // modulus x: the class of x is 0
        } else {
            v[1] = 1;
        }
        v
    }

    pub fn frobenius(&self, a: &Vec<u64>) -> Vec<u64> {
        self.pow(a, self.base.modulus())
    }

    fn reduce(&self, mut c: Vec<u64>) -> Vec<u64> {
        let k = self.degree() as usize;
        let p = self.base;
        while c.len() > k {
            let lead = c.pop().unwrap();
            if lead == 0 {
                continue;
            }
            let shift = c.len() - k;
            for (i, m) in self.modulus.iter().take(k).enumerate() {
                let t = p.mul(&lead, m);
                c[shift + i] = p.sub(&c[shift + i], &t);
            }
        }
        c.resize(k, 0);
        c
    }
}

impl Ring for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree() as usize]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let k = self.degree() as usize;
        let mut c = vec![0u64; 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                c[i + j] = self.base.add(&c[i + j], &self.base.mul(x, y));
            }
        }
        self.reduce(c)
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let fp = self.base;
        let ap = UniPoly::new(fp, a.clone());
        let mp = UniPoly::new(fp, self.modulus.clone());
        let (g, u, _) = xgcd(&ap, &mp);
        if g.degree() != Some(0) {
            return None; // impossible for irreducible modulus
        }
        let mut v = u.coeffs().to_vec();
        v.resize(self.degree() as usize, 0);
        Some(v)
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        self.embed(self.base.from_i64(n))
    }
    fn cmp_elems(&self, a: &Vec<u64>, b: &Vec<u64>) -> Ordering {
        // most significant coefficient first
        a.iter().rev().cmp(b.iter().rev())
    }
    fn fmt_elem(&self, a: &Vec<u64>) -> String {
        let strs: Vec<String> = a.iter().map(|c| c.to_string()).collect();
        format!("[{}]", strs.join(","))
    }
}

impl Field for ExtField {}

impl FiniteField for ExtField {
    fn order(&self) -> u64 {
        self.order
    }
    fn characteristic(&self) -> u64 {
        self.base.modulus()
    }
    fn elem_from_index(&self, n: u64) -> Vec<u64> {
        debug_assert!(n < self.order);
        let p = self.base.modulus();
        let k = self.degree() as usize;
        let mut v = vec![0; k];
        let mut rest = n;
        for i in 0..k {
            v[i] = rest % p;
            rest /= p;
        }
        v
    }
}

/// First monic irreducible of degree k over F_p, scanning constant terms
/// fastest. Degree 1 yields x itself.
fn first_irreducible(fp: PrimeField, k: u32) -> Result<Vec<u64>> {
    let p = fp.modulus();
    let k = k as usize;
    let mut count: u64 = 1;
    for _ in 0..k {
        count = count.saturating_mul(p);
    }
    for idx in 0..count {
        // constant term varies fastest: compares high coefficients first
        let mut coeffs = vec![0u64; k + 1];
        coeffs[k] = 1;
        let mut rest = idx;
        for c in coeffs.iter_mut().take(k) {
            *c = rest % p;
            rest /= p;
        }
        let f = UniPoly::new(fp, coeffs.clone());
        if is_irreducible(&f)? {
            return Ok(coeffs);
        }
    }
    Err(Error::TorsionSearchFailed)
}

/// Rabin irreducibility: f of degree k is irreducible over F_p iff
/// x^(p^k) = x mod f and gcd(x^(p^(k/q)) - x, f) = 1 for each prime q | k.
fn is_irreducible(f: &UniPoly<PrimeField>) -> Result<bool> {
    let fp = *f.ring();
    let p = fp.modulus();
    let k = match f.degree() {
        Some(0) | None => return Ok(false),
        Some(k) => k,
    };
    if f.coeff(0) == 0 && k > 1 {
        return Ok(false); // divisible by x
    }
    let x = UniPoly::gen(fp);
    let xr = x.rem(f)?;
    // x^(p^k) mod f by k-fold p-power
    let xpk = iterated_frobenius(&x, p, k as u32, f)?;
    if !xpk.sub(&xr).is_zero() {
        return Ok(false);
    }
    for q in prime_divisors(k as u64) {
        let e = k as u64 / q;
        let xpe = iterated_frobenius(&x, p, e as u32, f)?;
        let g = f.gcd(&xpe.sub(&xr));
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn iterated_frobenius(
    x: &UniPoly<PrimeField>,
    p: u64,
    times: u32,
    f: &UniPoly<PrimeField>,
) -> Result<UniPoly<PrimeField>> {
    let mut acc = x.rem(f)?;
    for _ in 0..times {
        acc = pow_mod(&acc, p, f)?;
    }
    Ok(acc)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
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
