//! Search for finite-field instances with full rational 3-torsion, and a
//! JSON cache so test suites and the CLI reuse the first hit.
//!
//! File schema (versioned):
//! {
//!   "version": 1,
//!   "entries": [ { "a": "3", "b": "1", "p": 37, "k": 1,
//!                  "modulus": [0,1], "curve_a": [3], "curve_b": [1],
//!                  "basis": [[[12],[10]], [[30],[9]]] } ]
//! }

use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::ec::{CurvePoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::{is_prime_u64, ExtField, Rationals, Ring};

/// A curve over F_{p^k} with all of E[3] rational, plus a pairing basis.
#[derive(Clone, Debug)]
pub struct TorsionFixture {
    pub p: u64,
    pub k: u32,
    pub field: ExtField,
    pub curve: WeierstrassCurve<ExtField>,
    pub basis: (CurvePoint<ExtField>, CurvePoint<ExtField>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct FixtureEntry {
    a: String,
    b: String,
    p: u64,
    k: u32,
    modulus: Vec<u64>,
    curve_a: Vec<u64>,
    curve_b: Vec<u64>,
    basis: [[Vec<u64>; 2]; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct FixtureFile {
    version: u32,
    entries: Vec<FixtureEntry>,
}

impl Default for FixtureFile {
    fn default() -> Self {
        FixtureFile { version: 1, entries: Vec::new() }
    }
}

/// On-disk cache of searched instances keyed by (A, B).
#[derive(Debug, Default)]
pub struct FixtureStore {
    path: Option<PathBuf>,
    data: FixtureFile,
}

impl FixtureStore {
    /// In-memory store (no persistence).
    pub fn ephemeral() -> Self {
        FixtureStore::default()
    }

    pub fn open(path: &Path) -> Result<Self> {
        let data = if path.exists() {
            serde_json::from_str(&std::fs::read_to_string(path)?)?
        } else {
            FixtureFile::default()
        };
        Ok(FixtureStore { path: Some(path.to_path_buf()), data })
    }

    /// Cached instance for (A, B), or run the deterministic search and
    /// cache the hit.
    pub fn get_or_search(&mut self, a: &BigRational, b: &BigRational) -> Result<TorsionFixture> {
        let q = Rationals;
        let (akey, bkey) = (q.fmt_elem(a), q.fmt_elem(b));
        if let Some(e) = self.data.entries.iter().find(|e| e.a == akey && e.b == bkey) {
            if let Ok(fix) = rebuild(e) {
                return Ok(fix);
            }
        }
        let fix = search_full_torsion(a, b)?;
        self.data.entries.push(FixtureEntry {
            a: akey,
            b: bkey,
            p: fix.p,
            k: fix.k,
            modulus: fix.field.modulus_coeffs().to_vec(),
            curve_a: fix.curve.a().clone(),
            curve_b: fix.curve.b().clone(),
            basis: [point_vecs(&fix.basis.0), point_vecs(&fix.basis.1)],
        });
        self.persist()?;
        Ok(fix)
    }

    fn persist(&self) -> Result<()> {
        if let Some(p) = &self.path {
            std::fs::write(p, serde_json::to_string_pretty(&self.data)? + "\n")?;
        }
        Ok(())
    }
}

fn point_vecs(p: &CurvePoint<ExtField>) -> [Vec<u64>; 2] {
    match p {
        CurvePoint::Infinity => [Vec::new(), Vec::new()],
        CurvePoint::Affine(x, y) => [x.clone(), y.clone()],
    }
}

fn rebuild(e: &FixtureEntry) -> Result<TorsionFixture> {
    let field = ExtField::new(e.p, e.k)?;
    if field.modulus_coeffs() != e.modulus.as_slice() {
        return Err(Error::BadReduction("fixture modulus mismatch".into()));
    }
    let curve = WeierstrassCurve::new(field.clone(), e.curve_a.clone(), e.curve_b.clone())?;
    let mk = |v: &[Vec<u64>; 2]| -> Result<CurvePoint<ExtField>> {
        if v[0].is_empty() {
            return Ok(CurvePoint::Infinity);
        }
        let p = CurvePoint::Affine(v[0].clone(), v[1].clone());
        if !curve.contains(&p) {
            return Err(Error::PointNotOnCurve);
        }
        Ok(p)
    };
    let basis = (mk(&e.basis[0])?, mk(&e.basis[1])?);
    Ok(TorsionFixture { p: e.p, k: e.k, field, curve, basis })
}

/// Reduce a rational modulo p; `None` at primes dividing the denominator.
pub fn reduce_rational(p: u64, x: &BigRational) -> Option<u64> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = x.numer().mod_floor(&pb).to_u64()?;
    let f = crate::field::PrimeField::new(p).ok()?;
    f.div(&n, &d)
}

/// Deterministic search over p in [5, 200], k in {1, 2, 3, 4, 6}, ordered
/// by field size then p, for the first instance where every point of E[3]
/// is rational. Full torsion forces q = 1 mod 3, so the pairing's cube
/// root always exists on a hit.
pub fn search_full_torsion(a: &BigRational, b: &BigRational) -> Result<TorsionFixture> {
    let q = Rationals;
    let d = crate::cubic::delta(&q, a, b);
    if q.is_zero(a) || q.is_zero(&d) {
        return Err(Error::SingularInput(
            "He(E) is singular if and only if A(4A^3+27B^2)=0".into(),
        ));
    }
    let mut candidates: Vec<(u64, u64, u32)> = Vec::new(); // (q, p, k)
    for p in 5u64..=200 {
        if !is_prime_u64(p) {
            continue;
        }
        for k in [1u32, 2, 3, 4, 6] {
            let mut ord: u64 = 1;
            let mut ok = true;
            for _ in 0..k {
                match ord.checked_mul(p) {
                    Some(v) => ord = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                candidates.push((ord, p, k));
            }
        }
    }
    candidates.sort();
    for (ord, p, k) in candidates {
        if ord % 3 != 1 {
            continue; // mu_3 must be rational when E[3] is
        }
        let (Some(ap), Some(bp)) = (reduce_rational(p, a), reduce_rational(p, b)) else {
            continue;
        };
        let field = ExtField::new(p, k)?;
        let (ae, be) = (field.embed(ap), field.embed(bp));
        if field.is_zero(&ae) {
            continue;
        }
        let Ok(curve) = WeierstrassCurve::new(field.clone(), ae, be) else {
            continue;
        };
        let tor = curve.torsion3()?;
        if tor.len() != 9 {
            continue;
        }
        let Ok(basis) = curve.torsion3_basis() else { continue };
        return Ok(TorsionFixture { p, k, field, curve, basis });
    }
    Err(Error::TorsionSearchFailed)
}
