//! Weierstrass curves, 3-division polynomials, 3-torsion enumeration over
//! finite fields, the mod-3 Weil pairing realized through inflection
//! tangent lines, and symplectic / anti-symplectic classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubic::{delta, weierstrass_cubic, PlaneCubic};
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Ring};
use crate::polarity::{tangent_line_dual, ProjPoint};
use crate::poly::UniPoly;

/// y^2 z = x^3 + A x z^2 + B z^3 with nonzero discriminant factor
/// delta = 4A^3 + 27B^2.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<F: Field> {
    ring: F,
    a: F::Elem,
    b: F::Elem,
    delta: F::Elem,
}

/// Points in the affine chart plus the point at infinity (0:1:0).
#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint<F: Field> {
    Infinity,
    Affine(F::Elem, F::Elem),
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(ring: F, a: F::Elem, b: F::Elem) -> Result<Self> {
        let d = delta(&ring, &a, &b);
        if ring.is_zero(&d) {
            return Err(Error::SingularInput("4A^3 + 27B^2 = 0 (singular curve)".into()));
        }
        Ok(WeierstrassCurve { ring, a, b, delta: d })
    }

    pub fn ring(&self) -> &F {
        &self.ring
    }

    pub fn a(&self) -> &F::Elem {
        &self.a
    }

    pub fn b(&self) -> &F::Elem {
        &self.b
    }

    pub fn delta(&self) -> &F::Elem {
        &self.delta
    }

    /// j = 1728 * 4A^3 / (4A^3 + 27B^2).
    pub fn j_invariant(&self) -> F::Elem {
        let r = &self.ring;
        let a3 = r.mul(&self.a, &r.mul(&self.a, &self.a));
        let num = r.mul(&r.from_i64(6912), &a3);
        r.div(&num, &self.delta).expect("delta nonzero")
    }

    /// psi_3 = 3x^4 + 6A x^2 + 12B x - A^2, whose roots are the
    /// x-coordinates of the nontrivial 3-torsion.
    pub fn division_poly_3(&self) -> UniPoly<F> {
        let r = self.ring.clone();
        let coeffs = vec![
            r.neg(&r.mul(&self.a, &self.a)),
            r.mul(&r.from_i64(12), &self.b),
            r.mul(&r.from_i64(6), &self.a),
            r.zero(),
            r.from_i64(3),
        ];
        UniPoly::new(r, coeffs)
    }

    /// x^3 + A x + B.
    pub fn rhs(&self, x: &F::Elem) -> F::Elem {
        let r = &self.ring;
        let x3 = r.mul(x, &r.mul(x, x));
        r.add(&x3, &r.add(&r.mul(&self.a, x), &self.b))
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => {
                let r = &self.ring;
                r.mul(y, y) == self.rhs(x)
            }
        }
    }

    pub fn neg(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), self.ring.neg(y)),
        }
    }

    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let r = &self.ring;
        match (p, q) {
            (CurvePoint::Infinity, _) => q.clone(),
            (_, CurvePoint::Infinity) => p.clone(),
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => {
                if x1 == x2 && r.is_zero(&r.add(y1, y2)) {
                    return CurvePoint::Infinity;
                }
                let lam = if x1 == x2 {
                    // tangent slope (3x^2 + A) / 2y
                    let num = r.add(&r.mul(&r.from_i64(3), &r.mul(x1, x1)), &self.a);
                    r.div(&num, &r.mul(&r.from_i64(2), y1)).expect("y nonzero")
                } else {
                    r.div(&r.sub(y2, y1), &r.sub(x2, x1)).expect("x1 != x2")
                };
                let x3 = r.sub(&r.sub(&r.mul(&lam, &lam), x1), x2);
                let y3 = r.sub(&r.mul(&lam, &r.sub(x1, &x3)), y1);
                CurvePoint::Affine(x3, y3)
            }
        }
    }

    pub fn mul_scalar(&self, p: &CurvePoint<F>, n: u64) -> CurvePoint<F> {
        let mut acc = CurvePoint::Infinity;
        let mut base = p.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// The curve as a plane cubic with the inflection origin (0:1:0).
    pub fn plane_cubic(&self) -> PlaneCubic<F> {
        let f = weierstrass_cubic(&self.ring, &self.a, &self.b);
        let o = ProjPoint::new(
            self.ring.clone(),
            [self.ring.zero(), self.ring.one(), self.ring.zero()],
        )
        .expect("nonzero");
        PlaneCubic::with_origin(f, o).expect("smooth Weierstrass origin")
    }

    pub fn to_proj(&self, p: &CurvePoint<F>) -> ProjPoint<F> {
        let r = &self.ring;
        match p {
            CurvePoint::Infinity => {
                ProjPoint::new(r.clone(), [r.zero(), r.one(), r.zero()]).expect("nonzero")
            }
            CurvePoint::Affine(x, y) => {
                ProjPoint::new(r.clone(), [x.clone(), y.clone(), r.one()]).expect("nonzero")
            }
        }
    }

    pub fn from_proj(&self, p: &ProjPoint<F>) -> Result<CurvePoint<F>> {
        let r = &self.ring;
        let [x, y, z] = p.coords().clone();
        if r.is_zero(&z) {
            if r.is_zero(&x) {
                return Ok(CurvePoint::Infinity);
            }
            return Err(Error::PointNotOnCurve);
        }
        let zi = r.inv(&z).expect("nonzero");
        let pt = CurvePoint::Affine(r.mul(&x, &zi), r.mul(&y, &zi));
        if !self.contains(&pt) {
            return Err(Error::PointNotOnCurve);
        }
        Ok(pt)
    }
}

impl<F: FiniteField> WeierstrassCurve<F> {
    /// All points with 3P = O, found through the roots of psi_3, in a
    /// deterministic order. Size is 1, 3 or 9.
    pub fn torsion3(&self) -> Result<Vec<CurvePoint<F>>> {
        let r = self.ring.clone();
        let mut pts = vec![CurvePoint::Infinity];
        for (x, _) in self.division_poly_3().roots_with_multiplicity()? {
            let rhs = self.rhs(&x);
            if r.is_zero(&rhs) {
                continue; // 2-torsion x; cannot be 3-torsion
            }
            if let Some(y) = r.sqrt(&rhs) {
                let ny = r.neg(&y);
                let (lo, hi) = match r.cmp_elems(&y, &ny) {
                    std::cmp::Ordering::Greater => (ny, y),
                    _ => (y, ny),
                };
                pts.push(CurvePoint::Affine(x.clone(), lo));
                pts.push(CurvePoint::Affine(x, hi));
            }
        }
        debug_assert!(matches!(pts.len(), 1 | 3 | 9));
        Ok(pts)
    }

    /// A basis (P1, P2) of full 3-torsion with nontrivial pairing.
    pub fn torsion3_basis(&self) -> Result<(CurvePoint<F>, CurvePoint<F>)> {
        let tor = self.torsion3()?;
        if tor.len() != 9 {
            return Err(Error::NotATorsionBasis);
        }
        let cubic = self.plane_cubic();
        for p in &tor[1..] {
            for q in &tor[1..] {
                let pp = self.to_proj(p);
                let qq = self.to_proj(q);
                if let Ok(v) = weil_pairing_value(&cubic, &pp, &qq) {
                    if !self.ring.is_one(&v) {
                        return Ok((p.clone(), q.clone()));
                    }
                }
            }
        }
        Err(Error::NotATorsionBasis)
    }
}

/// Rational points of exact order 3 on a curve over Q: rational roots of
/// psi_3 whose y^2 value is a rational square.
pub fn rational_torsion3(
    curve: &WeierstrassCurve<crate::field::Rationals>,
) -> Result<Vec<CurvePoint<crate::field::Rationals>>> {
    use num_traits::Signed;
    let q = crate::field::Rationals;
    let mut out = vec![CurvePoint::Infinity];
    for (x, _) in curve.division_poly_3().rational_roots()? {
        let rhs = curve.rhs(&x);
        if q.is_zero(&rhs) || rhs.is_negative() {
            continue;
        }
        let (n, d) = (rhs.numer().sqrt(), rhs.denom().sqrt());
        let cand = crate::field::BigRational::new(n, d);
        if q.mul(&cand, &cand) == rhs {
            out.push(CurvePoint::Affine(x.clone(), q.neg(&cand)));
            out.push(CurvePoint::Affine(x, cand));
        }
    }
    Ok(out)
}

/// (a c^2, b c^3): the short-Weierstrass coefficients of the curve
/// isomorphic to c y^2 = x^3 + a x + b.
pub fn scaled_to_standard<R: Ring>(
    ring: &R,
    c: &R::Elem,
    a: &R::Elem,
    b: &R::Elem,
) -> Result<(R::Elem, R::Elem)> {
    if ring.is_zero(c) {
        return Err(Error::SingularInput("scale factor c = 0".into()));
    }
    let c2 = ring.mul(c, c);
    let c3 = ring.mul(&c2, c);
    Ok((ring.mul(a, &c2), ring.mul(b, &c3)))
}

/// Exponent of the fixed primitive cube root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairingValue {
    exponent: u8,
}

impl PairingValue {
    pub fn exponent(&self) -> u8 {
        self.exponent
    }

    pub fn inverse(&self) -> PairingValue {
        PairingValue { exponent: (3 - self.exponent) % 3 }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    /// Match a mu_3 value against {1, zeta, zeta^2}.
    pub fn from_value<F: FiniteField>(ring: &F, zeta: &F::Elem, v: &F::Elem) -> Result<Self> {
        if ring.is_one(v) {
            return Ok(PairingValue { exponent: 0 });
        }
        if v == zeta {
            return Ok(PairingValue { exponent: 1 });
        }
        if *v == ring.mul(zeta, zeta) {
            return Ok(PairingValue { exponent: 2 });
        }
        Err(Error::MissingCubeRoot)
    }
}

/// The mod-3 Weil pairing of two inflection points of a smooth plane cubic
/// with inflection origin, as a cube root of unity in the field.
///
/// Realization: f_P = T_P / T_O has divisor 3(P) - 3(O); with the Miller
/// functions normalized at O the pairing collapses to six line
/// evaluations:
///
///   e3(P, Q) = - T_P(Q) T_O(P) T_Q(O) / ( T_O(Q) T_P(O) T_Q(P) )
///
/// for distinct nonzero P, Q, and 1 in the degenerate cases. All factors
/// are nonzero on a smooth cubic.
pub fn weil_pairing_value<F: FiniteField>(
    cubic: &PlaneCubic<F>,
    p: &ProjPoint<F>,
    q: &ProjPoint<F>,
) -> Result<F::Elem> {
    let r = cubic.ring().clone();
    let o = cubic.origin()?.clone();
    if p == &o || q == &o || p == q {
        return Ok(r.one());
    }
    if !cubic.is_three_torsion(p)? || !cubic.is_three_torsion(q)? {
        return Err(Error::NotATorsionBasis);
    }
    let tp = tangent_line_dual(cubic.form(), p)?;
    let tq = tangent_line_dual(cubic.form(), q)?;
    let to = tangent_line_dual(cubic.form(), &o)?;
    let ev = |l: &ProjPoint<F>, v: &ProjPoint<F>| -> F::Elem {
        r.sum([
            r.mul(&l.coords()[0], &v.coords()[0]),
            r.mul(&l.coords()[1], &v.coords()[1]),
            r.mul(&l.coords()[2], &v.coords()[2]),
        ])
    };
    let num = r.mul(&ev(&tp, q), &r.mul(&ev(&to, p), &ev(&tq, &o)));
    let den = r.mul(&ev(&to, q), &r.mul(&ev(&tp, &o), &ev(&tq, p)));
    let v = r
        .div(&num, &den)
        .ok_or_else(|| Error::DegenerateMap("degenerate tangent evaluation (singular member?)".into()))?;
    Ok(r.neg(&v))
}

/// Pairing as the exponent of the canonical primitive cube root.
pub fn weil_pairing_3<F: FiniteField>(
    cubic: &PlaneCubic<F>,
    p: &ProjPoint<F>,
    q: &ProjPoint<F>,
) -> Result<PairingValue> {
    let r = cubic.ring().clone();
    let zeta = r.primitive_cube_root().ok_or(Error::MissingCubeRoot)?;
    let v = weil_pairing_value(cubic, p, q)?;
    PairingValue::from_value(&r, &zeta, &v)
}

/// Independent pairing route through auxiliary shifted divisors: for
/// random R, S on the cubic build the matched functions
///
///   f_{(P+R)-(R)} = T_P l(O, P*R)^3 / (T_O l(P, R)^3)
///
/// and evaluate e3 = f_P((Q+S)-(S)) / f_Q((P+R)-(R)). Retries fresh
/// auxiliaries on any degenerate evaluation, at most 32 times.
pub fn weil_pairing_value_aux<F: FiniteField>(
    cubic: &PlaneCubic<F>,
    p: &ProjPoint<F>,
    q: &ProjPoint<F>,
    seed: u64,
) -> Result<F::Elem> {
    let r = cubic.ring().clone();
    let o = cubic.origin()?.clone();
    if p == &o || q == &o || p == q {
        return Ok(r.one());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let s = match random_curve_point(cubic, &mut rng) {
            Some(s) => s,
            None => continue,
        };
        let rr = match random_curve_point(cubic, &mut rng) {
            Some(t) => t,
            None => continue,
        };
        match aux_attempt(cubic, p, q, &rr, &s) {
            Ok(Some(v)) => return Ok(v),
            Ok(None) => continue,
            Err(_) => continue,
        }
    }
    Err(Error::AuxiliaryExhausted)
}

fn aux_attempt<F: FiniteField>(
    cubic: &PlaneCubic<F>,
    p: &ProjPoint<F>,
    q: &ProjPoint<F>,
    rr: &ProjPoint<F>,
    s: &ProjPoint<F>,
) -> Result<Option<F::Elem>> {
    let r = cubic.ring().clone();
    let qs = cubic.add(q, s)?;
    let pr = cubic.add(p, rr)?;
    let f_p = shifted_function(cubic, p, rr)?;
    let f_q = shifted_function(cubic, q, s)?;
    let vals = [f_p(&qs), f_p(s), f_q(&pr), f_q(rr)];
    let mut out = Vec::with_capacity(4);
    for v in vals {
        match v {
            Some(v) => out.push(v),
            None => return Ok(None),
        }
    }
    let num = r.mul(&out[0], &out[3]);
    let den = r.mul(&out[1], &out[2]);
    Ok(r.div(&num, &den))
}

/// Evaluator for the function with divisor 3(P+R) - 3(R); `None` when the
/// evaluation point meets a zero of either product.
fn shifted_function<'a, F: FiniteField>(
    cubic: &'a PlaneCubic<F>,
    p: &ProjPoint<F>,
    rr: &ProjPoint<F>,
) -> Result<impl Fn(&ProjPoint<F>) -> Option<F::Elem> + 'a> {
    let r = cubic.ring().clone();
    let o = cubic.origin()?.clone();
    let third = cubic.third_intersection(p, rr)?;
    let tp = tangent_line_dual(cubic.form(), p)?;
    let to = tangent_line_dual(cubic.form(), &o)?;
    let l_num = if &o == &third {
        tangent_line_dual(cubic.form(), &o)?
    } else {
        o.cross(&third)?
    };
    let l_den = if p == rr {
        tangent_line_dual(cubic.form(), p)?
    } else {
        p.cross(rr)?
    };
    Ok(move |x: &ProjPoint<F>| -> Option<F::Elem> {
        let ev = |l: &ProjPoint<F>, v: &ProjPoint<F>| -> F::Elem {
            r.sum([
                r.mul(&l.coords()[0], &v.coords()[0]),
                r.mul(&l.coords()[1], &v.coords()[1]),
                r.mul(&l.coords()[2], &v.coords()[2]),
            ])
        };
        let n = r.mul(&ev(&tp, x), &r.pow(&ev(&l_num, x), 3));
        let d = r.mul(&ev(&to, x), &r.pow(&ev(&l_den, x), 3));
        r.div(&n, &d).filter(|v| !r.is_zero(v))
    })
}

/// A random point of the cubic over F_q: intersect with a random line and
/// pick a rational intersection if any.
fn random_curve_point<F: FiniteField>(
    cubic: &PlaneCubic<F>,
    rng: &mut ChaCha8Rng,
) -> Option<ProjPoint<F>> {
    let r = cubic.ring().clone();
    let qord = r.order();
    let rand_elem = |rng: &mut ChaCha8Rng| r.elem_from_index(rng.gen_range(0..qord));
    for _ in 0..8 {
        let l = [rand_elem(rng), rand_elem(rng), rand_elem(rng)];
        let Ok(line) = ProjPoint::new(r.clone(), l) else { continue };
        // two independent points spanning the line
        let lc = line.coords();
        let cands = [
            [lc[1].clone(), r.neg(&lc[0]), r.zero()],
            [lc[2].clone(), r.zero(), r.neg(&lc[0])],
            [r.zero(), lc[2].clone(), r.neg(&lc[1])],
        ];
        let pts: Vec<ProjPoint<F>> =
            cands.into_iter().filter_map(|c| ProjPoint::new(r.clone(), c).ok()).collect();
        let Some(a) = pts.first() else { continue };
        let Some(b) = pts.iter().find(|p| *p != a) else { continue };
        // F(a + u b) as a univariate cubic in u
        let half = r.inv(&r.from_i64(2)).expect("char > 2");
        let sixth = r.inv(&r.from_i64(6)).expect("char > 3");
        let f = cubic.form();
        let c0 = f.eval(a.coords());
        let c1 = f.nabla(b.coords()).eval(a.coords());
        let c2 = r.mul(&f.nabla(b.coords()).nabla(b.coords()).eval(a.coords()), &half);
        let c3 = r.mul(
            &f.nabla(b.coords()).nabla(b.coords()).nabla(b.coords()).eval(a.coords()),
            &sixth,
        );
        let poly = UniPoly::new(r.clone(), vec![c0, c1, c2, c3]);
        if poly.is_zero() {
            continue;
        }
        let Ok(roots) = poly.roots_with_multiplicity() else { continue };
        let mut pts: Vec<ProjPoint<F>> = roots
            .into_iter()
            .filter_map(|(u, _)| {
                let coords = [0, 1, 2]
                    .map(|i| r.add(&a.coords()[i], &r.mul(&u, &b.coords()[i])));
                ProjPoint::new(r.clone(), coords).ok()
            })
            .collect();
        // the point "u = infinity" is b itself when the cubic coefficient vanished
        if poly.degree() < Some(3) && cubic.contains(b) {
            pts.push(b.clone());
        }
        if pts.is_empty() {
            continue;
        }
        let i = rng.gen_range(0..pts.len());
        return Some(pts[i].clone());
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsomorphismClass {
    Symplectic,
    AntiSymplectic,
    Neither,
}

/// Classify the linear extension of P_i -> Q_i between the 3-torsion of
/// two inflection-marked plane cubics over the same field. (P1, P2) must
/// be a basis; the verdict is Neither when the images fail to be an
/// independent pair of order-3 points.
pub fn classify_isomorphism<F: FiniteField>(
    e1: &PlaneCubic<F>,
    e2: &PlaneCubic<F>,
    p1: &ProjPoint<F>,
    p2: &ProjPoint<F>,
    q1: &ProjPoint<F>,
    q2: &ProjPoint<F>,
) -> Result<IsomorphismClass> {
    let src = weil_pairing_3(e1, p1, p2)?;
    if src.is_trivial() {
        return Err(Error::NotATorsionBasis);
    }
    if !e2.contains(q1) || !e2.contains(q2) {
        return Ok(IsomorphismClass::Neither);
    }
    if !e2.is_three_torsion(q1).unwrap_or(false) || !e2.is_three_torsion(q2).unwrap_or(false) {
        return Ok(IsomorphismClass::Neither);
    }
    let dst = match weil_pairing_3(e2, q1, q2) {
        Ok(v) => v,
        Err(Error::NotATorsionBasis) | Err(Error::DegenerateMap(_)) => {
            return Ok(IsomorphismClass::Neither)
        }
        Err(e) => return Err(e),
    };
    if dst.is_trivial() {
        return Ok(IsomorphismClass::Neither);
    }
    if dst == src {
        Ok(IsomorphismClass::Symplectic)
    } else if dst == src.inverse() {
        Ok(IsomorphismClass::AntiSymplectic)
    } else {
        Ok(IsomorphismClass::Neither)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BivarPoly, BivarRing, ExtField, PrimeField, Rationals};

    #[test]
    fn j_invariant_examples() {
        let q = Rationals;
        let e = WeierstrassCurve::new(q, q.from_i64(1), q.zero()).unwrap();
        assert_eq!(e.j_invariant(), q.from_i64(1728));
        let e = WeierstrassCurve::new(q, q.zero(), q.from_i64(1)).unwrap();
        assert_eq!(e.j_invariant(), q.zero());
        assert!(WeierstrassCurve::new(q, q.from_i64(-3), q.from_i64(2)).is_err());
    }

    #[test]
    fn scaled_to_standard_examples() {
        let q = Rationals;
        let (a, b) = (q.from_i64(5), q.from_i64(-7));
        assert_eq!(
            scaled_to_standard(&q, &q.one(), &a, &b).unwrap(),
            (a.clone(), b.clone())
        );
        let (a2, b2) = scaled_to_standard(&q, &q.from_i64(-1), &a, &b).unwrap();
        assert_eq!((a2, b2), (a.clone(), q.from_i64(7)));
        assert!(scaled_to_standard(&q, &q.zero(), &a, &b).is_err());
    }

    #[test]
    fn division_poly_display() {
        let q = Rationals;
        let e = WeierstrassCurve::new(q, q.from_i64(-1), q.zero()).unwrap();
        let psi = e.division_poly_3();
        assert_eq!(
            psi.coeffs().to_vec(),
            vec![q.from_i64(-1), q.zero(), q.from_i64(-6), q.zero(), q.from_i64(3)]
        );
    }

    #[test]
    fn psi3_hessian_identity_symbolic() {
        // 3x(x^3 + Ax + B) + (3A x^2 + 9B x - A^2) = psi_3(x) over Q[A,B]
        let r = BivarRing;
        let a = BivarPoly::var_a();
        let b = BivarPoly::var_b();
        let x = UniPoly::gen(r);
        let cubic = UniPoly::new(
            r,
            vec![b.clone(), a.clone(), r.zero(), r.one()],
        );
        let he_aff = UniPoly::new(
            r,
            vec![
                r.neg(&r.mul(&a, &a)),
                r.mul(&r.from_i64(9), &b),
                r.mul(&r.from_i64(3), &a),
            ],
        );
        let lhs = x.scale(&r.from_i64(3)).mul(&cubic).add(&he_aff);
        let psi = UniPoly::new(
            r,
            vec![
                r.neg(&r.mul(&a, &a)),
                r.mul(&r.from_i64(12), &b),
                r.mul(&r.from_i64(6), &a),
                r.zero(),
                r.from_i64(3),
            ],
        );
        assert_eq!(lhs, psi);
    }

    #[test]
    fn torsion3_full_instance() {
        let f = PrimeField::new(37).unwrap();
        let e = WeierstrassCurve::new(f, 3, 1).unwrap();
        let tor = e.torsion3().unwrap();
        assert_eq!(tor.len(), 9);
        for p in &tor {
            assert!(e.contains(p));
            assert_eq!(e.mul_scalar(p, 3), CurvePoint::Infinity);
        }
        // group closure
        for p in &tor {
            for q in &tor {
                let s = e.add(p, q);
                assert!(tor.contains(&s));
            }
        }
    }

    #[test]
    fn torsion3_trivial_instance() {
        // small p with no psi_3 roots paired with square rhs
        let f = PrimeField::new(5).unwrap();
        let e = WeierstrassCurve::new(f, 1, 1).unwrap();
        let tor = e.torsion3().unwrap();
        // #E(F_5) for y^2 = x^3+x+1 is 9, full group is Z/9: exactly 3 points of order dividing 3
        assert!(matches!(tor.len(), 1 | 3));
    }

    #[test]
    fn torsion3_extension_field() {
        // same curve acquires more torsion over an extension
        let f = ExtField::new(5, 2).unwrap();
        let e = WeierstrassCurve::new(f.clone(), f.embed(1), f.embed(1)).unwrap();
        let tor = e.torsion3().unwrap();
        assert!(tor.len() >= 3);
        for p in &tor {
            assert_eq!(e.mul_scalar(p, 3), CurvePoint::Infinity);
        }
    }

    #[test]
    fn pairing_properties_exhaustive() {
        let f = PrimeField::new(37).unwrap();
        let e = WeierstrassCurve::new(f, 3, 1).unwrap();
        let cubic = e.plane_cubic();
        let tor = e.torsion3().unwrap();
        let zeta = f.primitive_cube_root().unwrap();
        assert_eq!(zeta, 10);
        // alternating + identity degeneracy
        for p in &tor {
            let pp = e.to_proj(p);
            assert!(weil_pairing_3(&cubic, &pp, &pp).unwrap().is_trivial());
            let o = e.to_proj(&CurvePoint::Infinity);
            assert!(weil_pairing_3(&cubic, &pp, &o).unwrap().is_trivial());
        }
        // bilinearity in the first slot, exhaustively
        for p1 in &tor {
            for p2 in &tor {
                for q in &tor {
                    let s = e.add(p1, p2);
                    let l = weil_pairing_3(&cubic, &e.to_proj(&s), &e.to_proj(q)).unwrap();
                    let r1 = weil_pairing_3(&cubic, &e.to_proj(p1), &e.to_proj(q)).unwrap();
                    let r2 = weil_pairing_3(&cubic, &e.to_proj(p2), &e.to_proj(q)).unwrap();
                    assert_eq!(l.exponent(), (r1.exponent() + r2.exponent()) % 3);
                }
            }
        }
        // nondegeneracy on a basis; skew symmetry
        let (b1, b2) = e.torsion3_basis().unwrap();
        let v12 = weil_pairing_3(&cubic, &e.to_proj(&b1), &e.to_proj(&b2)).unwrap();
        let v21 = weil_pairing_3(&cubic, &e.to_proj(&b2), &e.to_proj(&b1)).unwrap();
        assert!(!v12.is_trivial());
        assert_eq!(v21, v12.inverse());
    }

    #[test]
    fn pairing_aux_route_agrees() {
        let f = PrimeField::new(37).unwrap();
        let e = WeierstrassCurve::new(f, 3, 1).unwrap();
        let cubic = e.plane_cubic();
        let tor = e.torsion3().unwrap();
        for (i, p) in tor.iter().enumerate() {
            for (j, q) in tor.iter().enumerate() {
                let closed =
                    weil_pairing_value(&cubic, &e.to_proj(p), &e.to_proj(q)).unwrap();
                for seed in 0..10u64 {
                    let aux = weil_pairing_value_aux(
                        &cubic,
                        &e.to_proj(p),
                        &e.to_proj(q),
                        seed.wrapping_mul(97).wrapping_add((i * 9 + j) as u64),
                    )
                    .unwrap();
                    assert_eq!(aux, closed);
                }
            }
        }
    }

    #[test]
    fn classify_identity_symplectic() {
        let f = PrimeField::new(37).unwrap();
        let e = WeierstrassCurve::new(f, 3, 1).unwrap();
        let cubic = e.plane_cubic();
        let (b1, b2) = e.torsion3_basis().unwrap();
        let (p1, p2) = (e.to_proj(&b1), e.to_proj(&b2));
        let cls = classify_isomorphism(&cubic, &cubic, &p1, &p2, &p1, &p2).unwrap();
        assert_eq!(cls, IsomorphismClass::Symplectic);
        // negation composed with identity stays in the same class
        let (n1, n2) = (e.to_proj(&e.neg(&b1)), e.to_proj(&e.neg(&b2)));
        let cls = classify_isomorphism(&cubic, &cubic, &p1, &p2, &n1, &n2).unwrap();
        assert_eq!(cls, IsomorphismClass::Symplectic);
        // dependent images break homomorphy: Q2 = -Q1
        let cls =
            classify_isomorphism(&cubic, &cubic, &p1, &p2, &p1, &n1).unwrap();
        assert_eq!(cls, IsomorphismClass::Neither);
    }

    #[test]
    fn rational_torsion_search() {
        // y^2 = x^3 - 3x + 2 is singular; use a curve with a rational 3-torsion
        // point: y^2 = x^3 + 4 has (0, 2) of order 3 (psi_3 root x = 0).
        let q = Rationals;
        let e = WeierstrassCurve::new(q, q.zero(), q.from_i64(4)).unwrap();
        let tor = rational_torsion3(&e).unwrap();
        assert_eq!(tor.len(), 3);
        assert!(tor.contains(&CurvePoint::Affine(q.zero(), q.from_i64(2))));
    }
}
