//! Polar operators, the Hessian construction, tangent lines and the
//! degenerate-conic utilities they rest on.

use crate::error::{Error, Result};
use crate::field::Ring;
use crate::poly::TernaryForm;

/// Point of the projective plane. Equality is equality up to a nonzero
/// scalar; the stored representative is whatever the caller constructed.
#[derive(Clone, Debug)]
pub struct ProjPoint<R: Ring> {
    ring: R,
    coords: [R::Elem; 3],
}

impl<R: Ring> ProjPoint<R> {
    pub fn new(ring: R, coords: [R::Elem; 3]) -> Result<Self> {
        if coords.iter().all(|c| ring.is_zero(c)) {
            return Err(Error::DegenerateMap("projective point needs a nonzero coordinate".into()));
        }
        Ok(ProjPoint { ring, coords })
    }

    pub fn from_i64(ring: R, coords: [i64; 3]) -> Self {
        let c = [ring.from_i64(coords[0]), ring.from_i64(coords[1]), ring.from_i64(coords[2])];
        Self::new(ring, c).expect("nonzero integer coordinates")
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coords(&self) -> &[R::Elem; 3] {
        &self.coords
    }

    /// Representative scaled so the first nonzero coordinate is one
    /// (needs a field); deterministic across representatives.
    pub fn normalized(&self) -> Self {
        let r = &self.ring;
        for c in &self.coords {
            if let Some(ci) = r.inv(c) {
                let coords =
                    [r.mul(&self.coords[0], &ci), r.mul(&self.coords[1], &ci), r.mul(&self.coords[2], &ci)];
                return ProjPoint { ring: r.clone(), coords };
            }
        }
        self.clone()
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coords =
            [self.ring.mul(&self.coords[0], c), self.ring.mul(&self.coords[1], c), self.ring.mul(&self.coords[2], c)];
        ProjPoint { ring: self.ring.clone(), coords }
    }

    /// Cross product of representatives: the line through two points, or
    /// the point where two lines meet.
    pub fn cross(&self, other: &Self) -> Result<Self> {
        let r = &self.ring;
        let a = &self.coords;
        let b = &other.coords;
        let c = [
            r.sub(&r.mul(&a[1], &b[2]), &r.mul(&a[2], &b[1])),
            r.sub(&r.mul(&a[2], &b[0]), &r.mul(&a[0], &b[2])),
            r.sub(&r.mul(&a[0], &b[1]), &r.mul(&a[1], &b[0])),
        ];
        Self::new(r.clone(), c)
    }

    pub fn fmt(&self) -> String {
        let r = &self.ring;
        format!(
            "({}:{}:{})",
            r.fmt_elem(&self.coords[0]),
            r.fmt_elem(&self.coords[1]),
            r.fmt_elem(&self.coords[2])
        )
    }
}

impl<R: Ring> PartialEq for ProjPoint<R> {
    /// Projective equality: all 2x2 minors of the coordinate pair vanish.
    fn eq(&self, other: &Self) -> bool {
        let r = &self.ring;
        let a = &self.coords;
        let b = &other.coords;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let m = r.sub(&r.mul(&a[i], &b[j]), &r.mul(&a[j], &b[i]));
                if !r.is_zero(&m) {
                    return false;
                }
            }
        }
        true
    }
}

/// Symmetric 3x3 matrix of scalars (an evaluated Hessian / conic matrix).
#[derive(Clone, Debug, PartialEq)]
pub struct Mat3<R: Ring> {
    ring: R,
    /// rows
    m: [[R::Elem; 3]; 3],
}

impl<R: Ring> Mat3<R> {
    pub fn new(ring: R, m: [[R::Elem; 3]; 3]) -> Self {
        Mat3 { ring, m }
    }

    pub fn entry(&self, i: usize, j: usize) -> &R::Elem {
        &self.m[i][j]
    }

    pub fn det(&self) -> R::Elem {
        let r = &self.ring;
        let m = &self.m;
        let mut acc = r.zero();
        // first-row expansion with cyclic column pairs; all signs positive
        for i in 0..3 {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            let minor = r.sub(&r.mul(&m[1][j], &m[2][k]), &r.mul(&m[1][k], &m[2][j]));
            acc = r.add(&acc, &r.mul(&m[0][i], &minor));
        }
        acc
    }

    pub fn mul_vec(&self, v: &[R::Elem; 3]) -> [R::Elem; 3] {
        let r = &self.ring;
        [0, 1, 2].map(|i| {
            r.sum([
                r.mul(&self.m[i][0], &v[0]),
                r.mul(&self.m[i][1], &v[1]),
                r.mul(&self.m[i][2], &v[2]),
            ])
        })
    }

    /// Adjugate (transpose of cofactors). For a symmetric matrix of rank 2
    /// it is rank 1 and its columns span the kernel.
    pub fn adjugate(&self) -> Mat3<R> {
        let r = &self.ring;
        let m = &self.m;
        let cof = |i: usize, j: usize| {
            let (r0, r1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = r.sub(&r.mul(&m[r0][c0], &m[r1][c1]), &r.mul(&m[r0][c1], &m[r1][c0]));
            if (i + j) % 2 == 1 {
                r.neg(&minor)
            } else {
                minor
            }
        };
        // adj = transpose of cofactor matrix
        let a = [0, 1, 2].map(|i| [0, 1, 2].map(|j| cof(j, i)));
        Mat3::new(r.clone(), a)
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|row| row.iter().all(|e| self.ring.is_zero(e)))
    }

    /// The quadratic form x^T M x as a ternary form.
    pub fn quadratic_form(&self, space: crate::poly::VarSpace) -> TernaryForm<R> {
        let r = &self.ring;
        let mut entries = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let mut m = [0u32; 3];
                m[i] += 1;
                m[j] += 1;
                entries.push((m, self.m[i][j].clone()));
            }
        }
        TernaryForm::from_coeffs(r.clone(), space, 2, entries)
    }
}

/// Symmetric matrix of forms: the halved Hessian matrix of a cubic has
/// linear-form entries.
#[derive(Clone, Debug)]
pub struct SymMat3<R: Ring> {
    entries: [[TernaryForm<R>; 3]; 3],
}

impl<R: Ring> SymMat3<R> {
    pub fn entry(&self, i: usize, j: usize) -> &TernaryForm<R> {
        &self.entries[i][j]
    }

    /// Evaluate every entry at a point.
    pub fn eval(&self, v: &[R::Elem; 3]) -> Mat3<R> {
        let ring = self.entries[0][0].ring().clone();
        let m = [0, 1, 2].map(|i| [0, 1, 2].map(|j| self.entries[i][j].eval(v)));
        Mat3::new(ring, m)
    }

    pub fn det(&self) -> TernaryForm<R> {
        let e = &self.entries;
        let term = |a: &TernaryForm<R>, b: &TernaryForm<R>, c: &TernaryForm<R>| {
            a.mul(b).and_then(|ab| ab.mul(c)).expect("same space")
        };
        let pos = [
            term(&e[0][0], &e[1][1], &e[2][2]),
            term(&e[0][1], &e[1][2], &e[2][0]),
            term(&e[0][2], &e[1][0], &e[2][1]),
        ];
        let neg = [
            term(&e[0][2], &e[1][1], &e[2][0]),
            term(&e[0][0], &e[1][2], &e[2][1]),
            term(&e[0][1], &e[1][0], &e[2][2]),
        ];
        let mut acc = pos[0].clone();
        acc = acc.add(&pos[1]).expect("degree");
        acc = acc.add(&pos[2]).expect("degree");
        for n in &neg {
            acc = acc.sub(n).expect("degree");
        }
        acc
    }
}

/// k-th polar of F at a: the k-fold directional derivative along a
/// representative vector of `a`. k = 0 returns F; the result depends on
/// the representative only up to the scalar lambda^k.
pub fn polar<R: Ring>(f: &TernaryForm<R>, a: &ProjPoint<R>, k: u32) -> Result<TernaryForm<R>> {
    if k > f.degree() {
        return Err(Error::PolarOrderOutOfRange);
    }
    let mut out = f.clone();
    for _ in 0..k {
        out = out.nabla(a.coords());
    }
    Ok(out)
}

/// Halved Hessian matrix F''/2 of a cubic; entries are linear forms. The
/// halving makes the determinant reproduce the displayed equations.
pub fn hessian_matrix<R: Ring>(f: &TernaryForm<R>) -> Result<SymMat3<R>> {
    if f.degree() != 3 {
        return Err(Error::WrongDegree { expected: 3, got: f.degree() });
    }
    let r = f.ring().clone();
    let half = r.inv(&r.from_i64(2)).ok_or(Error::SmallCharacteristic(2))?;
    let entry = |i: usize, j: usize| f.partial(i).partial(j).scale(&half);
    let entries = [0, 1, 2].map(|i| [0, 1, 2].map(|j| entry(i, j)));
    Ok(SymMat3 { entries })
}

/// det(F''/2), the Hessian cubic of F. May vanish identically.
pub fn hessian_form<R: Ring>(f: &TernaryForm<R>) -> Result<TernaryForm<R>> {
    Ok(hessian_matrix(f)?.det())
}

/// Tangent line at a smooth point of F(a) = 0, as a canonicalized linear
/// form.
pub fn tangent_line<R: Ring>(f: &TernaryForm<R>, a: &ProjPoint<R>) -> Result<TernaryForm<R>> {
    let r = f.ring().clone();
    if !r.is_zero(&f.eval(a.coords())) {
        return Err(Error::PointNotOnCurve);
    }
    let g = f.gradient(a.coords());
    if g.iter().all(|c| r.is_zero(c)) {
        return Err(Error::SingularPoint);
    }
    let space = f.space();
    TernaryForm::from_coeffs(
        r,
        space,
        1,
        [([1, 0, 0], g[0].clone()), ([0, 1, 0], g[1].clone()), ([0, 0, 1], g[2].clone())],
    )
    .canonicalize()
}

/// Tangent line as a dual point (its coefficient triple).
pub fn tangent_line_dual<R: Ring>(f: &TernaryForm<R>, a: &ProjPoint<R>) -> Result<ProjPoint<R>> {
    let r = f.ring().clone();
    if !r.is_zero(&f.eval(a.coords())) {
        return Err(Error::PointNotOnCurve);
    }
    let g = f.gradient(a.coords());
    ProjPoint::new(r, g).map_err(|_| Error::SingularPoint)
}

/// Kernel analysis of a symmetric scalar 3x3 matrix (a conic).
#[derive(Clone, Debug, PartialEq)]
pub enum ConicKernel<R: Ring> {
    /// rank 3: the conic is nondegenerate
    Nonsingular,
    /// rank 2: unique singular point
    Point(ProjPoint<R>),
    /// rank <= 1: a whole line of singular points (double line or zero)
    Degenerate,
}

/// Classify M by rank using the adjugate: division-free and exact.
pub fn conic_kernel<R: Ring>(m: &Mat3<R>) -> ConicKernel<R> {
    let r = m.ring_ref().clone();
    if !r.is_zero(&m.det()) {
        return ConicKernel::Nonsingular;
    }
    let adj = m.adjugate();
    if adj.is_zero() {
        return ConicKernel::Degenerate;
    }
    // any nonzero column of the adjugate spans the kernel
    for j in 0..3 {
        let col = [adj.entry(0, j).clone(), adj.entry(1, j).clone(), adj.entry(2, j).clone()];
        if let Ok(p) = ProjPoint::new(r.clone(), col) {
            return ConicKernel::Point(p);
        }
    }
    ConicKernel::Degenerate
}

impl<R: Ring> Mat3<R> {
    pub fn ring_ref(&self) -> &R {
        &self.ring
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, Ring};
    use crate::poly::VarSpace;

    fn weier(a: i64, b: i64) -> TernaryForm<Rationals> {
        TernaryForm::cubic_i64(
            Rationals,
            VarSpace::Primal,
            &[([0, 2, 1], 1), ([3, 0, 0], -1), ([1, 0, 2], -a), ([0, 0, 3], -b)],
        )
    }

    fn he_display(a: i64, b: i64) -> TernaryForm<Rationals> {
        TernaryForm::cubic_i64(
            Rationals,
            VarSpace::Primal,
            &[([2, 0, 1], 3 * a), ([1, 0, 2], 9 * b), ([1, 2, 0], 3), ([0, 0, 3], -a * a)],
        )
    }

    #[test]
    fn polar_endpoints() {
        let q = Rationals;
        let f = weier(2, 3);
        let a = ProjPoint::from_i64(q, [1, -1, 2]);
        assert_eq!(polar(&f, &a, 0).unwrap(), f);
        // k = d gives the constant d! * F(a)
        let top = polar(&f, &a, 3).unwrap();
        let expect = q.mul(&q.from_i64(6), &f.eval(a.coords()));
        assert_eq!(top.eval(&[q.zero(), q.zero(), q.zero()]), expect);
        assert!(polar(&f, &a, 4).is_err());
        // single differentiation at (0:1:0) is dF/dy = 2yz
        let o = ProjPoint::from_i64(q, [0, 1, 0]);
        let p1 = polar(&f, &o, 1).unwrap();
        let expect =
            TernaryForm::from_coeffs(q, VarSpace::Primal, 2, [([0, 1, 1], q.from_i64(2))]);
        assert_eq!(p1, expect);
    }

    #[test]
    fn hessian_matrix_weierstrass_display() {
        // rows (-3x, 0, -Az), (0, z, y), (-Az, y, -Ax-3Bz) for A=5, B=7
        let q = Rationals;
        let (a, b) = (5i64, 7i64);
        let m = hessian_matrix(&weier(a, b)).unwrap();
        let lin = |cs: [i64; 3]| {
            TernaryForm::from_coeffs(
                q,
                VarSpace::Primal,
                1,
                [
                    ([1, 0, 0], q.from_i64(cs[0])),
                    ([0, 1, 0], q.from_i64(cs[1])),
                    ([0, 0, 1], q.from_i64(cs[2])),
                ],
            )
        };
        assert_eq!(*m.entry(0, 0), lin([-3, 0, 0]));
        assert_eq!(*m.entry(0, 1), lin([0, 0, 0]));
        assert_eq!(*m.entry(0, 2), lin([0, 0, -a]));
        assert_eq!(*m.entry(1, 1), lin([0, 0, 1]));
        assert_eq!(*m.entry(1, 2), lin([0, 1, 0]));
        assert_eq!(*m.entry(2, 2), lin([-a, 0, -3 * b]));
    }

    #[test]
    fn hessian_form_matches_display() {
        for (a, b) in [(1i64, 0i64), (1, 1), (5, 7), (-2, 3)] {
            let he = hessian_form(&weier(a, b)).unwrap();
            assert_eq!(he, he_display(a, b));
        }
        // x^3 -> diag(3x, 0, 0), det = 0... check matrix instead
        let q = Rationals;
        let f = TernaryForm::cubic_i64(q, VarSpace::Primal, &[([3, 0, 0], 1)]);
        let m = hessian_matrix(&f).unwrap();
        let expect =
            TernaryForm::from_coeffs(q, VarSpace::Primal, 1, [([1, 0, 0], q.from_i64(3))]);
        assert_eq!(*m.entry(0, 0), expect);
        assert!(m.entry(1, 1).is_zero() && m.entry(2, 2).is_zero());
    }

    #[test]
    fn hessian_identically_zero() {
        // F = xy^2 + zy^2 has det F'' = 0 identically
        let q = Rationals;
        let f = TernaryForm::cubic_i64(q, VarSpace::Primal, &[([1, 2, 0], 1), ([0, 2, 1], 1)]);
        assert!(hessian_form(&f).unwrap().is_zero());
    }

    #[test]
    fn hessian_scales_as_cube() {
        let q = Rationals;
        let f = weier(3, 4);
        let lam = q.from_i64(5);
        let lhs = hessian_form(&f.scale(&lam)).unwrap();
        let rhs = hessian_form(&f).unwrap().scale(&q.pow(&lam, 3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tangent_line_at_infinity_is_z() {
        let q = Rationals;
        let f = weier(2, 3);
        let o = ProjPoint::from_i64(q, [0, 1, 0]);
        let t = tangent_line(&f, &o).unwrap();
        assert_eq!(t.canonical_string(), "z");
        // off-curve and singular-point errors
        let off = ProjPoint::from_i64(q, [1, 1, 1]);
        assert!(matches!(tangent_line(&f, &off), Err(Error::PointNotOnCurve)));
        let cusp = TernaryForm::cubic_i64(q, VarSpace::Primal, &[([0, 2, 1], 1), ([3, 0, 0], -1)]);
        let sing = ProjPoint::from_i64(q, [0, 0, 1]);
        assert!(matches!(tangent_line(&cusp, &sing), Err(Error::SingularPoint)));
    }

    #[test]
    fn tangent_equals_second_polar_on_cubic() {
        // Prop: P_{a^2}(C) coincides with T_a for smooth a on a cubic
        let fp = PrimeField::new(37).unwrap();
        let f = TernaryForm::cubic_i64(
            fp,
            VarSpace::Primal,
            &[([0, 2, 1], 1), ([3, 0, 0], -1), ([1, 0, 2], -3), ([0, 0, 3], -1)],
        );
        let a = ProjPoint::from_i64(fp, [12, 10, 1]);
        assert!(fp.is_zero(&f.eval(a.coords())));
        let t = tangent_line(&f, &a).unwrap();
        let p2 = polar(&f, &a, 2).unwrap().canonicalize().unwrap();
        assert_eq!(t, p2);
    }

    #[test]
    fn conic_kernel_ranks() {
        let q = Rationals;
        let diag = |d: [i64; 3]| {
            Mat3::new(
                q,
                [0, 1, 2].map(|i| {
                    [0, 1, 2].map(|j| if i == j { q.from_i64(d[i]) } else { q.zero() })
                }),
            )
        };
        assert_eq!(conic_kernel(&diag([1, 1, 1])), ConicKernel::Nonsingular);
        match conic_kernel(&diag([1, 1, 0])) {
            ConicKernel::Point(p) => assert_eq!(p, ProjPoint::from_i64(q, [0, 0, 1])),
            other => panic!("expected point, got {other:?}"),
        }
        assert_eq!(conic_kernel(&diag([1, 0, 0])), ConicKernel::Degenerate);
        assert_eq!(conic_kernel(&diag([0, 0, 0])), ConicKernel::Degenerate);
    }

    #[test]
    fn euler_identity_random() {
        use rand::{Rng, SeedableRng};
        let q = Rationals;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let d = rng.gen_range(1..=4u32);
            // random form of degree d
            let mut entries = Vec::new();
            for i in 0..=d {
                for j in 0..=(d - i) {
                    let k = d - i - j;
                    entries.push(([i, j, k], q.from_i64(rng.gen_range(-9..=9))));
                }
            }
            let f = TernaryForm::from_coeffs(q, VarSpace::Primal, d, entries);
            let v = [
                q.from_i64(rng.gen_range(-9..=9i64)),
                q.from_i64(rng.gen_range(-9..=9i64)),
                q.from_i64(rng.gen_range(1..=9i64)),
            ];
            let x = ProjPoint::new(q, v.clone()).unwrap();
            for k in 0..=d {
                // d(d-1)...(d-k+1) F(x) = polar(F, x, k)(x)
                let mut factor = q.one();
                for i in 0..k {
                    factor = q.mul(&factor, &q.from_i64((d - i) as i64));
                }
                let lhs = q.mul(&factor, &f.eval(&v));
                let rhs = polar(&f, &x, k).unwrap().eval(&v);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
