//! The two universal pencils of plane cubics attached to E0: the
//! Hessian pencil (symplectic 3-torsion transport along the identity) and
//! the Cayleyan pencil in the primed dual plane (anti-symplectic transport
//! along the polar-conic component map), together with their Weierstrass
//! coefficient families and parameter maps.

use crate::cubic::{
    cayleyan_primed, delta, dual_point_to_primed, f0_primed, hessian_weierstrass,
    require_hessian_smooth, weierstrass_cubic,
};
use crate::error::{Error, Result};
use crate::field::{Field, Ring};
use crate::polarity::{hessian_form, hessian_matrix, tangent_line, ProjPoint};
use crate::poly::{TernaryForm, UniPoly, VarSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PencilKind {
    Symplectic,
    AntiSymplectic,
}

/// Pencil t0 F + t1 G; the nine base points are the common zeros of F and
/// G.
#[derive(Clone, Debug)]
pub struct CubicPencil<R: Ring> {
    f: TernaryForm<R>,
    g: TernaryForm<R>,
    kind: PencilKind,
    a: R::Elem,
    b: R::Elem,
}

impl<R: Ring> CubicPencil<R> {
    pub fn f(&self) -> &TernaryForm<R> {
        &self.f
    }

    pub fn g(&self) -> &TernaryForm<R> {
        &self.g
    }

    pub fn kind(&self) -> PencilKind {
        self.kind
    }

    pub fn base_params(&self) -> (&R::Elem, &R::Elem) {
        (&self.a, &self.b)
    }

    /// Member F + t G.
    pub fn member(&self, t: &R::Elem) -> TernaryForm<R> {
        self.f.add(&self.g.scale(t)).expect("same space and degree")
    }

    /// Member at the projective parameter (t0 : t1); (0 : 1) is G.
    pub fn member_proj(&self, t0: &R::Elem, t1: &R::Elem) -> TernaryForm<R> {
        self.f.scale(t0).add(&self.g.scale(t1)).expect("same space and degree")
    }

    /// The member at infinity.
    pub fn member_infinity(&self) -> &TernaryForm<R> {
        &self.g
    }
}

/// E0 + t He(E0). G is computed as det(F''/2) and coincides with the
/// displayed Hessian cubic.
pub fn symplectic_family<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<CubicPencil<R>> {
    require_hessian_smooth(ring, a, b)?;
    let f = weierstrass_cubic(ring, a, b);
    let g = hessian_form(&f)?;
    debug_assert_eq!(g, hessian_weierstrass(ring, a, b));
    Ok(CubicPencil {
        f,
        g,
        kind: PencilKind::Symplectic,
        a: a.clone(),
        b: b.clone(),
    })
}

/// F0 + t Ca(E0) in primed dual coordinates. hessian_form(F0) equals
/// delta^2 G exactly.
pub fn antisymplectic_family<R: Ring>(
    ring: &R,
    a: &R::Elem,
    b: &R::Elem,
) -> Result<CubicPencil<R>> {
    let f = f0_primed(ring, a, b)?;
    let g = cayleyan_primed(ring, a, b)?;
    Ok(CubicPencil {
        f,
        g,
        kind: PencilKind::AntiSymplectic,
        a: a.clone(),
        b: b.clone(),
    })
}

/// The origin every anti-symplectic member is read with: the image of
/// (0:1:0) under the torsion map, which is the base point (0:1:0) in
/// primed coordinates.
pub fn anti_origin<R: Ring>(ring: &R) -> ProjPoint<R> {
    ProjPoint::new(ring.clone(), [ring.zero(), ring.one(), ring.zero()]).expect("nonzero")
}

/// The anti-symplectic 3-torsion transport E0[3] -> F[3]: send P to the
/// component of the degenerate polar conic P_P(E0) other than the
/// inflection tangent, read in primed dual coordinates.
///
/// The displayed map of the source text is the inflection-tangent map
/// [`inflection_tangent_primed`]; its images are 2-torsion translates of
/// the base points and do not lie on the pencil members, so the transport
/// used everywhere here carries the extra involution step.
pub fn torsion_map_phi<F: Field>(
    ring: &F,
    a: &F::Elem,
    b: &F::Elem,
    p: &ProjPoint<F>,
) -> Result<ProjPoint<F>> {
    require_hessian_smooth(ring, a, b)?;
    let e0 = weierstrass_cubic(ring, a, b);
    let he = hessian_weierstrass(ring, a, b);
    if !ring.is_zero(&e0.eval(p.coords())) {
        return Err(Error::PointNotOnCurve);
    }
    if !ring.is_zero(&he.eval(p.coords())) {
        return Err(Error::NotOnHessian);
    }
    // polar conic of E0 at p: x^T (F''(p)/2) x, which splits off T_p
    let conic = hessian_matrix(&e0)?.eval(p.coords()).quadratic_form(VarSpace::Primal);
    let t = tangent_line(&e0, p)?;
    let other = conic.div_exact_linear(&t)?;
    let dual = ProjPoint::new(
        ring.clone(),
        [other.coeff([1, 0, 0]), other.coeff([0, 1, 0]), other.coeff([0, 0, 1])],
    )
    .map_err(|_| Error::MapUndefinedAt)?;
    dual_point_to_primed(ring, a, b, &dual)
}

/// The displayed torsion-tangent map
/// (x:y:z) -> (-y(3Ax^2+9Bxz-A^2z^2) : Az(3x^2+Az^2) : 3xyz), extended to
/// (0:1:0) by its limit (1:0:0). Geometrically the line P iota(P) in
/// primed coordinates.
pub fn inflection_tangent_primed<R: Ring>(
    ring: &R,
    a: &R::Elem,
    b: &R::Elem,
    p: &ProjPoint<R>,
) -> Result<ProjPoint<R>> {
    let r = ring.clone();
    let [x, y, z] = p.coords().clone();
    let x2 = r.mul(&x, &x);
    let z2 = r.mul(&z, &z);
    let a2 = r.mul(a, a);
    let t1 = r.add(
        &r.mul(&r.from_i64(3), &r.mul(a, &x2)),
        &r.sub(&r.mul(&r.from_i64(9), &r.mul(b, &r.mul(&x, &z))), &r.mul(&a2, &z2)),
    );
    let c0 = r.neg(&r.mul(&y, &t1));
    let c1 = r.mul(a, &r.mul(&z, &r.add(&r.mul(&r.from_i64(3), &x2), &r.mul(a, &z2))));
    let c2 = r.mul(&r.from_i64(3), &r.mul(&x, &r.mul(&y, &z)));
    match ProjPoint::new(r.clone(), [c0, c1, c2]) {
        Ok(q) => Ok(q),
        Err(_) => {
            // the only 3-torsion point where the polynomials vanish is the
            // origin; the limit along the curve is (1:0:0)
            let o = ProjPoint::new(r.clone(), [r.zero(), r.one(), r.zero()]).expect("nonzero");
            if p == &o {
                Ok(ProjPoint::new(r.clone(), [r.one(), r.zero(), r.zero()]).expect("nonzero"))
            } else {
                Err(Error::MapUndefinedAt)
            }
        }
    }
}

/// Weierstrass coefficient family of a pencil: Y^2 = X^3 + a(t) X + b(t)
/// when scale = 1, and scale * Y^2 = X^3 + a(t) X + b(t) in general.
#[derive(Clone, Debug)]
pub struct FamilyWeierstrass<F: Field> {
    ring: F,
    pub a_poly: UniPoly<F>,
    pub b_poly: UniPoly<F>,
    pub scale: F::Elem,
}

impl<F: Field> FamilyWeierstrass<F> {
    /// 4 a(t)^3 + 27 b(t)^2; the discriminant is -16 times this.
    pub fn disc_core(&self) -> UniPoly<F> {
        let a3 = self.a_poly.mul(&self.a_poly).mul(&self.a_poly);
        let b2 = self.b_poly.mul(&self.b_poly);
        a3.scale(&self.ring.from_i64(4)).add(&b2.scale(&self.ring.from_i64(27)))
    }

    /// Delta(t) = -16 (4 a^3 + 27 b^2).
    pub fn delta_poly(&self) -> UniPoly<F> {
        self.disc_core().scale(&self.ring.from_i64(-16))
    }

    /// Short-Weierstrass coefficients of the member at t, folding in the
    /// scale (a twist-invariant operation for j purposes).
    pub fn coefficients_at(&self, t: &F::Elem) -> Result<(F::Elem, F::Elem)> {
        crate::ec::scaled_to_standard(
            &self.ring,
            &self.scale,
            &self.a_poly.eval(t),
            &self.b_poly.eval(t),
        )
    }

    /// j-invariant of the member at t; error at singular parameters.
    pub fn j_at(&self, t: &F::Elem) -> Result<F::Elem> {
        let r = &self.ring;
        let a = self.a_poly.eval(t);
        let b = self.b_poly.eval(t);
        let d = delta(r, &a, &b);
        if r.is_zero(&d) {
            return Err(Error::SingularInput(format!(
                "member at t = {} is singular",
                r.fmt_elem(t)
            )));
        }
        let a3 = r.mul(&a, &r.mul(&a, &a));
        Ok(r.div(&r.mul(&r.from_i64(6912), &a3), &d).expect("nonzero"))
    }

    /// Squarefree quartic g and constant c with 4a^3 + 27b^2 = c g^3.
    /// This is the I3-fiber structure: four triple roots over the closure.
    pub fn cubed_quartic(&self) -> Result<(F::Elem, UniPoly<F>)> {
        let core = self.disc_core();
        let g = core.squarefree_part()?;
        if g.degree() != Some(4) {
            return Err(Error::DegenerateMap(format!(
                "squarefree part has degree {:?}, expected 4",
                g.degree()
            )));
        }
        let g3 = g.pow(3);
        let q = core.div_exact(&g3)?;
        if q.degree() != Some(0) {
            return Err(Error::DegenerateMap("disc is not c * g^3".into()));
        }
        Ok((q.coeff(0), g))
    }
}

/// Displayed Weierstrass family of the symplectic pencil:
/// a(t) = -27(A^3+9B^2) t^4 + 54AB t^3 - 18A^2 t^2 - 18B t + A,
/// b(t) = -243B(A^3+6B^2) t^6 + 54A(2A^3+9B^2) t^5 + 135A^2B t^4
///        + 270B^2 t^3 - 45AB t^2 + 4A^2 t + B.
pub fn family_weierstrass_e<F: Field>(
    ring: &F,
    a: &F::Elem,
    b: &F::Elem,
) -> Result<FamilyWeierstrass<F>> {
    require_hessian_smooth(ring, a, b)?;
    let r = ring.clone();
    let a2 = r.mul(a, a);
    let a3 = r.mul(&a2, a);
    let b2 = r.mul(b, b);
    let ab = r.mul(a, b);
    let a_poly = UniPoly::new(
        r.clone(),
        vec![
            a.clone(),
            r.mul(&r.from_i64(-18), b),
            r.mul(&r.from_i64(-18), &a2),
            r.mul(&r.from_i64(54), &ab),
            r.mul(&r.from_i64(-27), &r.add(&a3, &r.mul(&r.from_i64(9), &b2))),
        ],
    );
    let b_poly = UniPoly::new(
        r.clone(),
        vec![
            b.clone(),
            r.mul(&r.from_i64(4), &a2),
            r.mul(&r.from_i64(-45), &ab),
            r.mul(&r.from_i64(270), &b2),
            r.mul(&r.from_i64(135), &r.mul(&a2, b)),
            r.mul(&r.from_i64(54), &r.mul(a, &r.add(&r.mul(&r.from_i64(2), &a3), &r.mul(&r.from_i64(9), &b2)))),
            r.mul(&r.from_i64(-243), &r.mul(b, &r.add(&a3, &r.mul(&r.from_i64(6), &b2)))),
        ],
    );
    Ok(FamilyWeierstrass { ring: r.clone(), a_poly, b_poly, scale: r.one() })
}

/// Displayed Weierstrass family of the anti-symplectic pencil, in the
/// reparametrized form -delta Y^2 = X^3 + a(t) X + b(t):
/// a(t) = delta (27A^2 t^4 + 108B t^3 - 18A t^2 - 1), b(t) = 2 delta b_E(t).
pub fn family_weierstrass_f<F: Field>(
    ring: &F,
    a: &F::Elem,
    b: &F::Elem,
) -> Result<FamilyWeierstrass<F>> {
    require_hessian_smooth(ring, a, b)?;
    let r = ring.clone();
    let d = delta(ring, a, b);
    let a2 = r.mul(a, a);
    let a_poly = UniPoly::new(
        r.clone(),
        vec![
            r.neg(&d),
            r.zero(),
            r.mul(&r.from_i64(-18), &r.mul(a, &d)),
            r.mul(&r.from_i64(108), &r.mul(b, &d)),
            r.mul(&r.from_i64(27), &r.mul(&a2, &d)),
        ],
    );
    let e_family = family_weierstrass_e(ring, a, b)?;
    let b_poly = e_family.b_poly.scale(&r.mul(&r.from_i64(2), &d));
    Ok(FamilyWeierstrass { ring: r.clone(), a_poly, b_poly, scale: r.neg(&d) })
}

/// Parameter of the Hessian of a member: He(member(t)) is member(t_H)
/// with t_H = (-27B t^3 + 9A t^2 + 1) / (9t (3A^2 t^2 + 9B t - A)).
pub fn hessian_parameter<F: Field>(
    ring: &F,
    a: &F::Elem,
    b: &F::Elem,
    t: &F::Elem,
) -> Result<F::Elem> {
    let r = ring.clone();
    let t2 = r.mul(t, t);
    let t3 = r.mul(&t2, t);
    let num = r.add(
        &r.add(&r.mul(&r.from_i64(-27), &r.mul(b, &t3)), &r.mul(&r.from_i64(9), &r.mul(a, &t2))),
        &r.one(),
    );
    let inner = r.sub(
        &r.add(
            &r.mul(&r.from_i64(3), &r.mul(&r.mul(a, a), &t2)),
            &r.mul(&r.from_i64(9), &r.mul(b, t)),
        ),
        a,
    );
    let den = r.mul(&r.from_i64(9), &r.mul(t, &inner));
    r.div(&num, &den).ok_or_else(|| {
        Error::ParameterPole(format!(
            "t_H has a pole at t = {} (the Hessian of this member is the member at infinity or the parameter is 0)",
            r.fmt_elem(t)
        ))
    })
}

/// Rubin–Silverberg reparametrization:
/// t = 6AB t_RS / (27 B^2 t_RS + 4A^3 + 27B^2).
pub fn rubin_silverberg_param<F: Field>(
    ring: &F,
    a: &F::Elem,
    b: &F::Elem,
    t_rs: &F::Elem,
) -> Result<F::Elem> {
    let r = ring.clone();
    let num = r.mul(&r.from_i64(6), &r.mul(a, &r.mul(b, t_rs)));
    let den = r.add(
        &r.mul(&r.from_i64(27), &r.mul(&r.mul(b, b), t_rs)),
        &delta(ring, a, b),
    );
    r.div(&num, &den)
        .ok_or_else(|| Error::ParameterPole("Rubin–Silverberg parameter pole".into()))
}

/// From the pencil parameter s of F0 + s Ca to the parameter of the
/// displayed Weierstrass family: t = 2A s / (9B s - delta).
pub fn anti_weier_param<F: Field>(
    ring: &F,
    a: &F::Elem,
    b: &F::Elem,
    s: &F::Elem,
) -> Result<F::Elem> {
    let r = ring.clone();
    let num = r.mul(&r.from_i64(2), &r.mul(a, s));
    let den = r.sub(&r.mul(&r.from_i64(9), &r.mul(b, s)), &delta(ring, a, b));
    r.div(&num, &den).ok_or_else(|| Error::ParameterPole("anti-family parameter pole".into()))
}

/// Inverse of [`anti_weier_param`]: s = delta t / (9B t - 2A).
pub fn anti_pencil_param<F: Field>(
    ring: &F,
    a: &F::Elem,
    b: &F::Elem,
    t: &F::Elem,
) -> Result<F::Elem> {
    let r = ring.clone();
    let num = r.mul(&delta(ring, a, b), t);
    let den = r.sub(
        &r.mul(&r.from_i64(9), &r.mul(b, t)),
        &r.mul(&r.from_i64(2), a),
    );
    r.div(&num, &den).ok_or_else(|| Error::ParameterPole("anti-pencil parameter pole".into()))
}

/// The Hesse cubic x^3 + y^3 + z^3 - 3 lambda xyz.
pub fn hesse_cubic<R: Ring>(ring: &R, lambda: &R::Elem) -> TernaryForm<R> {
    let r = ring.clone();
    TernaryForm::from_coeffs(
        r.clone(),
        VarSpace::Primal,
        3,
        [
            ([3, 0, 0], r.one()),
            ([0, 3, 0], r.one()),
            ([0, 0, 3], r.one()),
            ([1, 1, 1], r.mul(&r.from_i64(-3), lambda)),
        ],
    )
}

/// The three displayed companions of the Hesse cubic.
pub struct HesseSpecialization<F: Field> {
    pub he: TernaryForm<F>,
    pub ca: TernaryForm<F>,
    pub f0: TernaryForm<F>,
}

/// He: x^3+y^3+z^3 = ((4-l^3)/l^2) xyz; Ca: xi^3+eta^3+zeta^3 =
/// ((l^3+2)/l) xi eta zeta; F0: xi^3+eta^3+zeta^3 = -(6/l) xi eta zeta.
pub fn hesse_specialization<F: Field>(ring: &F, lambda: &F::Elem) -> Result<HesseSpecialization<F>> {
    let r = ring.clone();
    if r.is_zero(lambda) {
        return Err(Error::SingularInput("lambda = 0 (division by lambda in the displays)".into()));
    }
    let l3 = r.mul(lambda, &r.mul(lambda, lambda));
    let sym = |space: VarSpace, coeff: F::Elem| {
        TernaryForm::from_coeffs(
            r.clone(),
            space,
            3,
            [
                ([3, 0, 0], r.one()),
                ([0, 3, 0], r.one()),
                ([0, 0, 3], r.one()),
                ([1, 1, 1], coeff),
            ],
        )
    };
    let he_coeff = r
        .div(&r.sub(&r.from_i64(4), &l3), &r.mul(lambda, lambda))
        .expect("lambda nonzero");
    let ca_coeff = r.div(&r.add(&l3, &r.from_i64(2)), lambda).expect("lambda nonzero");
    let f0_coeff = r.div(&r.from_i64(6), lambda).expect("lambda nonzero");
    Ok(HesseSpecialization {
        he: sym(VarSpace::Primal, r.neg(&he_coeff)),
        ca: sym(VarSpace::Dual, r.neg(&ca_coeff)),
        f0: sym(VarSpace::Dual, f0_coeff),
    })
}
