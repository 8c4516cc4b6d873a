use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Ring;

/// Which projective plane the form lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarSpace {
    /// (x : y : z)
    Primal,
    /// (xi : eta : zeta), the dual plane
    Dual,
    /// (xi' : eta' : zeta'), the dual plane after the primed change of variables
    DualPrimed,
}

impl VarSpace {
    pub fn var_names(self) -> [&'static str; 3] {
        match self {
            VarSpace::Primal => ["x", "y", "z"],
            VarSpace::Dual => ["xi", "eta", "zeta"],
            VarSpace::DualPrimed => ["xi'", "eta'", "zeta'"],
        }
    }
}

/// Homogeneous polynomial of fixed degree in three variables. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryForm<R: Ring> {
    ring: R,
    space: VarSpace,
    degree: u32,
    coeffs: BTreeMap<[u32; 3], R::Elem>,
}

impl<R: Ring> TernaryForm<R> {
    pub fn zero(ring: R, space: VarSpace, degree: u32) -> Self {
        TernaryForm { ring, space, degree, coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs<I>(ring: R, space: VarSpace, degree: u32, entries: I) -> Self
    where
        I: IntoIterator<Item = ([u32; 3], R::Elem)>,
    {
        let mut f = Self::zero(ring, space, degree);
        for (m, c) in entries {
            f.add_term(m, c);
        }
        f
    }

    /// Build a degree-3 form from integer coefficients; convenient for the
    /// displayed equations.
    pub fn cubic_i64(ring: R, space: VarSpace, terms: &[([u32; 3], i64)]) -> Self {
        let entries: Vec<_> =
            terms.iter().map(|&(m, c)| (m, ring.from_i64(c))).collect();
        Self::from_coeffs(ring, space, 3, entries)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn with_space(mut self, space: VarSpace) -> Self {
        self.space = space;
        self
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: [u32; 3]) -> R::Elem {
        self.coeffs.get(&m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Terms in descending lexicographic monomial order (x before y before z,
    /// highest exponents first) — the canonical print order.
    pub fn terms_desc(&self) -> impl Iterator<Item = ([u32; 3], &R::Elem)> {
        self.coeffs.iter().rev().map(|(m, c)| (*m, c))
    }

    fn add_term(&mut self, m: [u32; 3], c: R::Elem) {
        debug_assert_eq!(m[0] + m[1] + m[2], self.degree, "exponents must sum to degree");
        if self.ring.is_zero(&c) {
            return;
        }
        match self.coeffs.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.ring.add(e.get(), &c);
                if self.ring.is_zero(&s) {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::WrongDegree { expected: self.degree, got: other.degree });
        }
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(m, c)| (*m, self.ring.neg(c))).collect();
        TernaryForm { ring: self.ring.clone(), space: self.space, degree: self.degree, coeffs }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.space, self.degree);
        for (m, a) in &self.coeffs {
            out.add_term(*m, self.ring.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out =
            Self::zero(self.ring.clone(), self.space, self.degree + other.degree);
        for (m, a) in &self.coeffs {
            for (n, b) in &other.coeffs {
                out.add_term(
                    [m[0] + n[0], m[1] + n[1], m[2] + n[2]],
                    self.ring.mul(a, b),
                );
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_coeffs(
            self.ring.clone(),
            self.space,
            0,
            [([0, 0, 0], self.ring.one())],
        );
        for _ in 0..e {
            acc = acc.mul(self).expect("same space");
        }
        acc
    }

    /// Evaluate at a coordinate vector. Scaling the vector by lambda scales
    /// the value by lambda^degree.
    pub fn eval(&self, v: &[R::Elem; 3]) -> R::Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        for (m, c) in &self.coeffs {
            let mut term = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    term = r.mul(&term, &v[i]);
                }
            }
            acc = r.add(&acc, &term);
        }
        acc
    }

    /// Partial derivative with respect to variable `var` (0, 1 or 2).
    pub fn partial(&self, var: usize) -> Self {
        let r = self.ring.clone();
        let mut out = Self::zero(r.clone(), self.space, self.degree.saturating_sub(1));
        for (m, c) in &self.coeffs {
            if m[var] == 0 {
                continue;
            }
            let mut n = *m;
            n[var] -= 1;
            out.add_term(n, r.mul(c, &r.from_i64(m[var] as i64)));
        }
        out
    }

    /// Directional derivative along the vector a (the polar operator with
    /// k = 1 applied with a as a fixed vector).
    pub fn nabla(&self, a: &[R::Elem; 3]) -> Self {
        let r = self.ring.clone();
        let mut out = Self::zero(r.clone(), self.space, self.degree.saturating_sub(1));
        for var in 0..3 {
            if r.is_zero(&a[var]) {
                continue;
            }
            let p = self.partial(var).scale(&a[var]);
            for (m, c) in &p.coeffs {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    pub fn gradient(&self, v: &[R::Elem; 3]) -> [R::Elem; 3] {
        [self.partial(0).eval(v), self.partial(1).eval(v), self.partial(2).eval(v)]
    }

    /// Substitute each variable by a linear form in new variables;
    /// `rows[i]` holds the coefficients of the form replacing variable i.
    pub fn substitute_linear(&self, rows: &[[R::Elem; 3]; 3], space: VarSpace) -> Self {
        let r = self.ring.clone();
        let lin: Vec<Self> = (0..3)
            .map(|i| {
                Self::from_coeffs(
                    r.clone(),
                    space,
                    1,
                    [
                        ([1, 0, 0], rows[i][0].clone()),
                        ([0, 1, 0], rows[i][1].clone()),
                        ([0, 0, 1], rows[i][2].clone()),
                    ],
                )
            })
            .collect();
        let mut out = Self::zero(r.clone(), space, self.degree);
        for (m, c) in &self.coeffs {
            let mut term = Self::from_coeffs(r.clone(), space, 0, [([0, 0, 0], c.clone())]);
            for (i, &e) in m.iter().enumerate() {
                term = term.mul(&lin[i].pow(e)).expect("same space");
            }
            for (n, d) in &term.coeffs {
                out.add_term(*n, d.clone());
            }
        }
        out
    }

    /// Canonical representative of the form up to scalar: over Q and
    /// Q[A,B] integer coefficients with content one and positive leading
    /// coefficient, over finite fields leading coefficient one. The lead is
    /// the first nonzero coefficient in descending lexicographic order.
    pub fn canonicalize(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let ordered: Vec<&R::Elem> = self.coeffs.values().rev().collect();
        let s = self.ring.canonical_scale(&ordered);
        Ok(self.scale(&s))
    }

    /// Whether other = lambda * self for some nonzero lambda.
    pub fn proportional_to(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        match (self.canonicalize(), other.canonicalize()) {
            (Ok(a), Ok(b)) => a.coeffs == b.coeffs && a.space == b.space,
            _ => false,
        }
    }

    /// Exact division by a linear form; errors when the division leaves a
    /// remainder. Used to split a degenerate conic off a known line.
    pub fn div_exact_linear(&self, lin: &Self) -> Result<Self> {
        if lin.degree != 1 {
            return Err(Error::WrongDegree { expected: 1, got: lin.degree });
        }
        if self.space != lin.space {
            return Err(Error::SpaceMismatch);
        }
        let r = self.ring.clone();
        // pivot: variable with invertible coefficient in lin
        let mut pivot = None;
        for var in 0..3 {
            let mut m = [0u32; 3];
            m[var] = 1;
            let c = lin.coeff(m);
            if let Some(ci) = r.inv(&c) {
                pivot = Some((var, ci));
                break;
            }
        }
        let (var, pivot_inv) =
            pivot.ok_or_else(|| Error::DegenerateMap("linear form has no unit coefficient".into()))?;
        let mut rem = self.clone();
        let mut quo = Self::zero(r.clone(), self.space, self.degree - 1);
        // eliminate highest powers of the pivot variable first
        while let Some((&m, _)) = rem.coeffs.iter().rev().find(|(m, _)| m[var] > 0) {
            let c = rem.coeff(m);
            let mut qm = m;
            qm[var] -= 1;
            let qc = r.mul(&c, &pivot_inv);
            quo.add_term(qm, qc.clone());
            let qterm = Self::from_coeffs(r.clone(), self.space, self.degree - 1, [(qm, qc)]);
            rem = rem.sub(&qterm.mul(lin)?)?;
        }
        if !rem.is_zero() {
            return Err(Error::DegenerateMap("linear form does not divide the form".into()));
        }
        Ok(quo)
    }

    /// Canonical polynomial string: descending monomials, explicit +/-,
    /// `c*x^i*y^j*z^k` with unit coefficients omitted.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let names = self.space.var_names();
        let r = &self.ring;
        let one = r.one();
        let mut out = String::new();
        for (m, c) in self.terms_desc() {
            // render "- c" when the formatted coefficient starts with '-'
            let cs = r.fmt_elem(c);
            let (sign_neg, mag_str) = if let Some(stripped) = cs.strip_prefix('-') {
                (true, stripped.to_string())
            } else {
                (false, cs)
            };
            if out.is_empty() {
                if sign_neg {
                    out.push('-');
                }
            } else {
                out.push_str(if sign_neg { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            let is_unit_mag = mag_str == r.fmt_elem(&one);
            if !is_unit_mag || m == [0, 0, 0] {
                parts.push(mag_str);
            }
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(names[i].to_string()),
                    _ => parts.push(format!("{}^{}", names[i], e)),
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}
