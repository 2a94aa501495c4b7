//! Homogeneous polynomials in X, Y, Z and the plane curves they define.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Felt, FieldCtx};
use crate::linalg::{self, Mat3};
use crate::plane::{enumerate_lines, enumerate_points, ProjLine, ProjPoint};

/// Exponents of X, Y, Z.
pub type Monomial = [u32; 3];

/// All monomials of degree `d`, in ascending lexicographic order.
pub fn monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for i in 0..=d {
        for j in 0..=d - i {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// A homogeneous polynomial, possibly zero, of a fixed degree.
#[derive(Clone)]
pub struct HomPoly {
    ctx: Arc<FieldCtx>,
    degree: u32,
    terms: BTreeMap<Monomial, Felt>,
}

impl PartialEq for HomPoly {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.terms == other.terms && *self.ctx == *other.ctx
    }
}

impl Eq for HomPoly {}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly(deg {}, q={}: {})", self.degree, self.ctx.q(), self)
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            if c.0 != 1 || m.iter().all(|&e| e == 0) {
                factors.push(c.to_string());
            }
            for (name, &e) in ["X", "Y", "Z"].iter().zip(m) {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl HomPoly {
    pub fn zero(ctx: Arc<FieldCtx>, degree: u32) -> HomPoly {
        HomPoly { ctx, degree, terms: BTreeMap::new() }
    }

    /// Sums repeated monomials and drops zero coefficients.
    pub fn from_terms<I>(ctx: Arc<FieldCtx>, degree: u32, terms: I) -> Result<HomPoly>
    where
        I: IntoIterator<Item = (Monomial, Felt)>,
    {
        let mut out = HomPoly::zero(ctx, degree);
        for (m, c) in terms {
            let got: u32 = m.iter().sum();
            if got != degree {
                return Err(Error::Inhomogeneous { exps: m, got, expected: degree });
            }
            out.ctx.element(c.0)?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: Felt) {
        if c.is_zero() {
            return;
        }
        let ctx = &self.ctx;
        let entry = self.terms.entry(m).or_insert(Felt::ZERO);
        *entry = ctx.add(*entry, c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Felt> {
        &self.terms
    }

    pub fn coeff(&self, m: Monomial) -> Felt {
        self.terms.get(&m).copied().unwrap_or(Felt::ZERO)
    }

    pub fn evaluate(&self, v: [Felt; 3]) -> Felt {
        let ctx = &*self.ctx;
        let d = self.degree as usize;
        let pows: Vec<Vec<Felt>> = v
            .iter()
            .map(|&x| {
                let mut p = Vec::with_capacity(d + 1);
                let mut acc = Felt::ONE;
                for _ in 0..=d {
                    p.push(acc);
                    acc = ctx.mul(acc, x);
                }
                p
            })
            .collect();
        self.terms.iter().fold(Felt::ZERO, |acc, (m, &c)| {
            let t = ctx.mul(
                c,
                ctx.mul(pows[0][m[0] as usize], ctx.mul(pows[1][m[1] as usize], pows[2][m[2] as usize])),
            );
            ctx.add(acc, t)
        })
    }

    pub fn scale(&self, s: Felt) -> HomPoly {
        let ctx = self.ctx.clone();
        let terms = self
            .terms
            .iter()
            .map(|(&m, &c)| (m, ctx.mul(s, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        HomPoly { ctx, degree: self.degree, terms }
    }

    fn same_field(&self, other: &HomPoly) -> Result<()> {
        if *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly> {
        self.same_field(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Inhomogeneous { exps: [0; 3], got: other.degree, expected: self.degree });
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = HomPoly { ctx: self.ctx.clone(), degree, terms: self.terms.clone() };
        for (&m, &c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomPoly) -> Result<HomPoly> {
        self.add(&other.scale(self.ctx.neg(Felt::ONE)))
    }

    pub fn mul(&self, other: &HomPoly) -> Result<HomPoly> {
        self.same_field(other)?;
        let ctx = &self.ctx;
        let mut out = HomPoly::zero(ctx.clone(), self.degree + other.degree);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ctx.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// Formal partial derivative along `axis` (0 = X, 1 = Y, 2 = Z), with
    /// integer factors reduced mod p. The result may be zero.
    pub fn partial(&self, axis: usize) -> HomPoly {
        let ctx = self.ctx.clone();
        let mut out = HomPoly::zero(ctx.clone(), self.degree.saturating_sub(1));
        for (&m, &c) in &self.terms {
            if m[axis] == 0 {
                continue;
            }
            let mut dm = m;
            dm[axis] -= 1;
            out.add_term(dm, ctx.scale_int(m[axis] as u64, c));
        }
        out
    }

    /// The substitution `F(X,Y,Z) -> F(M·(X,Y,Z))`, so that
    /// `compose(M).evaluate(v) == evaluate(M·v)`.
    pub fn compose(&self, m: &Mat3) -> HomPoly {
        let ctx = &self.ctx;
        let d = self.degree;
        let linear: Vec<HomPoly> = m
            .iter()
            .map(|row| {
                HomPoly::from_terms(
                    ctx.clone(),
                    1,
                    [([1, 0, 0], row[0]), ([0, 1, 0], row[1]), ([0, 0, 1], row[2])],
                )
                .expect("degree one")
            })
            .collect();
        let one = HomPoly::from_terms(ctx.clone(), 0, [([0, 0, 0], Felt::ONE)]).expect("constant");
        let powers: Vec<Vec<HomPoly>> = linear
            .iter()
            .map(|l| {
                let mut v = vec![one.clone()];
                for e in 1..=d as usize {
                    let next = v[e - 1].mul(l).expect("same field");
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = HomPoly::zero(ctx.clone(), d);
        for (mono, &c) in &self.terms {
            let t = powers[0][mono[0] as usize]
                .mul(&powers[1][mono[1] as usize])
                .and_then(|t| t.mul(&powers[2][mono[2] as usize]))
                .expect("same field");
            for (&m2, &c2) in &t.terms {
                out.add_term(m2, ctx.mul(c, c2));
            }
        }
        out
    }

    /// Moves the coefficients into `big` through an embedding table.
    pub fn embed(&self, big: &Arc<FieldCtx>, table: &[Felt]) -> HomPoly {
        HomPoly {
            ctx: big.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(&m, &c)| (m, table[c.0 as usize])).collect(),
        }
    }

    /// Scales so that the lexicographically first term has coefficient 1.
    pub fn canonical(&self) -> HomPoly {
        match self.terms.values().next() {
            Some(&lead) => self.scale(self.ctx.inv(lead).expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Remainder of `self` on division by `f`, where `f` has a nonzero
    /// `Z^deg f` coefficient. The remainder has Z-degree below `deg f`.
    fn rem_monic_z(&self, f: &HomPoly) -> HomPoly {
        let ctx = self.ctx.clone();
        let d = f.degree;
        let lead = f.coeff([0, 0, d]);
        let lead_inv = ctx.inv(lead).expect("f is monic in Z");
        let mut r = self.clone();
        loop {
            let top = r
                .terms
                .iter()
                .filter(|(m, _)| m[2] >= d)
                .max_by_key(|(m, _)| (m[2], m[0]))
                .map(|(&m, &c)| (m, c));
            let Some((m, c)) = top else { break };
            let factor = ctx.neg(ctx.mul(c, lead_inv));
            let shift = [m[0], m[1], m[2] - d];
            for (&fm, &fc) in &f.terms {
                r.add_term([fm[0] + shift[0], fm[1] + shift[1], fm[2] + shift[2]], ctx.mul(factor, fc));
            }
            debug_assert!(r.coeff(m).is_zero());
        }
        r
    }
}

/// A plane curve: a nonzero homogeneous polynomial of degree at least 1.
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    poly: HomPoly,
}

impl fmt::Debug for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneCurve(d={}, q={}: {})", self.degree(), self.ctx().q(), self.poly)
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl PlaneCurve {
    pub fn new(ctx: Arc<FieldCtx>, d: u32, terms: &[(Monomial, Felt)]) -> Result<PlaneCurve> {
        let poly = HomPoly::from_terms(ctx, d, terms.iter().copied())?;
        PlaneCurve::from_poly(poly)
    }

    pub fn from_poly(poly: HomPoly) -> Result<PlaneCurve> {
        if poly.degree == 0 {
            return Err(Error::DegreeTooSmall);
        }
        if poly.is_zero() {
            return Err(Error::EmptyCurve);
        }
        Ok(PlaneCurve { poly })
    }

    /// Builds a curve from a dense coefficient vector over [`monomials`]`(d)`.
    pub fn from_coeffs(ctx: Arc<FieldCtx>, d: u32, coeffs: &[Felt]) -> Result<PlaneCurve> {
        let monos = monomials(d);
        assert_eq!(monos.len(), coeffs.len(), "one coefficient per monomial");
        let poly = HomPoly::from_terms(ctx, d, monos.into_iter().zip(coeffs.iter().copied()))?;
        PlaneCurve::from_poly(poly)
    }

    pub fn poly(&self) -> &HomPoly {
        &self.poly
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.poly.ctx
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Felt> {
        &self.poly.terms
    }

    /// Dense coefficient vector over [`monomials`]`(d)`.
    pub fn coeff_vector(&self) -> Vec<Felt> {
        monomials(self.degree()).into_iter().map(|m| self.poly.coeff(m)).collect()
    }

    pub fn canonical(&self) -> PlaneCurve {
        PlaneCurve { poly: self.poly.canonical() }
    }

    /// Equality up to a nonzero scalar.
    pub fn same_curve(&self, other: &PlaneCurve) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn evaluate(&self, p: &ProjPoint) -> Result<Felt> {
        for x in p.coords() {
            self.ctx().element(x.0)?;
        }
        Ok(self.poly.evaluate(p.coords()))
    }

    /// `F(P) == 0`.
    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.poly.evaluate(p.coords()).is_zero()
    }

    /// `(F_X, F_Y, F_Z)`; any of them may be the zero polynomial.
    pub fn partials(&self) -> [HomPoly; 3] {
        [0, 1, 2].map(|a| self.poly.partial(a))
    }

    /// `F∘M`; fails when `M` is singular.
    pub fn transform(&self, m: &Mat3) -> Result<PlaneCurve> {
        let ctx = self.ctx();
        for row in m {
            for x in row {
                ctx.element(x.0)?;
            }
        }
        if linalg::det(ctx, m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        PlaneCurve::from_poly(self.poly.compose(m))
    }

    /// `g(s,t) = F(sP + tQ)`.
    pub fn restrict_to_line(&self, p: &ProjPoint, q: &ProjPoint) -> Result<BinaryForm> {
        if p == q {
            return Err(Error::EqualArguments);
        }
        for x in p.coords().into_iter().chain(q.coords()) {
            self.ctx().element(x.0)?;
        }
        Ok(restrict(&self.poly, p.coords(), q.coords()))
    }

    /// A rational line dividing F, if any.
    pub fn has_linear_component(&self) -> Option<ProjLine> {
        let ctx = self.ctx();
        enumerate_lines(ctx).into_iter().find(|l| self.contains_line(l))
    }

    /// Whether the line `l` is a component of this curve.
    pub fn contains_line(&self, l: &ProjLine) -> bool {
        let ctx = self.ctx();
        let pts = l.points(ctx);
        // Vanishing at every rational point of l is necessary; the restriction decides.
        if !pts.iter().all(|p| self.contains(p)) {
            return false;
        }
        if (self.degree() as usize) < pts.len() {
            return true;
        }
        restrict(&self.poly, pts[0].coords(), pts[1].coords()).is_zero()
    }

    /// `X^q F_X + Y^q F_Y + Z^q F_Z`, of degree `q + d - 1`; may be zero.
    pub fn frobenius_form(&self) -> HomPoly {
        let ctx = self.ctx().clone();
        let q = ctx.q();
        let mut out = HomPoly::zero(ctx.clone(), q + self.degree() - 1);
        for (axis, part) in self.partials().iter().enumerate() {
            for (&m, &c) in &part.terms {
                let mut shifted = m;
                shifted[axis] += q;
                out.add_term(shifted, c);
            }
        }
        out
    }
}

fn restrict(f: &HomPoly, p: [Felt; 3], q: [Felt; 3]) -> BinaryForm {
    let ctx = &*f.ctx;
    let d = f.degree as usize;
    // (p_a + t q_a)^e as polynomials in t.
    let powers: Vec<Vec<Vec<Felt>>> = (0..3)
        .map(|a| {
            let mut v: Vec<Vec<Felt>> = vec![vec![Felt::ONE]];
            for e in 1..=d {
                let prev = &v[e - 1];
                let mut next = vec![Felt::ZERO; e + 1];
                for (i, &c) in prev.iter().enumerate() {
                    next[i] = ctx.add(next[i], ctx.mul(c, p[a]));
                    next[i + 1] = ctx.add(next[i + 1], ctx.mul(c, q[a]));
                }
                v.push(next);
            }
            v
        })
        .collect();
    let mut coeffs = vec![Felt::ZERO; d + 1];
    for (m, &c) in &f.terms {
        let a = &powers[0][m[0] as usize];
        let b = &powers[1][m[1] as usize];
        let z = &powers[2][m[2] as usize];
        for (i, &ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, &cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let ab = ctx.mul(c, ctx.mul(ca, cb));
                for (k, &cz) in z.iter().enumerate() {
                    let idx = i + j + k;
                    coeffs[idx] = ctx.add(coeffs[idx], ctx.mul(ab, cz));
                }
            }
        }
    }
    BinaryForm { degree: f.degree, coeffs }
}

/// A binary form `g(s,t) = Σ coeffs[j] s^(d-j) t^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: u32,
    pub coeffs: Vec<Felt>,
}

impl BinaryForm {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Order of vanishing at `(s,t) = (1,0)`, or `None` for the zero form.
    pub fn order_at_first_point(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| i as u32)
    }
}

/// `curve_make`: a validated curve from explicit terms.
pub fn curve_make(ctx: Arc<FieldCtx>, d: u32, terms: &[(Monomial, Felt)]) -> Result<PlaneCurve> {
    PlaneCurve::new(ctx, d, terms)
}

/// Whether `f` divides `g` in F_q[X,Y,Z].
///
/// Moves a point where `f` does not vanish to `(0,0,1)`, which makes `f`
/// monic in Z, then reduces `g` by `f` as a polynomial in Z. When `f`
/// vanishes on all of P²(F_q) the point is taken over GF(q^m), m = 2, 3, ...
pub fn divides(f: &HomPoly, g: &HomPoly) -> Result<bool> {
    f.same_field(g)?;
    if f.is_zero() {
        return Err(Error::EmptyCurve);
    }
    if g.is_zero() || f.degree == 0 {
        return Ok(true);
    }
    if g.degree < f.degree {
        return Ok(false);
    }
    let ctx = f.ctx.clone();
    if let Some(p) = enumerate_points(&ctx).into_iter().find(|p| !f.evaluate(p.coords()).is_zero()) {
        return Ok(divides_at(f, g, p.coords()));
    }
    for m in 2.. {
        let big = Arc::new(ctx.extension(m)?);
        let table = ctx.embedding_into(&big)?;
        let (fe, ge) = (f.embed(&big, &table), g.embed(&big, &table));
        let found = (0..crate::plane::plane_size(big.q()))
            .map(|i| ProjPoint::from_index(big.q(), i))
            .find(|p| !fe.evaluate(p.coords()).is_zero());
        if let Some(p) = found {
            return Ok(divides_at(&fe, &ge, p.coords()));
        }
    }
    unreachable!("a nonzero form does not vanish on every plane over every extension")
}

fn divides_at(f: &HomPoly, g: &HomPoly, p: [Felt; 3]) -> bool {
    let m = completing_matrix(p);
    let ft = f.compose(&m);
    let gt = g.compose(&m);
    gt.rem_monic_z(&ft).is_zero()
}

/// An invertible matrix whose third column is `p` (normalized, so its first
/// nonzero entry is 1); the other columns are unit vectors.
fn completing_matrix(p: [Felt; 3]) -> Mat3 {
    let pivot = p.iter().position(|x| !x.is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let mut m = [[Felt::ZERO; 3]; 3];
    m[others[0]][0] = Felt::ONE;
    m[others[1]][1] = Felt::ONE;
    for i in 0..3 {
        m[i][2] = p[i];
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::enumerate_points;

    fn gf(q: u32) -> Arc<FieldCtx> {
        FieldCtx::of_order(q).unwrap()
    }

    fn curve(ctx: &Arc<FieldCtx>, d: u32, terms: &[([u32; 3], u32)]) -> PlaneCurve {
        let t: Vec<_> = terms.iter().map(|&(m, c)| (m, Felt(c))).collect();
        PlaneCurve::new(ctx.clone(), d, &t).unwrap()
    }

    fn poly(ctx: &Arc<FieldCtx>, d: u32, terms: &[([u32; 3], u32)]) -> HomPoly {
        HomPoly::from_terms(ctx.clone(), d, terms.iter().map(|&(m, c)| (m, Felt(c)))).unwrap()
    }

    fn quartic() -> PlaneCurve {
        let ctx = gf(4);
        curve(
            &ctx,
            4,
            &[
                ([4, 0, 0], 1),
                ([0, 4, 0], 1),
                ([0, 0, 4], 1),
                ([2, 2, 0], 1),
                ([0, 2, 2], 1),
                ([2, 0, 2], 1),
                ([2, 1, 1], 1),
                ([1, 2, 1], 1),
                ([1, 1, 2], 1),
            ],
        )
    }

    #[test]
    fn make_validates() {
        let c2 = gf(2);
        let err = PlaneCurve::new(c2.clone(), 2, &[([2, 0, 0], Felt(1)), ([0, 1, 0], Felt(1))]);
        assert!(matches!(err, Err(Error::Inhomogeneous { got: 1, .. })));
        assert_eq!(PlaneCurve::new(c2.clone(), 2, &[]), Err(Error::EmptyCurve));
        // 1 + 1 cancels in characteristic 2.
        let cancel = PlaneCurve::new(c2, 1, &[([1, 0, 0], Felt(1)), ([1, 0, 0], Felt(1))]);
        assert_eq!(cancel, Err(Error::EmptyCurve));
        let line = curve(&gf(3), 1, &[([0, 0, 1], 1)]);
        assert_eq!(line.degree(), 1);
        assert_eq!(quartic().terms().len(), 9);
    }

    #[test]
    fn evaluation_examples() {
        let f = quartic();
        let ctx = f.ctx().clone();
        let one = ProjPoint::from_u32(&ctx, [1, 1, 1]).unwrap();
        assert_eq!(f.evaluate(&one).unwrap(), Felt(1));
        let z = curve(&ctx, 1, &[([0, 0, 1], 1)]);
        assert_eq!(z.evaluate(&ProjPoint::from_u32(&ctx, [1, 0, 0]).unwrap()).unwrap(), Felt(0));
        for q in [2, 3, 4, 5, 7] {
            let ctx = gf(q);
            let m1 = ctx.neg(Felt::ONE).0;
            let f = curve(&ctx, q, &[([q, 0, 0], 1), ([1, 0, q - 1], m1), ([0, q - 1, 1], 1), ([0, 0, q], m1)]);
            assert!(f.contains(&ProjPoint::from_u32(&ctx, [0, 1, 0]).unwrap()));
        }
    }

    #[test]
    fn partial_examples() {
        let c2 = gf(2);
        let sq = curve(&c2, 2, &[([2, 0, 0], 1)]);
        assert!(sq.partials()[0].is_zero());
        let c5 = gf(5);
        let xyz = curve(&c5, 3, &[([1, 1, 1], 1)]);
        let [fx, fy, fz] = xyz.partials();
        assert_eq!(fx, poly(&c5, 2, &[([0, 1, 1], 1)]));
        assert_eq!(fy, poly(&c5, 2, &[([1, 0, 1], 1)]));
        assert_eq!(fz, poly(&c5, 2, &[([1, 1, 0], 1)]));
        let c4 = gf(4);
        let herm = curve(&c4, 3, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]);
        assert_eq!(herm.partials()[1], poly(&c4, 2, &[([0, 2, 0], 1)]));
    }

    #[test]
    fn euler_relation() {
        for q in [2, 3, 4, 5, 9] {
            let ctx = gf(q);
            for d in 1..=5u32 {
                let coeffs: Vec<Felt> =
                    (0..monomials(d).len()).map(|i| Felt(((i * 7 + 3) % q as usize) as u32)).collect();
                let Ok(f) = PlaneCurve::from_coeffs(ctx.clone(), d, &coeffs) else { continue };
                let [fx, fy, fz] = f.partials();
                let x = poly(&ctx, 1, &[([1, 0, 0], 1)]);
                let y = poly(&ctx, 1, &[([0, 1, 0], 1)]);
                let z = poly(&ctx, 1, &[([0, 0, 1], 1)]);
                let lhs = x
                    .mul(&fx)
                    .unwrap()
                    .add(&y.mul(&fy).unwrap())
                    .unwrap()
                    .add(&z.mul(&fz).unwrap())
                    .unwrap();
                let rhs = f.poly().scale(ctx.from_int(d as i64));
                assert_eq!(lhs.terms(), rhs.terms(), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let c5 = gf(5);
        let conic = curve(&c5, 2, &[([0, 1, 1], 1), ([2, 0, 0], 4)]);
        let p = ProjPoint::from_u32(&c5, [0, 0, 1]).unwrap();
        let q = ProjPoint::from_u32(&c5, [0, 1, 0]).unwrap();
        // F(0, t, s) = st.
        let g = conic.restrict_to_line(&p, &q).unwrap();
        assert_eq!(g.coeffs, vec![Felt(0), Felt(1), Felt(0)]);
        assert_eq!(conic.restrict_to_line(&p, &p), Err(Error::EqualArguments));
        let z = curve(&c5, 1, &[([0, 0, 1], 1)]);
        let a = ProjPoint::from_u32(&c5, [1, 0, 0]).unwrap();
        let b = ProjPoint::from_u32(&c5, [1, 3, 0]).unwrap();
        assert!(z.restrict_to_line(&a, &b).unwrap().is_zero());
        let c2 = gf(2);
        let fermat = curve(&c2, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
        let g = fermat
            .restrict_to_line(&ProjPoint::from_u32(&c2, [1, 0, 0]).unwrap(), &ProjPoint::from_u32(&c2, [0, 1, 1]).unwrap())
            .unwrap();
        assert_eq!(g.coeffs.len(), 5);
    }

    #[test]
    fn divisibility_examples() {
        let c2 = gf(2);
        let xy = poly(&c2, 1, &[([1, 0, 0], 1), ([0, 1, 0], 1)]);
        let sq = poly(&c2, 2, &[([2, 0, 0], 1), ([0, 2, 0], 1)]);
        assert!(divides(&xy, &sq).unwrap());
        let c3 = gf(3);
        let x = poly(&c3, 1, &[([1, 0, 0], 1)]);
        let yz = poly(&c3, 2, &[([0, 1, 1], 1)]);
        assert!(!divides(&x, &yz).unwrap());
        let f = quartic();
        let x4 = poly(f.ctx(), 4, &[([4, 0, 0], 1)]);
        let g = x4.mul(f.poly()).unwrap();
        assert!(divides(f.poly(), &g).unwrap());
        assert!(!divides(&g, f.poly()).unwrap());
        assert_eq!(divides(&HomPoly::zero(c3.clone(), 1), &yz), Err(Error::EmptyCurve));
    }

    #[test]
    fn divides_over_extension_when_rational_points_exhausted() {
        // The product of the seven lines of the Fano plane vanishes on all of P²(F_2).
        let c2 = gf(2);
        let lines = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]];
        let mut f = poly(&c2, 0, &[([0, 0, 0], 1)]);
        for l in lines {
            let lin = poly(&c2, 1, &[([1, 0, 0], l[0]), ([0, 1, 0], l[1]), ([0, 0, 1], l[2])]);
            f = f.mul(&lin).unwrap();
        }
        assert!(enumerate_points(&c2).iter().all(|p| f.evaluate(p.coords()).is_zero()));
        let z = poly(&c2, 1, &[([0, 0, 1], 1)]);
        let g = f.mul(&z).unwrap();
        assert!(divides(&f, &g).unwrap());
        let h = f.mul(&f).unwrap().add(&poly(&c2, 14, &[([14, 0, 0], 1)])).unwrap();
        assert!(!divides(&f, &h).unwrap());
    }

    #[test]
    fn linear_components() {
        let c3 = gf(3);
        let f = curve(&c3, 3, &[([1, 1, 1], 1), ([3, 0, 0], 2)]);
        assert_eq!(f.has_linear_component(), Some(ProjLine::from_u32(&c3, [1, 0, 0]).unwrap()));
        assert_eq!(quartic().has_linear_component(), None);
        for q in [2, 3, 4, 5] {
            let ctx = gf(q);
            let m1 = ctx.neg(Felt::ONE).0;
            let f = curve(&ctx, q + 1, &[([q, 1, 0], 1), ([1, q, 0], m1)]);
            let lines: Vec<_> = enumerate_lines(&ctx).into_iter().filter(|l| f.contains_line(l)).collect();
            assert_eq!(lines.len(), q as usize + 1);
        }
        // Degree q+1 curve containing all rational points of Z=0 but not the line.
        let c2 = gf(2);
        let f = curve(&c2, 3, &[([2, 1, 0], 1), ([1, 2, 0], 1), ([0, 0, 3], 1)]);
        let z0 = ProjLine::from_u32(&c2, [0, 0, 1]).unwrap();
        assert!(z0.points(&c2).iter().all(|p| f.contains(p)));
        assert!(!f.contains_line(&z0));
    }

    #[test]
    fn transform_examples() {
        let f = quartic();
        let ctx = f.ctx().clone();
        assert_eq!(f.transform(&linalg::identity()).unwrap(), f);
        let z = curve(&ctx, 1, &[([0, 0, 1], 1)]);
        let swap = [[0, 0, 1], [0, 1, 0], [1, 0, 0]].map(|r| r.map(Felt));
        assert_eq!(z.transform(&swap).unwrap(), curve(&ctx, 1, &[([1, 0, 0], 1)]));
        let singular = [[1, 0, 0], [1, 0, 0], [0, 0, 1]].map(|r| r.map(Felt));
        assert_eq!(f.transform(&singular), Err(Error::SingularMatrix));
        let m = [[1, 2, 0], [3, 1, 1], [0, 2, 1]].map(|r| r.map(Felt));
        let g = f.transform(&m).unwrap();
        for p in enumerate_points(&ctx) {
            let mp = ProjPoint::new(&ctx, linalg::mul_vec(&ctx, &m, p.coords())).unwrap();
            assert_eq!(g.contains(&p), f.contains(&mp));
            assert_eq!(g.poly().evaluate(p.coords()), f.poly().evaluate(linalg::mul_vec(&ctx, &m, p.coords())));
        }
        let back = g.transform(&linalg::inverse(&ctx, &m).unwrap()).unwrap();
        assert!(back.same_curve(&f));
    }

    #[test]
    fn frobenius_form_examples() {
        let c2 = gf(2);
        assert!(curve(&c2, 2, &[([2, 0, 0], 1)]).frobenius_form().is_zero());
        let c4 = gf(4);
        let herm = curve(&c4, 3, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]);
        let g = herm.frobenius_form();
        assert_eq!(g, herm.poly().mul(herm.poly()).unwrap());
        assert!(divides(herm.poly(), &g).unwrap());
        let c9 = gf(9);
        let m1 = c9.neg(Felt::ONE).0;
        let conic = curve(&c9, 2, &[([0, 1, 1], 1), ([2, 0, 0], m1)]);
        assert!(!divides(conic.poly(), &conic.frobenius_form()).unwrap());
    }
}
