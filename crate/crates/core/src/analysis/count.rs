use std::sync::Arc;

use serde::Serialize;

use crate::curve::{monomials, Monomial, PlaneCurve};
use crate::field::{Felt, FieldCtx};
use crate::par::{map_ranges, Parallelism};
use crate::plane::{enumerate_lines, plane_size, PointSet, ProjLine, ProjPoint};

use super::singular_rational_points;

/// Rational points of a curve and its rational-level classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub points: PointSet,
    pub rational_singular: PointSet,
    pub linear_component: Option<ProjLine>,
}

impl CountReport {
    pub fn has_linear_component(&self) -> bool {
        self.linear_component.is_some()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CountStrategy {
    /// Evaluate F at each of the q²+q+1 normalized points.
    #[default]
    PointIteration,
    /// Specialize F to the affine lines x = c and the line at infinity,
    /// then evaluate the resulting univariate polynomials.
    LineSweep,
}

pub fn count_points(f: &PlaneCurve) -> CountReport {
    count_points_with(f, CountStrategy::PointIteration, Parallelism::Auto)
}

pub fn count_points_with(f: &PlaneCurve, strategy: CountStrategy, par: Parallelism) -> CountReport {
    let points = match strategy {
        CountStrategy::PointIteration => points_by_iteration(f, par),
        CountStrategy::LineSweep => points_by_line_sweep(f),
    };
    CountReport {
        n: points.len(),
        rational_singular: singular_rational_points(f),
        linear_component: linear_component(f, &points),
        points,
    }
}

/// Membership of each point index in `set`.
pub(crate) fn membership(q: u32, set: &PointSet) -> Vec<bool> {
    let mut member = vec![false; plane_size(q)];
    for p in set {
        member[p.index(q)] = true;
    }
    member
}

/// A rational line dividing F; only lines inside the rational point set can.
fn linear_component(f: &PlaneCurve, points: &PointSet) -> Option<ProjLine> {
    let ctx = f.ctx();
    let q = ctx.q();
    if points.len() < q as usize + 1 {
        return None;
    }
    let member = membership(q, points);
    enumerate_lines(ctx)
        .into_iter()
        .find(|l| l.points(ctx).iter().all(|p| member[p.index(q)]) && f.contains_line(l))
}

/// The rational point set alone, by point iteration.
pub fn rational_points(f: &PlaneCurve) -> PointSet {
    points_by_iteration(f, Parallelism::Auto)
}

fn points_by_iteration(f: &PlaneCurve, par: Parallelism) -> PointSet {
    let q = f.ctx().q();
    let n = plane_size(q);
    let hits = map_ranges(n, 4096, par, |r| {
        r.map(|i| ProjPoint::from_index(q, i)).filter(|p| f.contains(p)).collect::<Vec<_>>()
    });
    hits.into_iter().flatten().collect()
}

fn points_by_line_sweep(f: &PlaneCurve) -> PointSet {
    let ctx = f.ctx();
    let d = f.degree() as usize;
    let mut out = PointSet::new();
    let elems: Vec<Felt> = ctx.elements().collect();
    // Affine part Z = 1: for each x = c, F(c, y, 1) as a polynomial in y.
    for &c in &elems {
        let mut coeffs = vec![Felt::ZERO; d + 1];
        for (m, &a) in f.terms() {
            let t = ctx.mul(a, ctx.pow_u(c, m[0] as u64));
            coeffs[m[1] as usize] = ctx.add(coeffs[m[1] as usize], t);
        }
        for &y in &elems {
            if crate::unipoly::eval(ctx, &coeffs, y).is_zero() {
                out.insert(ProjPoint::new(ctx, [c, y, Felt::ONE]).expect("nonzero"));
            }
        }
    }
    // Line at infinity: (x : 1 : 0) and (1 : 0 : 0).
    let mut at_infinity = vec![Felt::ZERO; d + 1];
    let mut corner = Felt::ZERO;
    for (m, &a) in f.terms() {
        if m[2] == 0 {
            at_infinity[m[0] as usize] = ctx.add(at_infinity[m[0] as usize], a);
            if m[1] == 0 {
                corner = ctx.add(corner, a);
            }
        }
    }
    for &x in &elems {
        if crate::unipoly::eval(ctx, &at_infinity, x).is_zero() {
            out.insert(ProjPoint::new(ctx, [x, Felt::ONE, Felt::ZERO]).expect("nonzero"));
        }
    }
    if corner.is_zero() {
        out.insert(ProjPoint::from_normalized([Felt::ONE, Felt::ZERO, Felt::ZERO]));
    }
    out
}

/// Values of every degree-d monomial at every point of P²(F_q), for fast
/// batch evaluation of coefficient vectors over [`monomials`]`(d)`.
#[derive(Clone, Debug)]
pub struct MonomialTable {
    ctx: Arc<FieldCtx>,
    degree: u32,
    monomials: Vec<Monomial>,
    n_points: usize,
    values: Vec<Felt>,
}

impl MonomialTable {
    pub fn new(ctx: Arc<FieldCtx>, degree: u32) -> MonomialTable {
        let monos = monomials(degree);
        let q = ctx.q();
        let n_points = plane_size(q);
        let mut values = Vec::with_capacity(n_points * monos.len());
        for i in 0..n_points {
            let c = ProjPoint::from_index(q, i).coords();
            for m in &monos {
                let v = (0..3).fold(Felt::ONE, |acc, a| ctx.mul(acc, ctx.pow_u(c[a], m[a] as u64)));
                values.push(v);
            }
        }
        MonomialTable { ctx, degree, monomials: monos, n_points, values }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Monomial values at the point with enumeration index `p`.
    #[inline]
    pub fn row(&self, p: usize) -> &[Felt] {
        let m = self.monomials.len();
        &self.values[p * m..(p + 1) * m]
    }

    #[inline]
    pub fn eval(&self, coeffs: &[Felt], p: usize) -> Felt {
        let ctx = &*self.ctx;
        coeffs
            .iter()
            .zip(self.row(p))
            .fold(Felt::ZERO, |acc, (&c, &v)| if c.is_zero() { acc } else { ctx.add(acc, ctx.mul(c, v)) })
    }

    /// Indices of the points where the form vanishes.
    pub fn zeros(&self, coeffs: &[Felt]) -> Vec<usize> {
        (0..self.n_points).filter(|&p| self.eval(coeffs, p).is_zero()).collect()
    }
}
