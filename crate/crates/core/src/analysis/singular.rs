use std::sync::Arc;

use serde::Serialize;

use crate::curve::{HomPoly, PlaneCurve};
use crate::error::{Error, Result};
use crate::field::{Felt, FieldCtx, MAX_ORDER};
use crate::plane::{incident, PointSet, ProjLine, ProjPoint};
use crate::unipoly::{self, UniPoly};

use super::rational_points;

/// Rational points where F and all three partials vanish. The F(P) = 0 test
/// is separate because the Euler relation degenerates when p | d.
pub fn singular_rational_points(f: &PlaneCurve) -> PointSet {
    let partials = f.partials();
    rational_points(f)
        .into_iter()
        .filter(|p| partials.iter().all(|g| g.evaluate(p.coords()).is_zero()))
        .collect()
}

pub fn is_singular_at(f: &PlaneCurve, p: &ProjPoint) -> bool {
    f.contains(p) && f.partials().iter().all(|g| g.evaluate(p.coords()).is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Nonsingularity {
    /// Every extension that can hold a singular point was searched.
    Nonsingular { certified_through: u32 },
    /// A singular point exists; its x-coordinate (or, at infinity, the point
    /// itself) lives in GF(q^witness_degree).
    Singular { witness_degree: u32 },
    /// No singular point with coordinates up to GF(q^searched_through).
    Inconclusive { searched_through: u32 },
}

impl Nonsingularity {
    pub fn is_nonsingular(self) -> bool {
        matches!(self, Nonsingularity::Nonsingular { .. })
    }

    pub fn is_singular(self) -> bool {
        matches!(self, Nonsingularity::Singular { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonsingularityOptions {
    pub m_budget: u32,
    /// Extensions larger than this are not built.
    pub max_field_order: u64,
}

impl NonsingularityOptions {
    pub fn with_budget(m_budget: u32) -> Self {
        NonsingularityOptions { m_budget, max_field_order: MAX_ORDER }
    }

    /// The budget that certifies a degree-d curve: (d-1)².
    pub fn certifying(d: u32) -> Self {
        Self::with_budget(certifying_budget(d))
    }
}

/// A reduced plane curve of degree d has at most d(d-1)/2 ≤ (d-1)² singular
/// points, so a Frobenius orbit of singular points has length at most
/// (d-1)², and a non-reduced curve has a singular point over every x.
pub fn certifying_budget(d: u32) -> u32 {
    let s = d.saturating_sub(1);
    s * s
}

/// Searches for common zeros of F, F_X, F_Y, F_Z over F̄_q.
///
/// The line at infinity is settled exactly with gcds of binary forms. For
/// the affine chart, every x in GF(q^m), m = 1..m_budget, is substituted and
/// the gcd of the four polynomials in y decides whether a singular point
/// with that x-coordinate exists (with y anywhere in F̄_q).
pub fn is_geometrically_nonsingular(f: &PlaneCurve, opts: NonsingularityOptions) -> Nonsingularity {
    let ctx = f.ctx();
    let d = f.degree();
    let mut system: Vec<HomPoly> = vec![f.poly().clone()];
    system.extend(f.partials().into_iter().filter(|g| !g.is_zero()));

    let at_infinity = singular_at_infinity(ctx, &system);
    let needed = certifying_budget(d);
    let limit = opts.m_budget.min(needed).min(at_infinity.map_or(u32::MAX, |w| w - 1));
    let mut searched = 0;
    for m in 1..=limit {
        if (ctx.q() as u64).checked_pow(m).is_none_or(|o| o > opts.max_field_order) {
            break;
        }
        let found = if m == 1 {
            affine_sweep(ctx, &system)
        } else {
            let big = Arc::new(ctx.extension(m).expect("within the supported order"));
            let table = ctx.embedding_into(&big).expect("subfield");
            let embedded: Vec<HomPoly> = system.iter().map(|g| g.embed(&big, &table)).collect();
            affine_sweep(&big, &embedded)
        };
        if found {
            return Nonsingularity::Singular { witness_degree: m };
        }
        searched = m;
    }
    if let Some(w) = at_infinity {
        return Nonsingularity::Singular { witness_degree: w };
    }
    if searched >= needed {
        Nonsingularity::Nonsingular { certified_through: needed }
    } else {
        Nonsingularity::Inconclusive { searched_through: searched }
    }
}

/// Minimal extension degree of a singular point on Z = 0, if any.
fn singular_at_infinity(ctx: &FieldCtx, system: &[HomPoly]) -> Option<u32> {
    // (1 : 0 : 0)
    if system.iter().all(|g| g.coeff([g.degree(), 0, 0]).is_zero()) {
        return Some(1);
    }
    // (x : 1 : 0): polynomials in x.
    let mut h: UniPoly = Vec::new();
    for g in system {
        let mut u = vec![Felt::ZERO; g.degree() as usize + 1];
        for (m, &c) in g.terms() {
            if m[2] == 0 {
                u[m[0] as usize] = ctx.add(u[m[0] as usize], c);
            }
        }
        unipoly::trim(&mut u);
        h = unipoly::gcd(ctx, &h, &u);
    }
    match unipoly::degree(&h) {
        None => Some(1),
        Some(0) => None,
        Some(_) => Some(unipoly::min_root_degree(ctx, &h)),
    }
}

/// Whether some x in `ctx` admits a common root y ∈ F̄ of every polynomial
/// of `system` restricted to (x, y, 1).
fn affine_sweep(ctx: &FieldCtx, system: &[HomPoly]) -> bool {
    // columns[g][j] = [(i, c)] with c·x^i the coefficient of y^j.
    let columns: Vec<Vec<Vec<(u32, Felt)>>> = system
        .iter()
        .map(|g| {
            let mut cols = vec![Vec::new(); g.degree() as usize + 1];
            for (m, &c) in g.terms() {
                cols[m[1] as usize].push((m[0], c));
            }
            cols
        })
        .collect();
    let d = system.iter().map(|g| g.degree()).max().unwrap_or(0) as usize;
    let mut xpow = vec![Felt::ONE; d + 1];
    let mut h: UniPoly = Vec::new();
    let mut u: UniPoly = Vec::new();
    for x in ctx.elements() {
        for i in 1..=d {
            xpow[i] = ctx.mul(xpow[i - 1], x);
        }
        h.clear();
        let mut trivial = false;
        for cols in &columns {
            u.clear();
            u.extend(cols.iter().map(|col| {
                col.iter().fold(Felt::ZERO, |acc, &(i, c)| ctx.add(acc, ctx.mul(c, xpow[i as usize])))
            }));
            unipoly::trim(&mut u);
            h = if h.is_empty() { u.clone() } else { unipoly::gcd(ctx, &h, &u) };
            if h.len() == 1 {
                trivial = true;
                break;
            }
        }
        if !trivial {
            // Either a common root in y, or every polynomial vanishes on x = const.
            return true;
        }
    }
    false
}

/// The line with coefficients (F_X(P), F_Y(P), F_Z(P)).
pub fn tangent_line(f: &PlaneCurve, p: &ProjPoint) -> Result<ProjLine> {
    if !f.evaluate(p)?.is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    let grad = f.partials().map(|g| g.evaluate(p.coords()));
    ProjLine::new(f.ctx(), grad).map_err(|_| Error::SingularPoint)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u32> {
        match self {
            Multiplicity::Finite(m) => Some(m),
            Multiplicity::Infinite => None,
        }
    }
}

/// i(l.C; P), via the order of vanishing of F(sP + tQ) at (1, 0) for
/// the first point Q ≠ P of `l`.
pub fn intersection_multiplicity(f: &PlaneCurve, l: &ProjLine, p: &ProjPoint) -> Result<Multiplicity> {
    let ctx = f.ctx();
    if !incident(ctx, p, l)? {
        return Err(Error::PointNotOnLine);
    }
    let other = l.points(ctx).into_iter().find(|x| x != p).expect("a line has q+1 ≥ 3 points");
    intersection_multiplicity_via(f, p, &other)
}

/// As [`intersection_multiplicity`], parameterizing the line through `p`
/// and `other` explicitly.
pub fn intersection_multiplicity_via(f: &PlaneCurve, p: &ProjPoint, other: &ProjPoint) -> Result<Multiplicity> {
    let g = f.restrict_to_line(p, other)?;
    Ok(match g.order_at_first_point() {
        Some(k) => Multiplicity::Finite(k),
        None => Multiplicity::Infinite,
    })
}
