//! The projective plane P²(F_q) and its dual.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Felt, FieldCtx};

/// Scales a nonzero triple so that its first nonzero entry is 1.
fn normalize(ctx: &FieldCtx, v: [Felt; 3]) -> Result<[Felt; 3]> {
    for &x in &v {
        ctx.element(x.0)?;
    }
    let lead = v.iter().copied().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let s = ctx.inv(lead)?;
    Ok(v.map(|x| ctx.mul(s, x)))
}

pub(crate) fn cross(ctx: &FieldCtx, a: [Felt; 3], b: [Felt; 3]) -> [Felt; 3] {
    let m = |x, y| ctx.mul(x, y);
    [
        ctx.sub(m(a[1], b[2]), m(a[2], b[1])),
        ctx.sub(m(a[2], b[0]), m(a[0], b[2])),
        ctx.sub(m(a[0], b[1]), m(a[1], b[0])),
    ]
}

pub(crate) fn dot(ctx: &FieldCtx, a: [Felt; 3], b: [Felt; 3]) -> Felt {
    ctx.add(ctx.add(ctx.mul(a[0], b[0]), ctx.mul(a[1], b[1])), ctx.mul(a[2], b[2]))
}

macro_rules! projective_triple {
    ($name:ident, $field:ident) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name {
            $field: [Felt; 3],
        }

        impl $name {
            /// Normalizes `v` (first nonzero coordinate becomes 1).
            pub fn new(ctx: &FieldCtx, v: [Felt; 3]) -> Result<Self> {
                normalize(ctx, v).map(|$field| Self { $field })
            }

            pub fn from_u32(ctx: &FieldCtx, v: [u32; 3]) -> Result<Self> {
                Self::new(ctx, v.map(Felt))
            }

            /// Trusts that `v` is already normalized.
            pub(crate) fn from_normalized(v: [Felt; 3]) -> Self {
                Self { $field: v }
            }

            pub fn $field(&self) -> [Felt; 3] {
                self.$field
            }

            /// Position in the lexicographic enumeration of P²(F_q).
            pub fn index(&self, q: u32) -> usize {
                let [a, b, c] = self.$field.map(|x| x.0 as usize);
                let q = q as usize;
                match (a, b) {
                    (0, 0) => 0,
                    (0, _) => 1 + c,
                    _ => 1 + q + b * q + c,
                }
            }

            /// Inverse of [`Self::index`].
            pub fn from_index(q: u32, idx: usize) -> Self {
                let qq = q as usize;
                let v = if idx == 0 {
                    [0, 0, 1]
                } else if idx <= qq {
                    [0, 1, idx - 1]
                } else {
                    let r = idx - 1 - qq;
                    [1, r / qq, r % qq]
                };
                Self { $field: v.map(|x| Felt(x as u32)) }
            }

            pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self> {
                let parts: Vec<&str> = s.trim().split(':').collect();
                let bad = || Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("expected x:y:z, found {s:?}"),
                };
                if parts.len() != 3 {
                    return Err(bad());
                }
                let mut v = [Felt::ZERO; 3];
                for (slot, part) in v.iter_mut().zip(&parts) {
                    *slot = Felt(part.parse().map_err(|_| bad())?);
                }
                Self::new(ctx, v)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let [a, b, c] = self.$field;
                write!(f, "{a}:{b}:{c}")
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
    };
}

projective_triple!(ProjPoint, coords);
projective_triple!(ProjLine, coeffs);

impl ProjLine {
    /// The `q + 1` points of this line: `u` and `v + t·u` for a basis `u, v`
    /// of its null space.
    pub fn points(&self, ctx: &FieldCtx) -> Vec<ProjPoint> {
        let [a, b, c] = self.coeffs;
        let one = Felt::ONE;
        let zero = Felt::ZERO;
        // Normalized, so a is 0 or 1.
        let (u, v) = if a == one {
            ([ctx.neg(b), one, zero], [ctx.neg(c), zero, one])
        } else if b == one {
            ([one, zero, zero], [zero, ctx.neg(c), one])
        } else {
            ([one, zero, zero], [zero, one, zero])
        };
        let mut out = Vec::with_capacity(ctx.q() as usize + 1);
        out.push(ProjPoint::new(ctx, u).expect("nonzero"));
        for t in ctx.elements() {
            let w = [0, 1, 2].map(|i| ctx.add(v[i], ctx.mul(t, u[i])));
            out.push(ProjPoint::new(ctx, w).expect("independent"));
        }
        out
    }
}

impl FromStr for ProjPoint {
    type Err = Error;
    /// Parses without a field; coordinates must already be normalized.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<u32> = s
            .split(':')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse { line: 1, column: 1, message: format!("bad point {s:?}") })?;
        match parts.as_slice() {
            [a, b, c] => Ok(ProjPoint { coords: [Felt(*a), Felt(*b), Felt(*c)] }),
            _ => Err(Error::Parse { line: 1, column: 1, message: format!("bad point {s:?}") }),
        }
    }
}

pub type PointSet = BTreeSet<ProjPoint>;

/// All q²+q+1 points in lexicographic order of their normalized coordinates.
pub fn enumerate_points(ctx: &FieldCtx) -> Vec<ProjPoint> {
    let n = plane_size(ctx.q());
    (0..n).map(|i| ProjPoint::from_index(ctx.q(), i)).collect()
}

/// All q²+q+1 lines, ordered like the points of the dual plane.
pub fn enumerate_lines(ctx: &FieldCtx) -> Vec<ProjLine> {
    let n = plane_size(ctx.q());
    (0..n).map(|i| ProjLine::from_index(ctx.q(), i)).collect()
}

pub fn plane_size(q: u32) -> usize {
    let q = q as usize;
    q * q + q + 1
}

pub fn incident(ctx: &FieldCtx, p: &ProjPoint, l: &ProjLine) -> Result<bool> {
    check(ctx, p.coords)?;
    check(ctx, l.coeffs)?;
    Ok(dot(ctx, p.coords, l.coeffs).is_zero())
}

fn check(ctx: &FieldCtx, v: [Felt; 3]) -> Result<()> {
    for x in v {
        ctx.element(x.0)?;
    }
    Ok(())
}

/// The join of two distinct points.
pub fn line_through(ctx: &FieldCtx, p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    check(ctx, p.coords)?;
    check(ctx, q.coords)?;
    if p == q {
        return Err(Error::EqualArguments);
    }
    ProjLine::new(ctx, cross(ctx, p.coords, q.coords))
}

/// The meet of two distinct lines.
pub fn meet(ctx: &FieldCtx, l: &ProjLine, m: &ProjLine) -> Result<ProjPoint> {
    check(ctx, l.coeffs)?;
    check(ctx, m.coeffs)?;
    if l == m {
        return Err(Error::EqualArguments);
    }
    ProjPoint::new(ctx, cross(ctx, l.coeffs, m.coeffs))
}

/// The pencil of q+1 lines through `p`.
pub fn lines_through_point(ctx: &FieldCtx, p: &ProjPoint) -> Vec<ProjLine> {
    // Dual of ProjLine::points.
    ProjLine::from_normalized(p.coords)
        .points(ctx)
        .into_iter()
        .map(|x| ProjLine::from_normalized(x.coords()))
        .collect()
}

/// Returns `None` when no three points are collinear, otherwise the first
/// collinear triple in iteration order.
pub fn is_arc(ctx: &FieldCtx, set: &PointSet) -> Result<Option<[ProjPoint; 3]>> {
    if set.len() < 3 {
        return Err(Error::TooFewPoints(set.len()));
    }
    let pts: Vec<ProjPoint> = set.iter().copied().collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let l = cross(ctx, pts[i].coords, pts[j].coords);
            for k in j + 1..pts.len() {
                if dot(ctx, l, pts[k].coords).is_zero() {
                    return Ok(Some([pts[i], pts[j], pts[k]]));
                }
            }
        }
    }
    Ok(None)
}

/// Precomputed incidence structure of P²(F_q): point and line lists plus
/// both incidence maps, as indices into those lists.
#[derive(Debug)]
pub struct Plane {
    ctx: Arc<FieldCtx>,
    points: Vec<ProjPoint>,
    lines: Vec<ProjLine>,
    line_points: Vec<Vec<u32>>,
    point_lines: Vec<Vec<u32>>,
}

impl Plane {
    pub fn new(ctx: Arc<FieldCtx>) -> Plane {
        let q = ctx.q();
        let points = enumerate_points(&ctx);
        let lines = enumerate_lines(&ctx);
        let line_points: Vec<Vec<u32>> = lines
            .iter()
            .map(|l| l.points(&ctx).iter().map(|p| p.index(q) as u32).collect())
            .collect();
        let mut point_lines = vec![Vec::with_capacity(q as usize + 1); points.len()];
        for (li, pts) in line_points.iter().enumerate() {
            for &pi in pts {
                point_lines[pi as usize].push(li as u32);
            }
        }
        Plane { ctx, points, lines, line_points, point_lines }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    /// Indices of the points on line `line`.
    pub fn points_on(&self, line: usize) -> &[u32] {
        &self.line_points[line]
    }

    /// Indices of the lines through point `point`.
    pub fn lines_through(&self, point: usize) -> &[u32] {
        &self.point_lines[point]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Arc<FieldCtx> {
        FieldCtx::of_order(q).unwrap()
    }

    fn pt(ctx: &FieldCtx, v: [u32; 3]) -> ProjPoint {
        ProjPoint::from_u32(ctx, v).unwrap()
    }

    fn ln(ctx: &FieldCtx, v: [u32; 3]) -> ProjLine {
        ProjLine::from_u32(ctx, v).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_points(&gf(2)).len(), 7);
        assert_eq!(enumerate_points(&gf(4)).len(), 21);
        assert_eq!(enumerate_points(&gf(5)).len(), 31);
        assert_eq!(enumerate_lines(&gf(2)).len(), 7);
        assert_eq!(enumerate_lines(&gf(3)).len(), 13);
        assert_eq!(enumerate_lines(&gf(9)).len(), 91);
    }

    #[test]
    fn enumeration_is_sorted_and_indexed() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let ctx = gf(q);
            let pts = enumerate_points(&ctx);
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
            for (i, p) in pts.iter().enumerate() {
                assert_eq!(p.index(q), i);
                assert_eq!(ProjPoint::new(&ctx, p.coords()).unwrap(), *p);
            }
        }
    }

    #[test]
    fn incidence_examples() {
        let c2 = gf(2);
        assert!(!incident(&c2, &pt(&c2, [0, 0, 1]), &ln(&c2, [0, 0, 1])).unwrap());
        assert!(incident(&c2, &pt(&c2, [1, 0, 0]), &ln(&c2, [0, 0, 1])).unwrap());
        assert!(!incident(&c2, &pt(&c2, [1, 1, 1]), &ln(&c2, [1, 1, 1])).unwrap());
        let c4 = gf(4);
        assert!(incident(&c2, &pt(&c4, [1, 3, 0]), &ln(&c2, [0, 0, 1])).is_err());
    }

    #[test]
    fn joins_and_meets() {
        let c = gf(3);
        assert_eq!(line_through(&c, &pt(&c, [1, 0, 0]), &pt(&c, [0, 1, 0])).unwrap(), ln(&c, [0, 0, 1]));
        assert_eq!(meet(&c, &ln(&c, [1, 0, 0]), &ln(&c, [0, 1, 0])).unwrap(), pt(&c, [0, 0, 1]));
        let p = pt(&c, [1, 0, 0]);
        assert_eq!(line_through(&c, &p, &p), Err(Error::EqualArguments));
        // Brute force over all 13 lines for the one containing both points.
        let a = pt(&c, [1, 0, 0]);
        let b = pt(&c, [1, 1, 1]);
        let found: Vec<ProjLine> = enumerate_lines(&c)
            .into_iter()
            .filter(|l| incident(&c, &a, l).unwrap() && incident(&c, &b, l).unwrap())
            .collect();
        assert_eq!(found, vec![ln(&c, [0, 1, 2])]);
        assert_eq!(line_through(&c, &a, &b).unwrap(), found[0]);
    }

    #[test]
    fn pencils() {
        let c = gf(2);
        let mut pencil = lines_through_point(&c, &pt(&c, [0, 0, 1]));
        pencil.sort();
        let mut expected = vec![ln(&c, [1, 0, 0]), ln(&c, [0, 1, 0]), ln(&c, [1, 1, 0])];
        expected.sort();
        assert_eq!(pencil, expected);
        for q in [4, 7] {
            let c = gf(q);
            for p in enumerate_points(&c) {
                let pencil = lines_through_point(&c, &p);
                assert_eq!(pencil.len(), q as usize + 1);
                assert!(pencil.iter().all(|l| incident(&c, &p, l).unwrap()));
            }
        }
    }

    #[test]
    fn regularity_and_round_trip() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let c = gf(q);
            let plane = Plane::new(c.clone());
            for (li, l) in plane.lines().iter().enumerate() {
                let on = plane.points_on(li);
                assert_eq!(on.len(), q as usize + 1);
                let set: BTreeSet<_> = on.iter().collect();
                assert_eq!(set.len(), on.len());
                for &pi in on {
                    assert!(incident(&c, &plane.points()[pi as usize], l).unwrap());
                }
            }
            for pi in 0..plane.points().len() {
                assert_eq!(plane.lines_through(pi).len(), q as usize + 1);
            }
            if q <= 4 {
                for p in plane.points() {
                    for r in plane.points() {
                        if p == r {
                            continue;
                        }
                        let l = line_through(&c, p, r).unwrap();
                        for m in lines_through_point(&c, p) {
                            if m != l {
                                assert_eq!(meet(&c, &l, &m).unwrap(), *p);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn arcs() {
        for q in [3, 4, 5] {
            let c = gf(q);
            let frame: PointSet =
                [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]].iter().map(|&v| pt(&c, v)).collect();
            assert_eq!(is_arc(&c, &frame).unwrap(), None);
        }
        let c = gf(3);
        let line: PointSet = [[1, 0, 0], [0, 1, 0], [1, 1, 0]].iter().map(|&v| pt(&c, v)).collect();
        assert!(is_arc(&c, &line).unwrap().is_some());
        let two: PointSet = [[1, 0, 0], [0, 1, 0]].iter().map(|&v| pt(&c, v)).collect();
        assert_eq!(is_arc(&c, &two), Err(Error::TooFewPoints(2)));
    }

    #[test]
    fn arcs_never_exceed_q_plus_2() {
        // Greedy maximal arcs: size at most q+1 for odd q, q+2 for even q.
        for q in [3, 4, 5, 8] {
            let c = gf(q);
            let mut arc = PointSet::new();
            for p in enumerate_points(&c) {
                let mut trial = arc.clone();
                trial.insert(p);
                if trial.len() < 3 || is_arc(&c, &trial).unwrap().is_none() {
                    arc = trial;
                }
            }
            let cap = if q % 2 == 0 { q + 2 } else { q + 1 };
            assert!(arc.len() <= cap as usize, "q={q} arc={}", arc.len());
        }
    }

    #[test]
    fn text_format() {
        let c = gf(4);
        let p = ProjPoint::parse(&c, "1:0:3").unwrap();
        assert_eq!(p.to_string(), "1:0:3");
        assert_eq!(ProjPoint::parse(&c, "2:0:1").unwrap().to_string(), "1:0:3");
        assert!(ProjPoint::parse(&c, "0:0:0").is_err());
        assert!(ProjPoint::parse(&c, "1:2").is_err());
    }
}
