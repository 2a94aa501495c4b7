//! Small dense linear algebra over a [`FieldCtx`].

use crate::field::{Felt, FieldCtx};
use crate::plane::cross;

/// Row-major 3×3 matrix acting on column vectors of coordinates.
pub type Mat3 = [[Felt; 3]; 3];

pub fn identity() -> Mat3 {
    let (o, z) = (Felt::ONE, Felt::ZERO);
    [[o, z, z], [z, o, z], [z, z, o]]
}

pub fn det(ctx: &FieldCtx, m: &Mat3) -> Felt {
    let c = cross(ctx, m[1], m[2]);
    crate::plane::dot(ctx, m[0], c)
}

pub fn mul_vec(ctx: &FieldCtx, m: &Mat3, v: [Felt; 3]) -> [Felt; 3] {
    m.map(|row| crate::plane::dot(ctx, row, v))
}

pub fn mul(ctx: &FieldCtx, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[Felt::ZERO; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = ctx.sum((0..3).map(|k| ctx.mul(a[i][k], b[k][j])));
        }
    }
    out
}

pub fn inverse(ctx: &FieldCtx, m: &Mat3) -> Option<Mat3> {
    let d = det(ctx, m);
    let dinv = ctx.inv(d).ok()?;
    // Columns of the inverse are cross products of rows, scaled by 1/det.
    let cols = [cross(ctx, m[1], m[2]), cross(ctx, m[2], m[0]), cross(ctx, m[0], m[1])];
    let mut out = [[Felt::ZERO; 3]; 3];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..3 {
            out[i][j] = ctx.mul(col[i], dinv);
        }
    }
    Some(out)
}

/// Basis of the null space of `rows` (each of length `ncols`).
pub fn nullspace(ctx: &FieldCtx, rows: &[Vec<Felt>], ncols: usize) -> Vec<Vec<Felt>> {
    let mut a: Vec<Vec<Felt>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = ctx.inv(a[r][c]).expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..ncols {
                    let v = ctx.mul(f, a[r][j]);
                    a[i][j] = ctx.sub(a[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Felt::ZERO; ncols];
            v[f] = Felt::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = ctx.neg(a[row][f]);
            }
            v
        })
        .collect()
}
