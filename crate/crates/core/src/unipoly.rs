//! Univariate polynomials over a [`FieldCtx`], lowest degree first.

use crate::field::{Felt, FieldCtx};

pub type UniPoly = Vec<Felt>;

pub fn trim(a: &mut UniPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

/// Degree, or `None` for the zero polynomial. Expects a trimmed input.
pub fn degree(a: &[Felt]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn eval(ctx: &FieldCtx, a: &[Felt], x: Felt) -> Felt {
    a.iter().rev().fold(Felt::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
}

pub fn rem(ctx: &FieldCtx, a: &[Felt], b: &[Felt]) -> UniPoly {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = ctx.inv(b[db]).expect("divisor is trimmed and nonzero");
    while r.len() > db {
        let top = r.len() - 1;
        let f = ctx.mul(r[top], lead_inv);
        let shift = top - db;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = ctx.sub(r[shift + i], ctx.mul(f, c));
        }
        trim(&mut r);
    }
    r
}

/// Monic gcd (zero when both inputs are zero).
pub fn gcd(ctx: &FieldCtx, a: &[Felt], b: &[Felt]) -> UniPoly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(ctx, &a, &b);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = ctx.inv(lead).expect("nonzero");
        for c in a.iter_mut() {
            *c = ctx.mul(*c, inv);
        }
    }
    a
}

pub fn mul(ctx: &FieldCtx, a: &[Felt], b: &[Felt]) -> UniPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Felt::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// `a^e mod m`.
pub fn pow_mod(ctx: &FieldCtx, a: &[Felt], mut e: u64, m: &[Felt]) -> UniPoly {
    let mut base = rem(ctx, a, m);
    let mut acc = rem(ctx, &[Felt::ONE], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(ctx, &mul(ctx, &acc, &base), m);
        }
        base = rem(ctx, &mul(ctx, &base, &base), m);
        e >>= 1;
    }
    acc
}

/// Smallest `m ≥ 1` such that `h` has a root in GF(q^m), for nonconstant `h`.
pub fn min_root_degree(ctx: &FieldCtx, h: &[Felt]) -> u32 {
    let deg = degree(h).expect("nonzero");
    assert!(deg >= 1, "nonconstant");
    let x = vec![Felt::ZERO, Felt::ONE];
    // x^(q^m) mod h, iterated by q-th powers.
    let mut frob = x.clone();
    for m in 1..=deg as u32 {
        frob = pow_mod(ctx, &frob, ctx.q() as u64, h);
        let mut diff = frob.clone();
        diff.resize(diff.len().max(2), Felt::ZERO);
        diff[1] = ctx.sub(diff[1], Felt::ONE);
        trim(&mut diff);
        if degree(&gcd(ctx, h, &diff)).is_some_and(|g| g >= 1) {
            return m;
        }
    }
    unreachable!("an irreducible factor of degree at most deg h has a root in GF(q^deg)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn v(a: &[u32]) -> UniPoly {
        a.iter().map(|&x| Felt(x)).collect()
    }

    #[test]
    fn gcd_and_roots() {
        let ctx: Arc<FieldCtx> = FieldCtx::of_order(5).unwrap();
        // (x-1)(x-2) and (x-1)(x-3)
        let a = mul(&ctx, &v(&[4, 1]), &v(&[3, 1]));
        let b = mul(&ctx, &v(&[4, 1]), &v(&[2, 1]));
        assert_eq!(gcd(&ctx, &a, &b), v(&[4, 1]));
        assert_eq!(min_root_degree(&ctx, &a), 1);
        // x^2 - 2 is irreducible over GF(5).
        assert_eq!(min_root_degree(&ctx, &v(&[3, 0, 1])), 2);
        // x^3 + x + 1 is irreducible over GF(5)? roots: none for 0..4 -> degree 3.
        let c = v(&[1, 1, 0, 1]);
        assert!((0..5).all(|x| !eval(&ctx, &c, Felt(x)).is_zero()));
        assert_eq!(min_root_degree(&ctx, &c), 3);
    }
}
