//! Text formats for curves.
//!
//! A curve file has the field spec on its first line, `d=<degree>` on the
//! second, then one `<i> <j> <k> <coeff>` term per line. Blank lines and
//! `#` comments are ignored. The inline form is `"i j k c; i j k c; ..."`
//! over a field given separately.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::curve::{Monomial, PlaneCurve};
use crate::error::{Error, Result};
use crate::field::{Felt, FieldCtx, FieldSpec};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((b + 1, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b + 1, &s[b..]));
    }
    out.into_iter()
}

/// Parses one `i j k c` term; `offset` is the column of `s` within its line.
fn parse_term(ctx: &FieldCtx, s: &str, line: usize, offset: usize) -> Result<(Monomial, Felt)> {
    let toks: Vec<(usize, &str)> = tokens(s).collect();
    if toks.len() != 4 {
        let col = toks.get(4).map_or(offset, |t| offset + t.0 - 1);
        return Err(parse_err(line, col, format!("expected \"i j k coeff\", found {:?}", s.trim())));
    }
    let mut nums = [0u32; 4];
    for (n, &(col, t)) in nums.iter_mut().zip(&toks) {
        *n = t
            .parse()
            .map_err(|_| parse_err(line, offset + col - 1, format!("expected a nonnegative integer, found {t:?}")))?;
    }
    let coeff = ctx.element(nums[3]).map_err(|e| parse_err(line, offset + toks[3].0 - 1, e.to_string()))?;
    Ok(([nums[0], nums[1], nums[2]], coeff))
}

fn check_degree(m: Monomial, d: u32, line: usize, column: usize) -> Result<()> {
    let got = m.iter().sum::<u32>();
    if got != d {
        return Err(parse_err(line, column, Error::Inhomogeneous { exps: m, got, expected: d }.to_string()));
    }
    Ok(())
}

pub fn parse_curve_file(text: &str) -> Result<PlaneCurve> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());
    let (fl, field_line) = lines.next().ok_or_else(|| parse_err(1, 1, "missing field spec"))?;
    let spec: FieldSpec = field_line.parse().map_err(|e| match e {
        Error::Parse { column, message, .. } => parse_err(fl, column, message),
        other => parse_err(fl, 1, other.to_string()),
    })?;
    let ctx = spec.build().map_err(|e| parse_err(fl, 1, e.to_string()))?;
    let (dl, degree_line) = lines.next().ok_or_else(|| parse_err(fl + 1, 1, "missing d=<degree>"))?;
    let d: u32 = degree_line
        .trim()
        .strip_prefix("d=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| parse_err(dl, 1, format!("expected d=<degree>, found {:?}", degree_line.trim())))?;
    let mut terms = Vec::new();
    for (ln, l) in lines {
        let (m, c) = parse_term(&ctx, l, ln, 1)?;
        check_degree(m, d, ln, 1)?;
        terms.push((m, c));
    }
    PlaneCurve::new(ctx, d, &terms).map_err(|e| parse_err(dl, 1, e.to_string()))
}

/// Parses `"i j k c; ..."`; the degree is that of the first term.
pub fn parse_inline(ctx: &Arc<FieldCtx>, s: &str) -> Result<PlaneCurve> {
    let mut terms = Vec::new();
    let mut offset = 1;
    let mut degree = None;
    for part in s.split(';') {
        let here = offset;
        offset += part.len() + 1;
        if part.trim().is_empty() {
            continue;
        }
        let (m, c) = parse_term(ctx, part, 1, here)?;
        let d = *degree.get_or_insert(m.iter().sum::<u32>());
        check_degree(m, d, 1, here)?;
        terms.push((m, c));
    }
    let d = degree.ok_or_else(|| parse_err(1, 1, "no terms"))?;
    PlaneCurve::new(ctx.clone(), d, &terms).map_err(|e| parse_err(1, 1, e.to_string()))
}

pub fn write_curve_file(f: &PlaneCurve) -> String {
    let mut out = String::new();
    let spec = f.ctx().spec();
    let _ = writeln!(out, "{spec}");
    let _ = writeln!(out, "d={}", f.degree());
    for (m, c) in f.terms() {
        let _ = writeln!(out, "{} {} {} {}", m[0], m[1], m[2], c.0);
    }
    out
}

pub fn to_inline(f: &PlaneCurve) -> String {
    f.terms().iter().map(|(m, c)| format!("{} {} {} {}", m[0], m[1], m[2], c.0)).collect::<Vec<_>>().join(";")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "p=2 k=2 mod=1,1,1\nd=4\n4 0 0 1\n0 4 0 1\n0 0 4 1\n2 1 1 1\n";
        let f = parse_curve_file(text).unwrap();
        assert_eq!(f.degree(), 4);
        assert_eq!(f.terms().len(), 4);
        let g = parse_curve_file(&write_curve_file(&f)).unwrap();
        assert_eq!(f, g);
        let h = parse_inline(f.ctx(), &to_inline(&f)).unwrap();
        assert_eq!(f, h);
    }

    #[test]
    fn comments_and_default_modulus() {
        let f = parse_curve_file("# conic\np=5\n\nd=2\n0 1 1 1  # YZ\n2 0 0 4\n").unwrap();
        assert_eq!(f.ctx().q(), 5);
        assert_eq!(f.terms().len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_curve_file("p=3\nd=2\n1 1 0 1\n2 1 0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = parse_curve_file("p=3\nd=2\n1 1 x 1\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, column: 5, message: "expected a nonnegative integer, found \"x\"".into() });
        let e = parse_curve_file("p=3\nd=2\n1 1 0 7\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 7, .. }), "{e}");
        let e = parse_curve_file("p=4\nd=2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_curve_file("p=3\ndegree 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_curve_file("p=3\nd=2\n1 1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let ctx = FieldCtx::of_order(3).unwrap();
        let e = parse_inline(&ctx, "2 0 0 1; 1 1 1 1").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 9, .. }), "{e}");
        assert!(parse_inline(&ctx, " ; ").is_err());
        assert!(parse_inline(&ctx, "2 0 0 0").is_err());
    }
}
