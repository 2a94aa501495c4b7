use std::collections::BTreeMap;

use serde::Serialize;

use crate::curve::{divides, PlaneCurve};
use crate::error::Result;
use crate::par::{map_ranges, Parallelism};
use crate::plane::{plane_size, ProjLine, ProjPoint};

use super::count::membership;
use super::{count_points_with, tangent_line, CountReport, CountStrategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LineRecord {
    pub line: ProjLine,
    /// #(l ∩ C(F_q)).
    pub count: usize,
    /// Nonsingular rational points of l ∩ C at which l is tangent.
    pub tangency: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineSpectrum {
    pub q: u32,
    pub d: u32,
    #[serde(rename = "N")]
    pub n: usize,
    /// Nonzero a_i only.
    pub a: BTreeMap<usize, usize>,
    /// One record per rational line, in enumeration order.
    pub lines: Vec<LineRecord>,
}

impl LineSpectrum {
    pub fn a_i(&self, i: usize) -> usize {
        self.a.get(&i).copied().unwrap_or(0)
    }

    pub fn total_lines(&self) -> usize {
        self.a.values().sum()
    }

    /// Σ i·a_i
    pub fn incidence_sum(&self) -> usize {
        self.a.iter().map(|(i, a)| i * a).sum()
    }

    /// Σ C(i,2)·a_i
    pub fn pair_sum(&self) -> usize {
        self.a.iter().map(|(i, a)| i * i.saturating_sub(1) / 2 * a).sum()
    }
}

pub fn line_spectrum(f: &PlaneCurve) -> LineSpectrum {
    line_spectrum_with(f, &count_points_with(f, CountStrategy::PointIteration, Parallelism::Auto), Parallelism::Auto)
}

/// The spectrum, reusing a previously computed count.
pub fn line_spectrum_with(f: &PlaneCurve, report: &CountReport, par: Parallelism) -> LineSpectrum {
    let ctx = f.ctx();
    let q = ctx.q();
    let mut tangents = vec![0usize; plane_size(q)];
    for p in report.points.difference(&report.rational_singular) {
        let t = tangent_line(f, p).expect("nonsingular rational point");
        tangents[t.index(q)] += 1;
    }
    let n_lines = plane_size(q);
    let member = membership(q, &report.points);
    let lines: Vec<LineRecord> = map_ranges(n_lines, 256, par, |r| {
        r.map(|i| {
            let line = ProjLine::from_index(q, i);
            let count = line.points(ctx).iter().filter(|p| member[p.index(q)]).count();
            LineRecord { line, count, tangency: tangents[i] }
        })
        .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    let mut a = BTreeMap::new();
    for rec in &lines {
        *a.entry(rec.count).or_insert(0) += 1;
    }
    LineSpectrum { q, d: f.degree(), n: report.n, a, lines }
}

/// Whether X^q F_X + Y^q F_Y + Z^q F_Z vanishes identically on the curve.
pub fn is_frobenius_nonclassical(f: &PlaneCurve) -> Result<bool> {
    let g = f.frobenius_form();
    if g.is_zero() {
        return Ok(true);
    }
    divides(f.poly(), &g)
}

/// The four counting identities for a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub q: u32,
    pub d: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub sum_a: usize,
    pub expected_sum_a: usize,
    pub sum_i_a: usize,
    pub expected_sum_i_a: usize,
    pub sum_pairs: usize,
    pub expected_sum_pairs: usize,
    /// Σ_l min(i_l, d - i_l) when the tangency bound applies.
    pub tangency_bound: Option<usize>,
    /// Σ_l s_l when the tangency bound applies.
    pub tangency_sum: Option<usize>,
    pub identities: [bool; 3],
    /// `None` when the tangency bound does not apply.
    pub tangency_holds: Option<bool>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|&b| b) && self.tangency_holds != Some(false)
    }
}

pub fn lemma_check(f: &PlaneCurve) -> LemmaReport {
    let report = count_points_with(f, CountStrategy::PointIteration, Parallelism::Auto);
    let spec = line_spectrum_with(f, &report, Parallelism::Auto);
    lemma_check_with(&report, &spec)
}

pub fn lemma_check_with(report: &CountReport, spec: &LineSpectrum) -> LemmaReport {
    let q = spec.q as usize;
    let d = spec.d as usize;
    let n = spec.n;
    let applies = d <= q + 1 && !report.has_linear_component() && report.rational_singular.is_empty();
    let (bound, tangency) = if applies {
        let bound = spec.lines.iter().map(|r| r.count.min(d.saturating_sub(r.count))).sum();
        let tangency = spec.lines.iter().map(|r| r.tangency).sum();
        (Some(bound), Some(tangency))
    } else {
        (None, None)
    };
    let expected = [q * q + q + 1, (q + 1) * n, n * n.saturating_sub(1) / 2];
    let got = [spec.total_lines(), spec.incidence_sum(), spec.pair_sum()];
    LemmaReport {
        q: spec.q,
        d: spec.d,
        n,
        sum_a: got[0],
        expected_sum_a: expected[0],
        sum_i_a: got[1],
        expected_sum_i_a: expected[1],
        sum_pairs: got[2],
        expected_sum_pairs: expected[2],
        tangency_bound: bound,
        tangency_sum: tangency,
        identities: [got[0] == expected[0], got[1] == expected[1], got[2] == expected[2]],
        tangency_holds: bound.zip(tangency).map(|(b, s)| s == n && n <= b),
    }
}

/// The stable JSON summary of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveSummary {
    pub q: u32,
    pub d: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub a: BTreeMap<usize, usize>,
    pub singular_rational: Vec<ProjPoint>,
    /// `None` when the curve has a rational linear component.
    pub frobenius_nonclassical: Option<bool>,
}

pub fn summarize(f: &PlaneCurve) -> Result<CurveSummary> {
    let report = count_points_with(f, CountStrategy::PointIteration, Parallelism::Auto);
    let spec = line_spectrum_with(f, &report, Parallelism::Auto);
    summarize_with(f, &report, &spec)
}

pub fn summarize_with(f: &PlaneCurve, report: &CountReport, spec: &LineSpectrum) -> Result<CurveSummary> {
    let nonclassical = if report.has_linear_component() { None } else { Some(is_frobenius_nonclassical(f)?) };
    Ok(CurveSummary {
        q: spec.q,
        d: spec.d,
        n: report.n,
        a: spec.a.clone(),
        singular_rational: report.rational_singular.iter().copied().collect(),
        frobenius_nonclassical: nonclassical,
    })
}
