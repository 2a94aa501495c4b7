//! Exhaustive and seeded random searches over coefficient space.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::{monomials, PlaneCurve};
use crate::error::{Error, Result};
use crate::field::{Felt, FieldCtx};
use crate::linalg::nullspace;
use crate::par::{map_ranges, Parallelism};
use crate::plane::{enumerate_lines, plane_size, ProjPoint};

/// Recorded with every random search so runs can be replayed elsewhere.
pub const GENERATOR_ID: &str = "rand_chacha::ChaCha8Rng seed_from_u64(seed), set_stream(chunk), chunk=4096";
const RANDOM_CHUNK: usize = 4096;
const EXHAUSTIVE_CHUNK: usize = 1 << 15;

pub const DEFAULT_BUDGET: u128 = 100_000_000;
pub const DEFAULT_WITNESS_CAP: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchMode {
    /// Every coefficient vector whose first nonzero entry is 1, in lexicographic order.
    Exhaustive,
    /// Uniform nonzero coefficient vectors.
    Random { seed: u64, samples: u64 },
    /// Uniform over the curves singular at `point`.
    ConstrainedRandom { seed: u64, samples: u64, point: ProjPoint },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchFilters {
    pub no_linear_component: bool,
    /// No rational point of the curve is singular.
    pub nonsingular_rational: bool,
    pub singular_at: Option<ProjPoint>,
}

#[derive(Clone, Debug)]
pub struct SearchTask {
    pub ctx: Arc<FieldCtx>,
    pub degree: u32,
    pub mode: SearchMode,
    pub filters: SearchFilters,
    /// Upper bound on curves examined.
    pub budget: u128,
    pub witness_cap: usize,
    pub parallelism: Parallelism,
}

impl SearchTask {
    pub fn new(ctx: Arc<FieldCtx>, degree: u32, mode: SearchMode) -> SearchTask {
        SearchTask {
            ctx,
            degree,
            mode,
            filters: SearchFilters::default(),
            budget: DEFAULT_BUDGET,
            witness_cap: DEFAULT_WITNESS_CAP,
            parallelism: Parallelism::Auto,
        }
    }

    pub fn with_filters(mut self, filters: SearchFilters) -> Self {
        self.filters = filters;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_witness_cap(mut self, cap: usize) -> Self {
        self.witness_cap = cap;
        self
    }

    pub fn with_parallelism(mut self, par: Parallelism) -> Self {
        self.parallelism = par;
        self
    }

    pub fn n_monomials(&self) -> usize {
        monomial_count(self.degree)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::DegreeTooSmall);
        }
        if let Some(p) = &self.filters.singular_at {
            for x in p.coords() {
                self.ctx.element(x.0)?;
            }
        }
        match &self.mode {
            SearchMode::Exhaustive => {
                let needed = (self.ctx.q() as u128).checked_pow(self.n_monomials() as u32 - 1).unwrap_or(u128::MAX);
                if needed > self.budget {
                    return Err(Error::BudgetExceeded { needed, budget: self.budget });
                }
            }
            SearchMode::Random { samples, .. } | SearchMode::ConstrainedRandom { samples, .. } => {
                if *samples as u128 > self.budget {
                    return Err(Error::BudgetExceeded { needed: *samples as u128, budget: self.budget });
                }
            }
        }
        if let SearchMode::ConstrainedRandom { point, .. } = &self.mode {
            for x in point.coords() {
                self.ctx.element(x.0)?;
            }
            if self.degree < 2 {
                return Err(Error::InvalidTask("a curve singular at a point needs degree at least 2".into()));
            }
        }
        Ok(())
    }
}

pub fn monomial_count(d: u32) -> usize {
    ((d + 1) * (d + 2) / 2) as usize
}

/// Number of coefficient vectors of length `len` with first nonzero entry 1.
pub fn canonical_count(q: u32, len: usize) -> u128 {
    let q = q as u128;
    (q.pow(len as u32) - 1) / (q - 1)
}

/// The `idx`-th (lexicographic) vector of length `out.len()` whose first
/// nonzero entry is 1, as element indices.
pub fn canonical_vector(q: u32, idx: u128, out: &mut [u32]) {
    let len = out.len();
    let q = q as u128;
    let mut rest = idx;
    let mut k = len - 1;
    let mut block = 1u128;
    while rest >= block {
        rest -= block;
        k -= 1;
        block *= q;
    }
    out.fill(0);
    out[k] = 1;
    for e in out[k + 1..].iter_mut().rev() {
        *e = (rest % q) as u32;
        rest /= q;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Enumeration index (exhaustive) or sample index (random).
    pub index: u128,
    #[serde(rename = "N")]
    pub n: usize,
    /// Coefficients over the degree-d monomials in lexicographic order.
    pub coeffs: Vec<u32>,
    pub equation: String,
}

impl Witness {
    pub fn curve(&self, ctx: &Arc<FieldCtx>, d: u32) -> Result<PlaneCurve> {
        let c: Vec<Felt> = self.coeffs.iter().map(|&x| ctx.element(x)).collect::<Result<_>>()?;
        PlaneCurve::from_coeffs(ctx.clone(), d, &c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub field: String,
    pub q: u32,
    pub d: u32,
    pub mode: SearchMode,
    pub filters: SearchFilters,
    pub seed: Option<u64>,
    pub generator: Option<&'static str>,
    pub budget: u128,
    pub curves_examined: u64,
    /// Curves passing every filter.
    pub curves_passing: u64,
    /// Largest N among passing curves.
    pub best_n: Option<usize>,
    /// Passing curves attaining `best_n`, lowest index first, capped.
    pub witnesses: Vec<Witness>,
    pub witness_cap: usize,
    /// N over every examined curve.
    pub histogram: BTreeMap<usize, u64>,
    /// N over passing curves.
    pub passing_histogram: BTreeMap<usize, u64>,
    /// (d-1)q+1
    pub sziklai: i64,
}

impl SearchRecord {
    /// Passing curves with N above (d-1)q+1.
    pub fn exceeds_sziklai(&self) -> bool {
        self.best_n.is_some_and(|b| b as i64 > self.sziklai)
    }
}

#[derive(Default)]
struct Partial {
    examined: u64,
    passing: u64,
    hist: Vec<u64>,
    passing_hist: Vec<u64>,
    best: Option<usize>,
    witnesses: Vec<(u128, usize, Vec<u32>)>,
}

impl Partial {
    fn new(n_points: usize) -> Partial {
        Partial { hist: vec![0; n_points + 1], passing_hist: vec![0; n_points + 1], ..Default::default() }
    }

    fn offer(&mut self, index: u128, n: usize, coeffs: &[u32], cap: usize) {
        match self.best {
            Some(b) if n < b => return,
            Some(b) if n == b => {
                if self.witnesses.len() < cap {
                    self.witnesses.push((index, n, coeffs.to_vec()));
                }
                return;
            }
            _ => {}
        }
        self.best = Some(n);
        self.witnesses.clear();
        if cap > 0 {
            self.witnesses.push((index, n, coeffs.to_vec()));
        }
    }

    /// Folds `other`, which covers later indices.
    fn merge(&mut self, other: Partial, cap: usize) {
        self.examined += other.examined;
        self.passing += other.passing;
        for (a, b) in self.hist.iter_mut().zip(&other.hist) {
            *a += b;
        }
        for (a, b) in self.passing_hist.iter_mut().zip(&other.passing_hist) {
            *a += b;
        }
        match (self.best, other.best) {
            (_, None) => {}
            (Some(a), Some(b)) if b < a => {}
            (Some(a), Some(b)) if a == b => {
                let room = cap.saturating_sub(self.witnesses.len());
                self.witnesses.extend(other.witnesses.into_iter().take(room));
            }
            _ => {
                self.best = other.best;
                self.witnesses = other.witnesses;
            }
        }
    }
}

/// Precomputed tables shared by all workers.
struct Kernel {
    ctx: Arc<FieldCtx>,
    degree: u32,
    q: u32,
    n_points: usize,
    words: usize,
    n_mono: usize,
    /// values[p * n_mono + m]
    values: Vec<Felt>,
    /// partials[a][p * n_mono + m]
    partials: [Vec<Felt>; 3],
    line_masks: Vec<Vec<u64>>,
    filters: SearchFilters,
    singular_index: Option<usize>,
}

impl Kernel {
    fn new(ctx: Arc<FieldCtx>, degree: u32, filters: SearchFilters) -> Kernel {
        let q = ctx.q();
        let monos = monomials(degree);
        let n_mono = monos.len();
        let n_points = plane_size(q);
        let words = n_points.div_ceil(64);
        let mut values = Vec::with_capacity(n_points * n_mono);
        let mut partials: [Vec<Felt>; 3] = Default::default();
        for p in 0..n_points {
            let c = ProjPoint::from_index(q, p).coords();
            let pw = |a: usize, e: u32| ctx.pow_u(c[a], e as u64);
            for m in &monos {
                values.push(ctx.mul(ctx.mul(pw(0, m[0]), pw(1, m[1])), pw(2, m[2])));
                for (a, part) in partials.iter_mut().enumerate() {
                    let v = if m[a] == 0 {
                        Felt::ZERO
                    } else {
                        let mut e = *m;
                        e[a] -= 1;
                        let v = ctx.mul(ctx.mul(pw(0, e[0]), pw(1, e[1])), pw(2, e[2]));
                        ctx.scale_int(m[a] as u64, v)
                    };
                    part.push(v);
                }
            }
        }
        let line_masks = enumerate_lines(&ctx)
            .iter()
            .map(|l| {
                let mut mask = vec![0u64; words];
                for p in l.points(&ctx) {
                    let i = p.index(q);
                    mask[i / 64] |= 1 << (i % 64);
                }
                mask
            })
            .collect();
        let singular_index = filters.singular_at.map(|p| p.index(q));
        Kernel { ctx, degree, q, n_points, words, n_mono, values, partials, line_masks, filters, singular_index }
    }

    fn eval_into(&self, coeffs: &[u32], vals: &mut [Felt]) {
        let ctx = &*self.ctx;
        for (p, v) in vals.iter_mut().enumerate() {
            let row = &self.values[p * self.n_mono..(p + 1) * self.n_mono];
            *v = coeffs
                .iter()
                .zip(row)
                .fold(Felt::ZERO, |acc, (&c, &m)| if c == 0 { acc } else { ctx.add(acc, ctx.mul(Felt(c), m)) });
        }
    }

    fn gradient_zero(&self, coeffs: &[u32], p: usize) -> bool {
        let ctx = &*self.ctx;
        self.partials.iter().all(|part| {
            let row = &part[p * self.n_mono..(p + 1) * self.n_mono];
            coeffs
                .iter()
                .zip(row)
                .fold(Felt::ZERO, |acc, (&c, &m)| if c == 0 { acc } else { ctx.add(acc, ctx.mul(Felt(c), m)) })
                .is_zero()
        })
    }

    fn has_linear_component(&self, coeffs: &[u32], mask: &[u64], n: usize) -> bool {
        if n < self.q as usize + 1 {
            return false;
        }
        let covered = |lm: &Vec<u64>| lm.iter().zip(mask).all(|(l, m)| l & !m == 0);
        let mut candidates = self.line_masks.iter().enumerate().filter(|(_, lm)| covered(lm));
        if self.degree < self.q + 1 {
            return candidates.next().is_some();
        }
        let curve = self.curve(coeffs);
        candidates.any(|(i, _)| curve.contains_line(&crate::plane::ProjLine::from_index(self.q, i)))
    }

    fn curve(&self, coeffs: &[u32]) -> PlaneCurve {
        let c: Vec<Felt> = coeffs.iter().map(|&x| Felt(x)).collect();
        PlaneCurve::from_coeffs(self.ctx.clone(), self.degree, &c).expect("nonzero coefficient vector")
    }

    /// Classifies one curve from its point values and records it.
    fn record(&self, index: u128, coeffs: &[u32], vals: &[Felt], mask: &mut [u64], acc: &mut Partial, cap: usize) {
        mask.fill(0);
        for (p, v) in vals.iter().enumerate() {
            if v.is_zero() {
                mask[p / 64] |= 1 << (p % 64);
            }
        }
        let n = mask.iter().map(|w| w.count_ones() as usize).sum();
        acc.examined += 1;
        acc.hist[n] += 1;
        if let Some(s) = self.singular_index {
            if !vals[s].is_zero() || !self.gradient_zero(coeffs, s) {
                return;
            }
        }
        if self.filters.nonsingular_rational && (0..self.n_points).any(|p| vals[p].is_zero() && self.gradient_zero(coeffs, p)) {
            return;
        }
        if self.filters.no_linear_component && self.has_linear_component(coeffs, mask, n) {
            return;
        }
        acc.passing += 1;
        acc.passing_hist[n] += 1;
        acc.offer(index, n, coeffs, cap);
    }
}

pub fn run_search(task: &SearchTask) -> Result<SearchRecord> {
    task.validate()?;
    let ctx = task.ctx.clone();
    let q = ctx.q();
    let d = task.degree;
    let mut filters = task.filters;
    if let SearchMode::ConstrainedRandom { point, .. } = &task.mode {
        filters.singular_at.get_or_insert(*point);
    }
    let kernel = Kernel::new(ctx.clone(), d, filters);
    let cap = task.witness_cap;
    let n_points = kernel.n_points;
    let merged = match &task.mode {
        SearchMode::Exhaustive => {
            let total = canonical_count(q, kernel.n_mono);
            let chunks = total.div_ceil(EXHAUSTIVE_CHUNK as u128) as usize;
            map_ranges(chunks, 1, task.parallelism, |r| {
                let mut acc = Partial::new(n_points);
                for c in r {
                    let start = c as u128 * EXHAUSTIVE_CHUNK as u128;
                    let end = (start + EXHAUSTIVE_CHUNK as u128).min(total);
                    exhaustive_range(&kernel, start, end, &mut acc, cap);
                }
                acc
            })
        }
        SearchMode::Random { seed, samples } => {
            let chunks = (*samples as usize).div_ceil(RANDOM_CHUNK);
            map_ranges(chunks, 1, task.parallelism, |r| {
                let mut acc = Partial::new(n_points);
                for c in r {
                    random_chunk(&kernel, *seed, c, *samples, &mut acc, cap);
                }
                acc
            })
        }
        SearchMode::ConstrainedRandom { seed, samples, point } => {
            let basis = singular_basis(&ctx, d, point);
            let chunks = (*samples as usize).div_ceil(RANDOM_CHUNK);
            map_ranges(chunks, 1, task.parallelism, |r| {
                let mut acc = Partial::new(n_points);
                for c in r {
                    constrained_chunk(&kernel, &basis, *seed, c, *samples, &mut acc, cap);
                }
                acc
            })
        }
    };
    let mut total = Partial::new(n_points);
    for p in merged {
        total.merge(p, cap);
    }
    let to_map = |h: &[u64]| h.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c)).collect();
    let witnesses = total
        .witnesses
        .iter()
        .map(|(index, n, coeffs)| Witness {
            index: *index,
            n: *n,
            coeffs: coeffs.clone(),
            equation: kernel.curve(coeffs).to_string(),
        })
        .collect();
    let (seed, generator) = match &task.mode {
        SearchMode::Exhaustive => (None, None),
        SearchMode::Random { seed, .. } | SearchMode::ConstrainedRandom { seed, .. } => (Some(*seed), Some(GENERATOR_ID)),
    };
    Ok(SearchRecord {
        field: ctx.spec().to_string(),
        q,
        d,
        mode: task.mode.clone(),
        filters,
        seed,
        generator,
        budget: task.budget,
        curves_examined: total.examined,
        curves_passing: total.passing,
        best_n: total.best,
        witnesses,
        witness_cap: cap,
        histogram: to_map(&total.hist),
        passing_histogram: to_map(&total.passing_hist),
        sziklai: (d as i64 - 1) * q as i64 + 1,
    })
}

/// Walks canonical indices `start..end`, updating point values incrementally.
fn exhaustive_range(k: &Kernel, start: u128, end: u128, acc: &mut Partial, cap: usize) {
    let ctx = &*k.ctx;
    let q = k.q;
    let len = k.n_mono;
    // step[j][c] = (c+1 mod q) - c at position j, times the monomial column, per point.
    let step: Vec<Vec<Vec<Felt>>> = (0..len)
        .map(|j| {
            (0..q)
                .map(|c| {
                    let diff = ctx.sub(Felt((c + 1) % q), Felt(c));
                    (0..k.n_points).map(|p| ctx.mul(diff, k.values[p * len + j])).collect()
                })
                .collect()
        })
        .collect();
    let mut coeffs = vec![0u32; len];
    let mut vals = vec![Felt::ZERO; k.n_points];
    let mut mask = vec![0u64; k.words];
    canonical_vector(q, start, &mut coeffs);
    k.eval_into(&coeffs, &mut vals);
    let mut lead = coeffs.iter().position(|&c| c != 0).expect("canonical");
    let mut idx = start;
    loop {
        k.record(idx, &coeffs, &vals, &mut mask, acc, cap);
        idx += 1;
        if idx >= end {
            break;
        }
        // Odometer over the entries after the leading 1.
        let mut j = len - 1;
        loop {
            if j == lead {
                // Tail exhausted: the next block has its leading 1 one place earlier.
                lead -= 1;
                coeffs.fill(0);
                coeffs[lead] = 1;
                k.eval_into(&coeffs, &mut vals);
                break;
            }
            let c = coeffs[j];
            for (v, s) in vals.iter_mut().zip(&step[j][c as usize]) {
                *v = ctx.add(*v, *s);
            }
            if c + 1 < q {
                coeffs[j] = c + 1;
                break;
            }
            coeffs[j] = 0;
            j -= 1;
        }
    }
}

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

fn random_chunk(k: &Kernel, seed: u64, chunk: usize, samples: u64, acc: &mut Partial, cap: usize) {
    let mut rng = chunk_rng(seed, chunk);
    let start = (chunk * RANDOM_CHUNK) as u64;
    let end = (start + RANDOM_CHUNK as u64).min(samples);
    let mut coeffs = vec![0u32; k.n_mono];
    let mut vals = vec![Felt::ZERO; k.n_points];
    let mut mask = vec![0u64; k.words];
    for i in start..end {
        loop {
            for c in coeffs.iter_mut() {
                *c = rng.gen_range(0..k.q);
            }
            if coeffs.iter().any(|&c| c != 0) {
                break;
            }
        }
        k.eval_into(&coeffs, &mut vals);
        k.record(i as u128, &coeffs, &vals, &mut mask, acc, cap);
    }
}

fn constrained_chunk(k: &Kernel, basis: &[Vec<Felt>], seed: u64, chunk: usize, samples: u64, acc: &mut Partial, cap: usize) {
    let ctx = &*k.ctx;
    let mut rng = chunk_rng(seed, chunk);
    let start = (chunk * RANDOM_CHUNK) as u64;
    let end = (start + RANDOM_CHUNK as u64).min(samples);
    let mut coeffs = vec![0u32; k.n_mono];
    let mut vals = vec![Felt::ZERO; k.n_points];
    let mut mask = vec![0u64; k.words];
    for i in start..end {
        loop {
            sample_span(ctx, basis, &mut rng, &mut coeffs);
            if coeffs.iter().any(|&c| c != 0) {
                break;
            }
        }
        k.eval_into(&coeffs, &mut vals);
        k.record(i as u128, &coeffs, &vals, &mut mask, acc, cap);
    }
}

fn sample_span(ctx: &FieldCtx, basis: &[Vec<Felt>], rng: &mut ChaCha8Rng, out: &mut [u32]) {
    let mut v = vec![Felt::ZERO; out.len()];
    for b in basis {
        let t = Felt(rng.gen_range(0..ctx.q()));
        if t.is_zero() {
            continue;
        }
        for (x, &y) in v.iter_mut().zip(b) {
            *x = ctx.add(*x, ctx.mul(t, y));
        }
    }
    for (o, x) in out.iter_mut().zip(v) {
        *o = x.0;
    }
}

/// Basis of the coefficient vectors with F(P) = F_X(P) = F_Y(P) = F_Z(P) = 0.
fn singular_basis(ctx: &FieldCtx, d: u32, p: &ProjPoint) -> Vec<Vec<Felt>> {
    let c = p.coords();
    let monos = monomials(d);
    let mono_at = |e: [u32; 3]| (0..3).fold(Felt::ONE, |acc, a| ctx.mul(acc, ctx.pow_u(c[a], e[a] as u64)));
    let mut rows = vec![monos.iter().map(|&m| mono_at(m)).collect::<Vec<_>>()];
    for a in 0..3 {
        rows.push(
            monos
                .iter()
                .map(|&m| {
                    if m[a] == 0 {
                        return Felt::ZERO;
                    }
                    let mut e = m;
                    e[a] -= 1;
                    ctx.scale_int(m[a] as u64, mono_at(e))
                })
                .collect(),
        );
    }
    nullspace(ctx, &rows, monos.len())
}

/// `n` curves of degree `d` singular at `p` without a rational linear
/// component, sampled uniformly from the linear conditions at `p`. Stops
/// early (returning fewer) after `64·n` rejected draws.
pub fn random_singular_instances(ctx: &Arc<FieldCtx>, d: u32, p: &ProjPoint, n: usize, seed: u64) -> Result<Vec<PlaneCurve>> {
    if d < 2 {
        return Err(Error::DegreeTooSmall);
    }
    for x in p.coords() {
        ctx.element(x.0)?;
    }
    let basis = singular_basis(ctx, d, p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![0u32; monomial_count(d)];
    let mut out = Vec::with_capacity(n);
    let mut rejected = 0;
    while out.len() < n && rejected < 64 * n.max(1) {
        sample_span(ctx, &basis, &mut rng, &mut coeffs);
        if coeffs.iter().all(|&c| c == 0) {
            rejected += 1;
            continue;
        }
        let c: Vec<Felt> = coeffs.iter().map(|&x| Felt(x)).collect();
        let f = PlaneCurve::from_coeffs(ctx.clone(), d, &c)?;
        if f.has_linear_component().is_some() {
            rejected += 1;
            continue;
        }
        out.push(f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{count_points, singular_rational_points};

    fn exhaustive(q: u32, d: u32, no_linear: bool, par: Parallelism) -> SearchRecord {
        let ctx = FieldCtx::of_order(q).unwrap();
        let filters = SearchFilters { no_linear_component: no_linear, ..Default::default() };
        run_search(&SearchTask::new(ctx, d, SearchMode::Exhaustive).with_filters(filters).with_parallelism(par)).unwrap()
    }

    #[test]
    fn canonical_vectors_enumerate_in_order() {
        let (q, len) = (3, 4);
        let total = canonical_count(q, len);
        assert_eq!(total, 40);
        let mut prev: Option<Vec<u32>> = None;
        let mut v = vec![0; len];
        for i in 0..total {
            canonical_vector(q, i, &mut v);
            assert_eq!(v.iter().find(|&&x| x != 0), Some(&1));
            if let Some(p) = &prev {
                assert!(*p < v);
            }
            prev = Some(v.clone());
        }
    }

    #[test]
    fn conics_over_gf2() {
        let r = exhaustive(2, 2, true, Parallelism::Sequential);
        assert_eq!(r.curves_examined, 63);
        assert_eq!(r.histogram.values().sum::<u64>(), 63);
        assert_eq!(r.best_n, Some(3));
        // Oracle: brute force with the library's own curve type.
        let ctx = FieldCtx::of_order(2).unwrap();
        let mut best = 0;
        let mut v = vec![0u32; 6];
        for i in 0..63 {
            canonical_vector(2, i, &mut v);
            let c: Vec<Felt> = v.iter().map(|&x| Felt(x)).collect();
            let f = PlaneCurve::from_coeffs(ctx.clone(), 2, &c).unwrap();
            let rep = count_points(&f);
            if !rep.has_linear_component() {
                best = best.max(rep.n);
            }
        }
        assert_eq!(best, 3);
    }

    #[test]
    fn cubics_over_gf3() {
        let r = exhaustive(3, 3, true, Parallelism::Auto);
        assert_eq!(r.best_n, Some(7));
        assert_eq!(r.curves_examined as u128, canonical_count(3, 10));
        for w in &r.witnesses {
            let f = w.curve(&FieldCtx::of_order(3).unwrap(), 3).unwrap();
            let rep = count_points(&f);
            assert_eq!(rep.n, w.n);
            assert!(!rep.has_linear_component());
        }
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn incremental_matches_direct() {
        // Small chunks force many block transitions.
        let ctx = FieldCtx::of_order(4).unwrap();
        let k = Kernel::new(ctx.clone(), 2, SearchFilters::default());
        let total = canonical_count(4, 6);
        let mut a = Partial::new(k.n_points);
        for s in (0..total).step_by(37) {
            exhaustive_range(&k, s, (s + 37).min(total), &mut a, 0);
        }
        let mut b = Partial::new(k.n_points);
        let mut v = vec![0; 6];
        let mut vals = vec![Felt::ZERO; k.n_points];
        let mut mask = vec![0; k.words];
        for i in 0..total {
            canonical_vector(4, i, &mut v);
            k.eval_into(&v, &mut vals);
            k.record(i, &v, &vals, &mut mask, &mut b, 0);
        }
        assert_eq!(a.hist, b.hist);
        assert_eq!(a.examined, total as u64);
    }

    #[test]
    fn deterministic_across_workers() {
        let a = exhaustive(3, 2, true, Parallelism::Sequential);
        let b = exhaustive(3, 2, true, Parallelism::Threads(4));
        assert_eq!(a, b);
        let ctx = FieldCtx::of_order(4).unwrap();
        let task = |par| {
            SearchTask::new(ctx.clone(), 3, SearchMode::Random { seed: 7, samples: 10_000 })
                .with_filters(SearchFilters { no_linear_component: true, ..Default::default() })
                .with_parallelism(par)
        };
        let r1 = run_search(&task(Parallelism::Sequential)).unwrap();
        let r2 = run_search(&task(Parallelism::Threads(3))).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.generator, Some(GENERATOR_ID));
        assert_eq!(r1.histogram.values().sum::<u64>(), 10_000);
        let r3 = run_search(&SearchTask::new(ctx.clone(), 3, SearchMode::Random { seed: 8, samples: 10_000 })).unwrap();
        assert_ne!(r1.histogram, r3.histogram);
    }

    #[test]
    fn budget_and_validation() {
        let ctx = FieldCtx::of_order(4).unwrap();
        let t = SearchTask::new(ctx.clone(), 4, SearchMode::Exhaustive);
        assert!(matches!(run_search(&t), Err(Error::BudgetExceeded { .. })));
        let t = SearchTask::new(ctx.clone(), 2, SearchMode::Random { seed: 1, samples: 100 }).with_budget(10);
        assert!(matches!(run_search(&t), Err(Error::BudgetExceeded { .. })));
        let p = ProjPoint::from_index(4, 0);
        let t = SearchTask::new(ctx, 1, SearchMode::ConstrainedRandom { seed: 1, samples: 10, point: p });
        assert!(run_search(&t).is_err());
    }

    #[test]
    fn singular_instances() {
        let ctx = FieldCtx::of_order(5).unwrap();
        let p = ProjPoint::parse(&ctx, "1:2:3").unwrap();
        let curves = random_singular_instances(&ctx, 4, &p, 50, 3).unwrap();
        assert_eq!(curves.len(), 50);
        for f in &curves {
            assert!(singular_rational_points(f).contains(&p));
            assert!(count_points(f).n <= 15);
        }
        let again = random_singular_instances(&ctx, 4, &p, 50, 3).unwrap();
        assert_eq!(curves, again);
    }

    #[test]
    fn constrained_mode_agrees_with_filter() {
        let ctx = FieldCtx::of_order(3).unwrap();
        let p = ProjPoint::parse(&ctx, "0:0:1").unwrap();
        let t = SearchTask::new(ctx.clone(), 3, SearchMode::ConstrainedRandom { seed: 5, samples: 2000, point: p })
            .with_filters(SearchFilters { no_linear_component: true, ..Default::default() });
        let r = run_search(&t).unwrap();
        assert_eq!(r.curves_examined, 2000);
        assert_eq!(r.curves_passing, r.passing_histogram.values().sum::<u64>());
        assert!(r.best_n.unwrap() as i64 <= 6);
        for w in &r.witnesses {
            let f = w.curve(&ctx, 3).unwrap();
            assert!(singular_rational_points(&f).contains(&p));
        }
    }
}
