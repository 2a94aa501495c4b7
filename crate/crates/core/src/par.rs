//! Data-parallel helpers. With the `parallel` feature work is spread over a
//! rayon pool; without it, or with [`Parallelism::Sequential`], the same
//! chunks run in order on the calling thread. Chunk boundaries never depend
//! on the worker count, so merged results are identical either way.

use std::ops::Range;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    /// The global rayon pool (machine parallelism).
    #[default]
    Auto,
    Sequential,
    /// A dedicated pool with this many threads.
    Threads(usize),
}

impl Parallelism {
    pub fn from_workers(workers: Option<usize>) -> Parallelism {
        match workers {
            None | Some(0) => Parallelism::Auto,
            Some(1) => Parallelism::Sequential,
            Some(n) => Parallelism::Threads(n),
        }
    }

    pub fn is_sequential(self) -> bool {
        !cfg!(feature = "parallel") || self == Parallelism::Sequential
    }
}

pub fn chunks(n: usize, chunk: usize) -> Vec<Range<usize>> {
    let chunk = chunk.max(1);
    (0..n.div_ceil(chunk)).map(|i| i * chunk..((i + 1) * chunk).min(n)).collect()
}

/// Applies `f` to consecutive ranges covering `0..n`; results come back in range order.
pub fn map_ranges<T, F>(n: usize, chunk: usize, par: Parallelism, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync + Send,
{
    let ranges = chunks(n, chunk);
    if par.is_sequential() || ranges.len() <= 1 {
        return ranges.into_iter().map(f).collect();
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let run = || ranges.into_par_iter().map(&f).collect();
        match par {
            Parallelism::Threads(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
                Ok(pool) => pool.install(run),
                Err(_) => run(),
            },
            _ => run(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    unreachable!()
}

/// Returns some `Some` produced by `f` over the ranges covering `0..n`,
/// stopping early. Sequential runs return the first hit in range order;
/// parallel runs may return any hit.
pub fn find_any_range<T, F>(n: usize, chunk: usize, par: Parallelism, f: F) -> Option<T>
where
    T: Send,
    F: Fn(Range<usize>) -> Option<T> + Sync + Send,
{
    let ranges = chunks(n, chunk);
    if par.is_sequential() || ranges.len() <= 1 {
        return ranges.into_iter().find_map(f);
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let run = || ranges.into_par_iter().find_map_any(&f);
        match par {
            Parallelism::Threads(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
                Ok(pool) => pool.install(run),
                Err(_) => run(),
            },
            _ => run(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_cover_and_agree() {
        let seq = map_ranges(1003, 17, Parallelism::Sequential, |r| r.sum::<usize>());
        let par = map_ranges(1003, 17, Parallelism::Threads(3), |r| r.sum::<usize>());
        assert_eq!(seq, par);
        assert_eq!(seq.iter().sum::<usize>(), (0..1003).sum::<usize>());
        assert_eq!(chunks(0, 5).len(), 0);
    }

    #[test]
    fn find_any() {
        let hit = find_any_range(1000, 10, Parallelism::Auto, |r| r.clone().find(|&i| i % 97 == 96));
        assert_eq!(hit.map(|i| i % 97), Some(96));
        assert_eq!(find_any_range(1000, 10, Parallelism::Sequential, |r| r.clone().find(|&i| i > 5000)), None);
    }
}
