//! Deterministic data-parallel primitives.
//!
//! All reductions are chunked with a fixed chunk size: partial sums are
//! computed per chunk (in index order within the chunk) and then folded
//! sequentially in chunk order. The floating-point result is therefore
//! identical for the sequential build, the rayon build, and any rayon
//! thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) const CHUNK: usize = 8192;

/// Fill `out[i] = f(i)` for every index.
pub(crate) fn fill<T, F>(out: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        out.par_chunks_mut(CHUNK).enumerate().for_each(|(c, chunk)| {
            let base = c * CHUNK;
            for (k, slot) in chunk.iter_mut().enumerate() {
                *slot = f(base + k);
            }
        });
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (c, chunk) in out.chunks_mut(CHUNK).enumerate() {
            let base = c * CHUNK;
            for (k, slot) in chunk.iter_mut().enumerate() {
                *slot = f(base + k);
            }
        }
    }
}

/// Sum `K` accumulators of `f(i)` over `i in 0..n`, chunk-deterministically.
pub(crate) fn sums<const K: usize, F>(n: usize, f: F) -> [f64; K]
where
    F: Fn(usize) -> [f64; K] + Sync,
{
    let nchunks = n.div_ceil(CHUNK);
    let partial = |c: usize| -> [f64; K] {
        let lo = c * CHUNK;
        let hi = ((c + 1) * CHUNK).min(n);
        let mut acc = [0.0_f64; K];
        for i in lo..hi {
            let v = f(i);
            for (a, x) in acc.iter_mut().zip(v.iter()) {
                *a += x;
            }
        }
        acc
    };
    let partials: Vec<[f64; K]> = {
        #[cfg(feature = "parallel")]
        {
            (0..nchunks).into_par_iter().map(partial).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..nchunks).map(partial).collect()
        }
    };
    let mut total = [0.0_f64; K];
    for p in partials {
        for (t, x) in total.iter_mut().zip(p.iter()) {
            *t += x;
        }
    }
    total
}

/// Apply `f` to every element in place.
pub(crate) fn for_each_mut<T, F>(data: &mut [T], f: F)
where
    T: Send,
    F: Fn(&mut T) + Sync,
{
    #[cfg(feature = "parallel")]
    {
        data.par_chunks_mut(CHUNK).for_each(|chunk| {
            for x in chunk {
                f(x);
            }
        });
    }
    #[cfg(not(feature = "parallel"))]
    {
        for x in data.iter_mut() {
            f(x);
        }
    }
}

/// Map independent work items, preserving input order in the output.
pub(crate) fn map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunked_sum_matches_plain_loop() {
        let n = 3 * CHUNK + 17;
        let [s] = sums::<1, _>(n, |i| [1.0 / (1.0 + i as f64)]);
        let mut plain = 0.0;
        for c in 0..n.div_ceil(CHUNK) {
            let mut acc = 0.0;
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                acc += 1.0 / (1.0 + i as f64);
            }
            plain += acc;
        }
        assert_eq!(s, plain);
    }

    #[test]
    fn fill_covers_all_indices() {
        let mut v = vec![0usize; 2 * CHUNK + 3];
        fill(&mut v, |i| i + 1);
        for (i, x) in v.iter().enumerate() {
            assert_eq!(*x, i + 1);
        }
    }
}
