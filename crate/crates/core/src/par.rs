//! Data-parallel helpers. With the `parallel` feature the sweeps run on rayon;
//! without it they fall back to plain iterators with identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
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

/// Maps `f` over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Like [`map_range`] but flattens the per-index results.
pub fn flat_map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> Vec<R> + Sync + Send,
{
    map_range(n, f).into_iter().flatten().collect()
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
