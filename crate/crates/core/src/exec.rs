//! Thin execution layer: data-parallel when the `parallel` feature is on,
//! plain sequential iteration otherwise. Reductions are deterministic in both
//! builds (results are collected in input order; the arithmetic is exact, so
//! regrouping cannot change values).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
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

/// Finds the first item (in input order) for which `f` returns `Some`.
pub fn find_first_map<T, U, F>(items: &[T], f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().filter_map(f).find_first(|_| true)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().filter_map(f).next()
    }
}

/// Applies `f` to every element with its index, possibly in parallel.
pub fn for_each_indexed_mut<T, F>(items: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter_mut().enumerate().for_each(|(i, x)| f(i, x));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (i, x) in items.iter_mut().enumerate() {
            f(i, x);
        }
    }
}

/// True when this build actually fans work out over a thread pool.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Caps the global thread pool. No-op in sequential builds or once any
/// parallel work has already run.
pub fn configure_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
    }
}
