//! Data-parallel map with a sequential fallback.
//!
//! With the default `parallel` feature the map fans out over the rayon
//! thread pool; built with `--no-default-features` the same call runs
//! sequentially. Either way the output order matches the input order, so
//! callers cannot observe the difference apart from wall time.

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Always-sequential map with the same signature, kept as the benchmark
/// baseline for the parallel path.
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let input: Vec<u64> = (0..1000).collect();
        let out = par_map(&input, |x| x * 2);
        let seq = seq_map(&input, |x| x * 2);
        assert_eq!(out, seq);
        assert_eq!(out[501], 1002);
    }
}
