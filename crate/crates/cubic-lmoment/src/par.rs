//! Bulk-map helpers with identical results on and off the thread pool.
//!
//! Every embarrassingly parallel loop in the crate goes through
//! [`batch_map`]. With the `parallel` feature (the default) it fans out over
//! rayon; without it, it is a plain iterator map. Results are collected in
//! input order and all reductions downstream fold that ordered vector
//! sequentially, so worker count never changes a single bit of output.

/// Applies `f` to every item, returning results in input order.
#[cfg(feature = "parallel")]
pub fn batch_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Applies `f` to every item, returning results in input order.
#[cfg(not(feature = "parallel"))]
pub fn batch_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    batch_map_serial(items, f)
}

/// Single-threaded twin of [`batch_map`], always available; the benchmark
/// suite compares the two directly.
pub fn batch_map_serial<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Caps the global worker pool. `None` keeps the rayon default (one worker
/// per logical CPU). Calling it twice, or after the pool has started, is
/// harmless: the first configuration wins.
#[cfg(feature = "parallel")]
pub fn configure_threads(n: Option<usize>) {
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

/// Caps the global worker pool. Without the `parallel` feature there is no
/// pool, so this is a no-op.
#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_n: Option<usize>) {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_serial_agree_bit_for_bit() {
        let items: Vec<i64> = (0..10_000).collect();
        let f = |x: &i64| (*x as f64).sqrt().sin() * 1e9;
        let a = batch_map(&items, f);
        let b = batch_map_serial(&items, f);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn order_is_preserved() {
        let items: Vec<usize> = (0..5000).collect();
        let out = batch_map(&items, |x| x * 2);
        for (i, v) in out.iter().enumerate() {
            assert_eq!(*v, i * 2);
        }
    }
}
