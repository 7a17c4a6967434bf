//! Deterministic parallel sweeps.
//!
//! Work items are independent and pure; results are gathered in input
//! order, so every aggregate is identical for any thread count.

use rayon::prelude::*;

/// Runs `f` inside a dedicated pool with `threads` workers (`0` means the
/// rayon default).
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Maps every item in parallel, keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.par_iter().map(f).collect()
}

/// Parallel sum of `f` over the items.
pub fn par_sum<T: Sync>(items: &[T], f: impl Fn(&T) -> u64 + Sync + Send) -> u64 {
    par_map(items, f).into_iter().sum()
}

/// Items whose value under `f` is `Some`, with the values, in input order.
pub fn par_filter_map<T: Sync + Clone + Send, R: Send>(
    items: &[T],
    f: impl Fn(&T) -> Option<R> + Sync + Send,
) -> Vec<(T, R)> {
    items
        .par_iter()
        .filter_map(|t| f(t).map(|r| (t.clone(), r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_sum_do_not_depend_on_threads() {
        let items: Vec<u64> = (0..1000).collect();
        let one = with_threads(1, || par_map(&items, |x| x * x));
        let four = with_threads(4, || par_map(&items, |x| x * x));
        assert_eq!(one, four);
        assert_eq!(with_threads(3, || par_sum(&items, |x| *x)), 499_500);
        let odd = par_filter_map(&items, |x| (x % 2 == 1).then_some(*x));
        assert_eq!(odd.len(), 500);
        assert_eq!(odd[0], (1, 1));
    }
}
