//! Order-preserving data-parallel helpers.
//!
//! With the `parallel` feature the helpers run on the current rayon pool;
//! without it they fall back to plain iterators. Results are always
//! returned in input order, so reports stay deterministic either way.

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

/// Returns the result for the earliest item (in input order) for which `f`
/// yields `Some`.
pub fn find_map_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().find_map(f)
    }
}

/// Concatenates the per-item outputs of `f`, preserving order.
pub fn flat_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    map(items, f).into_iter().flatten().collect()
}

/// Whether the crate was built with the rayon backend.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let xs: Vec<u32> = (0..1000).collect();
        let ys = map(&xs, |x| x * 2);
        assert!(ys.iter().enumerate().all(|(i, y)| *y == 2 * i as u32));
    }

    #[test]
    fn find_map_first_is_leftmost() {
        let xs: Vec<u32> = (0..1000).collect();
        let hit = find_map_first(&xs, |x| (x % 7 == 6).then_some(*x));
        assert_eq!(hit, Some(6));
    }
}
