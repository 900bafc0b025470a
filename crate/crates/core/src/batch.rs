//! Batch evaluation over independent items.
//!
//! With the `parallel` feature the work is spread over a rayon pool;
//! without it everything runs on the calling thread. Results are always
//! returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every `(index, item)`, in parallel when available.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    items.par_iter().enumerate().map(|(i, x)| f(i, x)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    map_sequential(items, f)
}

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(usize, &T) -> R,
{
    items.iter().enumerate().map(|(i, x)| f(i, x)).collect()
}

/// As [`map`] with at most `jobs` worker threads; `jobs <= 1` is sequential.
pub fn map_with_jobs<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    if jobs <= 1 {
        return map_sequential(items, f);
    }
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| map(items, f)),
            Err(_) => map_sequential(items, f),
        }
    }
    #[cfg(not(feature = "parallel"))]
    map_sequential(items, f)
}

/// `0..n` as a vector, for index-driven batches.
pub fn indices(n: usize) -> Vec<u64> {
    (0..n as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let f = |i: usize, x: &u64| x * x + i as u64;
        assert_eq!(map(&xs, f), map_sequential(&xs, f));
        assert_eq!(map_with_jobs(&xs, 3, f), map_sequential(&xs, f));
    }
}
