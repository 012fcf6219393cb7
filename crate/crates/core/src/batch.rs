//! Fan-out of independent instances. With the `parallel` feature the work is
//! spread over the rayon pool; without it the same API runs sequentially.
//! Results always come back in input order, so output never depends on
//! scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    map_sequential(items, f)
}

/// Always sequential; the baseline the benches compare against.
pub fn map_sequential<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Like [`par_map`] but bounded to `jobs` worker threads (`0` = pool default).
#[cfg(feature = "parallel")]
pub fn par_map_jobs<T, U, F>(items: &[T], jobs: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    if jobs == 1 {
        return map_sequential(items, f);
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| par_map(items, f)),
        Err(_) => par_map(items, f),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn par_map_jobs<T, U, F>(items: &[T], _jobs: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    map_sequential(items, f)
}

/// Whether this build fans out at all.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..500).collect();
        let par = par_map(&xs, |x| x * x);
        let seq = map_sequential(&xs, |x| x * x);
        assert_eq!(par, seq);
        assert_eq!(par_map_jobs(&xs, 3, |x| x + 1)[499], 500);
    }
}
