//! Data-parallel map over replication indices.
//!
//! With the `parallel` feature (default) the work is spread over the rayon
//! pool; without it the same loop runs sequentially. Results always come
//! back ordered by index, so both modes produce identical output for
//! index-keyed streams.

/// Map `f` over `0..count`, in parallel when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(count: u32, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u32) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

/// Map `f` over `0..count`, in parallel when the `parallel` feature is on.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(count: u32, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u32) -> T + Sync + Send,
{
    map_indexed_sequential(count, f)
}

/// Sequential reference path; always available so the two modes can be
/// compared directly in tests and benchmarks.
pub fn map_indexed_sequential<T, F>(count: u32, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u32) -> T + Sync + Send,
{
    (0..count).map(f).collect()
}

/// Cap the global worker pool (the `WDEN_THREADS` hook). Returns false when
/// the pool was already initialized or the build has no parallel support.
#[cfg(feature = "parallel")]
pub fn set_thread_cap(threads: usize) -> bool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .is_ok()
}

/// Cap the global worker pool (the `WDEN_THREADS` hook). Returns false when
/// the pool was already initialized or the build has no parallel support.
#[cfg(not(feature = "parallel"))]
pub fn set_thread_cap(_threads: usize) -> bool {
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let a = map_indexed(17, |i| i * i);
        let b = map_indexed_sequential(17, |i| i * i);
        assert_eq!(a, b);
    }
}
