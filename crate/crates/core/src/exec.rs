//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Strategy::Parallel`] runs on
//! the rayon global pool. Without it, both strategies execute sequentially,
//! so callers never need to `cfg` their own code. Output ordering is the same
//! under either strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Slices shorter than this are always processed sequentially.
pub const PAR_THRESHOLD: usize = 192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// Whether work of `len` items should actually fan out.
    pub fn fans_out(self, len: usize) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel && len >= PAR_THRESHOLD
    }

    /// The strategy to use for `len` items: sequential below the threshold.
    pub fn for_len(self, len: usize) -> Strategy {
        if self.fans_out(len) {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Order-preserving map over `start..end`.
pub fn map_range<R, F>(strategy: Strategy, start: usize, end: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel {
        return (start..end).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (start..end).map(f).collect()
}

/// `dst[k] = op(dst[k], src[k])` for every k, fanning out on long slices.
pub fn zip_update<A, B, F>(strategy: Strategy, dst: &mut [A], src: &[B], op: F)
where
    A: Send,
    B: Sync,
    F: Fn(&mut A, &B) + Sync + Send,
{
    debug_assert_eq!(dst.len(), src.len());
    #[cfg(feature = "parallel")]
    if strategy.fans_out(dst.len()) {
        dst.par_iter_mut()
            .zip(src.par_iter())
            .with_min_len(PAR_THRESHOLD / 2)
            .for_each(|(d, s)| op(d, s));
        return;
    }
    let _ = strategy;
    dst.iter_mut().zip(src).for_each(|(d, s)| op(d, s));
}
