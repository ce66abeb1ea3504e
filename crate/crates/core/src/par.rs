//! Data-parallel helpers with a sequential fallback when the `parallel`
//! feature is disabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_range<U: Send>(n: usize, f: impl Fn(usize) -> U + Sync + Send) -> Vec<U> {
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<U: Send>(n: usize, f: impl Fn(usize) -> U + Sync + Send) -> Vec<U> {
    (0..n).map(f).collect()
}

/// Least index in `0..n` satisfying the predicate.
#[cfg(feature = "parallel")]
pub fn find_first(n: usize, f: impl Fn(usize) -> bool + Sync + Send) -> Option<usize> {
    (0..n).into_par_iter().find_first(|&i| f(i))
}

#[cfg(not(feature = "parallel"))]
pub fn find_first(n: usize, f: impl Fn(usize) -> bool + Sync + Send) -> Option<usize> {
    (0..n).find(|&i| f(i))
}

#[cfg(feature = "parallel")]
pub fn all(n: usize, f: impl Fn(usize) -> bool + Sync + Send) -> bool {
    (0..n).into_par_iter().all(f)
}

#[cfg(not(feature = "parallel"))]
pub fn all(n: usize, f: impl Fn(usize) -> bool + Sync + Send) -> bool {
    (0..n).all(f)
}

/// First `Some` result in item order.
#[cfg(feature = "parallel")]
pub fn find_map_first<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Option<U> + Sync + Send) -> Option<U> {
    items.par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub fn find_map_first<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Option<U> + Sync + Send) -> Option<U> {
    items.iter().find_map(f)
}
