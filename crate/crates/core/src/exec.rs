//! Execution strategy for the data-parallel searches.
//!
//! With the `parallel` feature (default) `Exec::Parallel` runs on the rayon pool;
//! without it every strategy runs sequentially. Both strategies return identical
//! results: searches resolve to the minimal index that succeeds.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Smallest `i` in `0..end` with `pred(i)`.
pub fn find_first<F>(exec: Exec, end: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..end).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = exec;
    (0..end).find(|&i| pred(i))
}

/// `f(i)` for the smallest `i` in `0..end` where it is `Some`.
pub fn find_map_first<T, F>(exec: Exec, end: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..end).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..end).find_map(f)
}

/// Order-preserving map.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(find_first(exec, 1000, |i| i % 97 == 96), Some(96));
            assert_eq!(find_first(exec, 10, |_| false), None);
            assert_eq!(
                find_map_first(exec, 100, |i| (i > 40 && i % 7 == 0).then_some(i * 2)),
                Some(84)
            );
            assert_eq!(map(exec, &[1, 2, 3], |x| x * 10), vec![10, 20, 30]);
        }
    }
}
