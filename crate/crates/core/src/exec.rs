//! Sequential or rayon-backed execution of index-space sweeps.
//!
//! Requires crate feature `parallel` for [`Exec::Parallel`] to actually run
//! in parallel; without it that variant falls back to the sequential path.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// `f(i)` holds for every `i < n`. Stops early on the first failure.
    pub fn all<F>(self, n: usize, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().all(f),
            _ => (0..n).all(f),
        }
    }

    /// `[f(0), …, f(n-1)]` in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Smallest `i < n` with `f(i)`, if any.
    pub fn position<F>(self, n: usize, f: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().position_first(f),
            _ => (0..n).position(f),
        }
    }
}

/// Decode a mixed-radix index into a tuple over a carrier of size `k`,
/// most significant position first.
pub fn unrank(mut r: usize, k: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = r % k;
        r /= k;
    }
}

pub fn rank(args: &[usize], k: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * k + a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert!(exec.all(100, |i| i < 100));
            assert!(!exec.all(100, |i| i != 57));
            assert_eq!(exec.map(5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(exec.position(100, |i| i % 7 == 6 && i > 10), Some(13));
        }
    }

    #[test]
    fn rank_round_trip() {
        let mut t = [0; 3];
        for r in 0..125 {
            unrank(r, 5, &mut t);
            assert_eq!(rank(&t, 5), r);
        }
        unrank(7, 5, &mut t);
        assert_eq!(t, [0, 1, 2]);
    }
}
