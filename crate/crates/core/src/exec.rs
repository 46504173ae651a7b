//! Data-parallel sweeps over index ranges.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] runs on the
//! rayon pool; without it every sweep runs sequentially. Results never
//! depend on the mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `(0..n).map(f)`, in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Indices satisfying `pred`, ascending.
    pub fn filter<F>(self, n: usize, pred: F) -> Vec<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().filter(|&i| pred(i)).collect();
        }
        (0..n).filter(|&i| pred(i)).collect()
    }

    pub fn count<F>(self, n: usize, pred: F) -> usize
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().filter(|&i| pred(i)).count();
        }
        (0..n).filter(|&i| pred(i)).count()
    }

    /// Least index satisfying `pred`.
    pub fn find_first<F>(self, n: usize, pred: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().find_first(|&i| pred(i));
        }
        (0..n).find(|&i| pred(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(exec.map(5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(exec.filter(10, |i| i % 3 == 0), vec![0, 3, 6, 9]);
            assert_eq!(exec.count(10, |i| i % 2 == 0), 5);
            assert_eq!(exec.find_first(100, |i| i > 41 && i % 7 == 0), Some(42));
            assert_eq!(exec.find_first(10, |_| false), None);
        }
    }
}
