//! Data-parallel execution with a sequential fallback.
//!
//! Node evaluations are mapped into a vector (in parallel when the `parallel`
//! feature is enabled) and then reduced with a fixed pairwise tree, so sums
//! are bit-identical regardless of the thread count.

use num_complex::Complex64;

use crate::clifford::Mv;

/// Execution strategy for node sums and grid sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled; otherwise identical
    /// to [`Exec::Sequential`].
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this strategy actually runs on multiple threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `(0..len).map(f).collect()`, preserving index order.
    pub fn map<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Like [`Exec::map`] but stops at the first error (in index order).
    pub fn try_map<T, E, F>(self, len: usize, f: F) -> Result<Vec<T>, E>
    where
        T: Send,
        E: Send,
        F: Fn(usize) -> Result<T, E> + Sync + Send,
    {
        self.map(len, f).into_iter().collect()
    }
}

/// Pairwise (tree) reduction in a fixed order; `None` for an empty slice.
pub fn pairwise_reduce<T: Clone>(items: &[T], add: &impl Fn(&T, &T) -> T) -> Option<T> {
    match items.len() {
        0 => None,
        1 => Some(items[0].clone()),
        len => {
            let (lo, hi) = items.split_at(len / 2);
            let a = pairwise_reduce(lo, add)?;
            let b = pairwise_reduce(hi, add)?;
            Some(add(&a, &b))
        }
    }
}

pub fn pairwise_sum_f64(items: &[f64]) -> f64 {
    pairwise_reduce(items, &|a, b| a + b).unwrap_or(0.0)
}

pub fn pairwise_sum_c64(items: &[Complex64]) -> Complex64 {
    pairwise_reduce(items, &|a, b| a + b).unwrap_or_default()
}

/// Pairwise sum of multivectors; the zero of `dim` generators if empty.
pub fn pairwise_sum_mv(items: &[Mv], dim: u32) -> Mv {
    pairwise_reduce(items, &|a, b| a + b).unwrap_or_else(|| Mv::zero(dim))
}

/// Component-wise pairwise sum of equal-length vectors.
pub fn pairwise_sum_vec(items: &[Vec<Complex64>], len: usize) -> Vec<Complex64> {
    pairwise_reduce(items, &|a: &Vec<Complex64>, b: &Vec<Complex64>| {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    })
    .unwrap_or_else(|| vec![Complex64::default(); len])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let v = exec.map(1000, |i| i * 2);
            assert!(v.iter().enumerate().all(|(i, x)| *x == 2 * i));
        }
    }

    #[test]
    fn pairwise_sum_is_thread_independent() {
        let f = |i: usize| ((i as f64) * 0.37).sin() * 1e-3 + 1.0 / (i as f64 + 1.0);
        let a = pairwise_sum_f64(&Exec::Sequential.map(10_007, f));
        let b = pairwise_sum_f64(&Exec::Parallel.map(10_007, f));
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn empty_sums() {
        assert_eq!(pairwise_sum_f64(&[]), 0.0);
        assert!(pairwise_sum_mv(&[], 4).is_zero());
        assert_eq!(pairwise_sum_vec(&[], 3).len(), 3);
    }

    #[test]
    fn try_map_reports_first_error() {
        let r: Result<Vec<usize>, usize> =
            Exec::Parallel.try_map(100, |i| if i % 30 == 29 { Err(i) } else { Ok(i) });
        assert_eq!(r, Err(29));
    }
}
