//! Execution strategy for the data-parallel loops (trial batches, table
//! cells, per-edge message updates).
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] runs on the
//! rayon global pool, or on whatever pool the caller installed. Without the
//! feature every strategy runs sequentially. Results are always returned in
//! index order, so output never depends on the worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when this strategy will actually fan out to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `(0..len).map(f).collect()`, possibly in parallel.
    pub fn map_range<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Fills `out[i] = f(i)` for every slot.
    pub fn fill_indexed<T, F>(self, out: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            out.par_iter_mut()
                .enumerate()
                .for_each(|(i, slot)| *slot = f(i));
            return;
        }
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = f(i);
        }
    }

    /// Runs `op` inside a dedicated pool of `workers` threads. Falls back to
    /// calling `op` directly when `workers` is `None`, the strategy is
    /// sequential, or the feature is off.
    pub fn with_workers<R, F>(self, workers: Option<usize>, op: F) -> R
    where
        R: Send,
        F: FnOnce() -> R + Send,
    {
        #[cfg(feature = "parallel")]
        if let (true, Some(n)) = (self.is_parallel(), workers) {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
                return pool.install(op);
            }
        }
        let _ = workers;
        op()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_range_preserves_order() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let v = exec.map_range(1000, |i| i * i);
            assert!(v.iter().enumerate().all(|(i, &x)| x == i * i));
        }
    }

    #[test]
    fn fill_indexed_matches_sequential() {
        let mut a = vec![0u64; 513];
        let mut b = vec![0u64; 513];
        Exec::Sequential.fill_indexed(&mut a, |i| (i as u64).wrapping_mul(2654435761));
        Exec::Parallel.fill_indexed(&mut b, |i| (i as u64).wrapping_mul(2654435761));
        assert_eq!(a, b);
    }

    #[test]
    fn with_workers_runs_closure() {
        assert_eq!(Exec::Parallel.with_workers(Some(2), || 7), 7);
        assert_eq!(Exec::Sequential.with_workers(None, || 8), 8);
    }
}
