//! Data-parallel dispatch.
//!
//! Hot loops (term expansion, group actions, matching enumeration) are
//! written once against [`Execution`]. With the `parallel` feature the
//! parallel arm runs on rayon; without it both arms are sequential.
//! Results never depend on the arm taken: every reduction is an exact sum
//! merged into an ordered map.

/// How a data-parallel loop should be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// True if this mode actually fans out to a thread pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Map every item and collect in input order.
    pub fn map_collect<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Returns true if the predicate holds for any item. Stops early.
    pub fn any<T, F>(self, items: &[T], pred: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().any(pred);
        }
        items.iter().any(pred)
    }

    /// `f` of the first item (in input order) for which it returns `Some`.
    pub fn find_map_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().find_map_first(f);
        }
        items.iter().find_map(f)
    }

    /// Fold chunks of `items` into accumulators and reduce them.
    ///
    /// `reduce` must be associative and commutative for the result to be
    /// independent of scheduling.
    pub fn fold_reduce<T, A, I, F, R>(self, items: &[T], init: I, fold: F, reduce: R) -> A
    where
        T: Sync,
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, &T) -> A + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && items.len() >= PARALLEL_THRESHOLD {
            use rayon::prelude::*;
            return items
                .par_iter()
                .with_min_len(PARALLEL_THRESHOLD / 4)
                .fold(&init, &fold)
                .reduce(&init, &reduce);
        }
        let _ = &reduce;
        items.iter().fold(init(), fold)
    }
}

/// Below this many items the sequential loop wins on overhead.
#[cfg(feature = "parallel")]
const PARALLEL_THRESHOLD: usize = 64;
