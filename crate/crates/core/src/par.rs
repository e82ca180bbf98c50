//! Data-parallel helpers for batch work (samples, enumerations, level tables).
//!
//! With the `parallel` feature these go through rayon. Without it, or with
//! [`Exec::Sequential`], they run on the calling thread. Results always come
//! back in input order, so output never depends on the thread count.

/// Top-level blocks smaller than this are filled sequentially.
pub(crate) const MIN_PARALLEL_BLOCK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Like [`Exec::map`] but stops at an error. Which error is reported when
    /// several items fail is the first in input order.
    pub fn try_map<T, U, E, F>(self, items: &[T], f: F) -> Result<Vec<U>, E>
    where
        T: Sync,
        U: Send,
        E: Send,
        F: Fn(&T) -> Result<U, E> + Sync + Send,
    {
        self.map(items, f).into_iter().collect()
    }
}

pub(crate) fn for_each_chunk<F>(out: &mut [u32], block: usize, f: F)
where
    F: Fn((usize, &mut [u32])) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        out.par_chunks_mut(block).enumerate().for_each(f);
    }
    #[cfg(not(feature = "parallel"))]
    out.chunks_mut(block).enumerate().for_each(f);
}
