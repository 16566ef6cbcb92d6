//! Execution policy for the enumeration loops.
//!
//! With the `parallel` feature, [`Execution::Parallel`] runs on rayon's
//! current thread pool; without it, every policy runs sequentially. Results
//! are always returned in input order.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
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

    /// Like [`Execution::map`], with per-worker scratch state built by `init`.
    pub fn map_init<T, S, R, I, F>(self, items: &[T], init: I, f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        I: Fn() -> S + Sync + Send,
        F: Fn(&mut S, &T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map_init(&init, |s, x| f(s, x)).collect();
        }
        let mut state = init();
        items.iter().map(|x| f(&mut state, x)).collect()
    }

    /// Maps `f` over `0..len`, preserving order.
    pub fn map_range<R, F>(self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }
}

/// Sizes the global worker pool used by [`Execution::Parallel`]; `0` keeps
/// the default of one worker per core. A no-op without the `parallel` feature.
pub fn set_workers(jobs: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    if jobs > 0 {
        return rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| e.to_string());
    }
    let _ = jobs;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u32> = (0..1000).collect();
        let seq = Execution::Sequential.map(&items, |x| x * 3);
        let par = Execution::Parallel.map(&items, |x| x * 3);
        assert_eq!(seq, par);
        assert_eq!(Execution::Parallel.map_range(10, |i| i), (0..10).collect::<Vec<_>>());
    }
}
