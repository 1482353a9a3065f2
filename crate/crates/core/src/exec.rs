//! Sequential and rayon-backed execution of independent work items.
//!
//! Both paths return results in input order, so callers observe the same
//! output whichever one runs. Without the `parallel` feature
//! [`Execution::Parallel`] quietly runs sequentially.

/// How to run data-parallel loops.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether work actually fans out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// The first `(index, value)` in input order for which `f` yields a value.
pub fn find_first<T, R, F>(exec: Execution, items: &[T], f: F) -> Option<(usize, R)>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items
            .par_iter()
            .enumerate()
            .filter_map(|(i, t)| f(t).map(|r| (i, r)))
            .find_first(|_| true);
    }
    let _ = exec;
    items
        .iter()
        .enumerate()
        .find_map(|(i, t)| f(t).map(|r| (i, r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let items: Vec<u32> = (0..1000).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let out = map(exec, &items, |x| x * 2);
            assert_eq!(out, items.iter().map(|x| x * 2).collect::<Vec<_>>());
        }
    }

    #[test]
    fn find_first_is_the_leftmost_hit() {
        let items: Vec<u32> = (0..5000).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let hit = find_first(exec, &items, |&x| (x % 997 == 13 && x > 100).then_some(x));
            assert_eq!(hit, Some((1010, 1010)));
            assert_eq!(find_first(exec, &items, |_| None::<()>), None);
        }
    }
}
