//! Index-parallel helpers for the exhaustive checks.
//!
//! With the `parallel` feature (on by default) these fan out over rayon's
//! pool; without it they are plain sequential loops. Either way results are
//! returned in index order and the reported failure is the first one in
//! canonical order, so output does not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Runs `check` on `0..n` and returns the failure with the smallest index.
pub fn first_failure<E, F>(n: usize, check: F) -> Result<(), E>
where
    E: Send,
    F: Fn(usize) -> Result<(), E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    let found = (0..n).into_par_iter().find_map_first(|i| check(i).err());
    #[cfg(not(feature = "parallel"))]
    let found = (0..n).find_map(|i| check(i).err());
    match found {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Order-preserving map over `0..n`.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Order-preserving fallible map; the error reported is the one with the smallest index.
pub fn try_map_indexed<T, E, F>(n: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    map_indexed(n, f).into_iter().collect()
}

/// Whether the crate was built with the rayon backend.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_canonical() {
        let r = first_failure(1000, |i| if i % 7 == 3 { Err(i) } else { Ok(()) });
        assert_eq!(r, Err(3));
        assert_eq!(first_failure(10, |_| Ok::<(), ()>(())), Ok(()));
    }

    #[test]
    fn maps_preserve_order() {
        assert_eq!(map_indexed(5, |i| i * i), vec![0, 1, 4, 9, 16]);
        let r: Result<Vec<usize>, usize> = try_map_indexed(5, |i| if i >= 2 { Err(i) } else { Ok(i) });
        assert_eq!(r, Err(2));
    }
}
