//! Execution dispatch: data-parallel by default, sequential on demand.
//!
//! Every parallel site in the crate funnels through these helpers so the
//! sequential fallback is a single switch, not a code fork. Results are
//! collected in input order, so both modes produce identical output; the
//! benches compare their wall time on the heavier entry points.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with parallel dispatch disabled on this thread.
///
/// Used by the benches to measure the sequential path of a binary built with
/// the `parallel` feature; harmless to nest.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    FORCE_SEQUENTIAL.with(|flag| {
        let prev = flag.replace(true);
        let out = f();
        flag.set(prev);
        out
    })
}

fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.with(Cell::get)
}

/// Order-preserving map over a slice.
pub fn map_slice<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Order-preserving map over an index range `0..n`.
pub fn map_range<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    (0..n).map(f).collect()
}

/// Order-preserving fallible map over an index range; first error wins.
pub fn try_map_range<R: Send, E: Send>(
    n: usize,
    f: impl Fn(usize) -> Result<R, E> + Sync + Send,
) -> Result<Vec<R>, E> {
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order_in_both_modes() {
        let xs: Vec<usize> = (0..257).collect();
        let par = map_slice(&xs, |x| x * 2);
        let seq = sequential(|| map_slice(&xs, |x| x * 2));
        assert_eq!(par, seq);
        assert_eq!(par[10], 20);
    }

    #[test]
    fn sequential_flag_restores() {
        sequential(|| {
            assert!(!parallel_enabled());
        });
        // Outside the closure the mode is back to the feature default.
        assert_eq!(parallel_enabled(), cfg!(feature = "parallel"));
    }

    #[test]
    fn try_map_propagates_first_error() {
        let r: Result<Vec<usize>, String> =
            try_map_range(8, |i| if i == 5 { Err("boom".into()) } else { Ok(i) });
        assert_eq!(r, Err("boom".to_string()));
    }
}
