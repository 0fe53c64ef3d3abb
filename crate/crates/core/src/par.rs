//! Order-preserving map over a slice: rayon when the `parallel` feature is on, a plain loop otherwise.

#[cfg(feature = "parallel")]
pub fn par_map<T: Sync, U: Send>(xs: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    xs.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T: Sync, U: Send>(xs: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    xs.iter().map(f).collect()
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Run `f` with every `par_map` inside it on one thread. Results are identical to the
/// parallel run; this exists for benchmarking and for bisecting ordering bugs.
#[cfg(feature = "parallel")]
pub fn sequential<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("a one-thread pool").install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn sequential<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    f()
}
