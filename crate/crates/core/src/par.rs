//! Dispatch between rayon and sequential execution.
//!
//! The sequential implementations are always compiled so benchmarks can
//! compare both paths in one build; the `parallel` feature only changes what
//! the default entry points dispatch to. Results are identical either way:
//! the mapped functions are pure and outputs are reassembled in input order.

pub(crate) fn map_collect_seq<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    map_collect_seq(items, f)
}

/// Chunked map for workloads that benefit from per-worker scratch state.
/// `init` builds the scratch once per chunk.
pub(crate) fn map_chunks_seq<T: Sync, U: Send, S, I, F>(
    items: &[T],
    chunk: usize,
    init: I,
    f: F,
) -> Vec<U>
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T) -> U + Sync + Send,
{
    let mut out = Vec::with_capacity(items.len());
    for block in items.chunks(chunk.max(1)) {
        let mut scratch = init();
        out.extend(block.iter().map(|t| f(&mut scratch, t)));
    }
    out
}

#[cfg(feature = "parallel")]
pub(crate) fn map_chunks<T: Sync, U: Send, S, I, F>(
    items: &[T],
    chunk: usize,
    init: I,
    f: F,
) -> Vec<U>
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items
        .par_chunks(chunk.max(1))
        .flat_map_iter(|block| {
            let mut scratch = init();
            block.iter().map(|t| f(&mut scratch, t)).collect::<Vec<_>>()
        })
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_chunks<T: Sync, U: Send, S, I, F>(
    items: &[T],
    chunk: usize,
    init: I,
    f: F,
) -> Vec<U>
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T) -> U + Sync + Send,
{
    map_chunks_seq(items, chunk, init, f)
}
