//! Deterministic fork-join over contiguous chunks.
//!
//! Work is split into at most `workers` contiguous chunks and the chunk
//! results are concatenated in chunk order, so the output is identical to
//! the sequential map for every worker count.

use std::thread;

pub(crate) fn chunk_map<T, R, F>(workers: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || items.len() < 2 * workers {
        return items.iter().map(&f).collect();
    }
    let chunk_len = items.len().div_ceil(workers);
    thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk_len)
            .map(|chunk| scope.spawn(|| chunk.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        let mut out = Vec::with_capacity(items.len());
        for h in handles {
            out.extend(h.join().expect("worker panicked"));
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunking_preserves_order() {
        let items: Vec<u32> = (0..103).collect();
        let seq = chunk_map(1, &items, |x| x * 2);
        for w in [2, 3, 8, 200] {
            assert_eq!(chunk_map(w, &items, |x| x * 2), seq);
        }
    }
}
