//! Chunked parallel exclusive scan.

use rayon::prelude::*;

/// Elements per chunk in the parallel scan and the fused shuffle.
pub const SCAN_CHUNK: usize = 1 << 16;

/// Exclusive prefix sum: `out[i] = input[0] + .. + input[i-1]`.
///
/// Runs in three phases: per-chunk totals, a scan over the totals, then a
/// local scan of each chunk seeded with its offset. The result does not depend
/// on the number of worker threads.
pub fn exclusive_scan<T>(input: &[T]) -> Vec<u64>
where
    T: Copy + Into<u64> + Sync,
{
    let totals: Vec<u64> = input
        .par_chunks(SCAN_CHUNK)
        .map(|chunk| chunk.iter().map(|&v| v.into()).sum())
        .collect();
    let (offsets, _) = exclusive_scan_sequential(&totals);

    let mut out = vec![0u64; input.len()];
    out.par_chunks_mut(SCAN_CHUNK)
        .zip(input.par_chunks(SCAN_CHUNK))
        .zip(offsets.par_iter())
        .for_each(|((dst, src), &offset)| {
            let mut running = offset;
            for (d, &v) in dst.iter_mut().zip(src) {
                *d = running;
                running += v.into();
            }
        });
    out
}

/// Sequential exclusive scan returning the offsets and the grand total.
pub(crate) fn exclusive_scan_sequential(input: &[u64]) -> (Vec<u64>, u64) {
    let mut total = 0u64;
    let offsets = input
        .iter()
        .map(|&v| {
            let here = total;
            total += v;
            here
        })
        .collect();
    (offsets, total)
}
