//! Slab-parallel loops whose results do not depend on the worker count.

use rayon::prelude::*;

/// Splits each output slice into consecutive slabs of `slab` values and runs
/// `f(slab_index, slabs)` on every slab in parallel. Results come back in slab order.
pub(crate) fn slabs<const K: usize, R: Send>(
    outputs: [&mut [f64]; K],
    slab: usize,
    f: impl Fn(usize, [&mut [f64]; K]) -> R + Sync + Send,
) -> Vec<R> {
    let mut iters: Vec<_> = outputs.into_iter().map(|s| s.chunks_mut(slab)).collect();
    let mut groups: Vec<[&mut [f64]; K]> = Vec::new();
    loop {
        let next: Vec<&mut [f64]> = iters.iter_mut().filter_map(|it| it.next()).collect();
        if next.len() < K {
            break;
        }
        groups.push(next.try_into().unwrap_or_else(|_| unreachable!("exactly K slabs collected")));
    }
    groups.into_par_iter().enumerate().map(|(z, g)| f(z, g)).collect()
}
