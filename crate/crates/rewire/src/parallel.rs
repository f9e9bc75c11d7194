//! Distance search fanned out over threads.

use std::num::NonZeroUsize;
use std::thread;

use rewire_core::code::DistanceSearch;
use rewire_core::{Distance, PauliOperator};

pub const THREADS_VAR: &str = "REWIRE_THREADS";

/// Worker count from `REWIRE_THREADS`; unset, unparsable or `0` means one
/// per available core.
pub fn thread_count() -> usize {
    let auto = || thread::available_parallelism().map_or(1, NonZeroUsize::get);
    match std::env::var(THREADS_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        Some(0) | None => auto(),
        Some(t) => t,
    }
}

/// Same result as the sequential search, including the witness: each weight
/// class is split into shards and the lowest-ranked hit wins.
pub fn distance_with_witness(
    n: usize,
    generators: &[PauliOperator],
    excluded: &[PauliOperator],
    max_weight: usize,
    threads: usize,
) -> (Distance, Option<PauliOperator>) {
    let search = DistanceSearch::new(n, generators, excluded);
    let threads = threads.max(1);
    let max_weight = max_weight.min(n);
    for w in 1..=max_weight {
        let hit = if threads == 1 {
            search.search_weight(w, 0, 1)
        } else {
            thread::scope(|s| {
                let workers: Vec<_> = (0..threads)
                    .map(|shard| {
                        let search = &search;
                        s.spawn(move || search.search_weight(w, shard, threads))
                    })
                    .collect();
                workers
                    .into_iter()
                    .filter_map(|h| h.join().expect("distance worker panicked"))
                    .min_by_key(|(rank, _)| *rank)
            })
        };
        if let Some((_, op)) = hit {
            return (Distance::Exact(w), Some(op));
        }
    }
    (Distance::AtLeast(max_weight + 1), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rewire_core::code::catalog;

    #[test]
    fn matches_sequential_search_and_witness() {
        for code in [
            catalog::toy2(),
            catalog::four_two_two(),
            catalog::five_qubit(),
            catalog::steane(),
        ] {
            let sequential = DistanceSearch::new(code.n, &code.generators, &[]).run(4);
            for threads in [1, 2, 3, 7] {
                assert_eq!(
                    distance_with_witness(code.n, &code.generators, &[], 4, threads),
                    sequential,
                    "{} threads={threads}",
                    code.name
                );
            }
        }
    }

    #[test]
    fn bound_when_weight_is_capped() {
        let code = catalog::steane();
        assert_eq!(
            distance_with_witness(7, &code.generators, &[], 1, 4),
            (Distance::AtLeast(2), None)
        );
    }
}
