use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitVec;
use crate::gf2::{Combinations, RowReducer};
use crate::pauli::{Letter, PauliOperator};

/// Result of a bounded distance search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distance {
    Exact(usize),
    /// Nothing nontrivial up to `value - 1`.
    AtLeast(usize),
}

impl Distance {
    /// The largest value the result guarantees as a lower bound.
    pub fn lower_bound(self) -> usize {
        match self {
            Distance::Exact(d) | Distance::AtLeast(d) => d,
        }
    }

    pub fn satisfies(self, required: usize) -> bool {
        self.lower_bound() >= required
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::AtLeast(d) => write!(f, "≥ {d}"),
        }
    }
}

/// Weight-ordered exhaustive search for the lightest operator that commutes
/// with `generators` but lies outside the span of `generators ∪ excluded`.
///
/// Candidates of a given weight are ranked by (support subset in
/// lexicographic order, letters in `X < Y < Z` order with the lowest qubit
/// most significant); the search can be split into interleaved shards over
/// support subsets so callers can fan out across threads.
#[derive(Clone, Debug)]
pub struct DistanceSearch {
    n: usize,
    generators: Vec<(BitVec, BitVec)>,
    excluded: RowReducer,
}

impl DistanceSearch {
    pub fn new(n: usize, generators: &[PauliOperator], excluded: &[PauliOperator]) -> Self {
        let span = generators.iter().chain(excluded).map(PauliOperator::symplectic);
        Self {
            n,
            generators: generators.iter().map(|g| (g.x().clone(), g.z().clone())).collect(),
            excluded: RowReducer::new(span),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    fn is_nontrivial_logical(&self, x: &BitVec, z: &BitVec) -> bool {
        let in_normalizer = self.generators.iter().all(|(gx, gz)| x.dot(gz) == z.dot(gx));
        in_normalizer && !self.excluded.reduce(x.concat(z)).is_zero()
    }

    /// First hit (by rank) among weight-`w` candidates whose support-subset
    /// index is congruent to `shard` modulo `shards`.
    pub fn search_weight(&self, w: usize, shard: usize, shards: usize) -> Option<(u64, PauliOperator)> {
        assert!(shards > 0 && shard < shards);
        if w == 0 || w > self.n {
            return None;
        }
        let per_subset = 3u64.pow(w as u32);
        for (subset_index, support) in Combinations::new(self.n, w).enumerate() {
            if subset_index % shards != shard {
                continue;
            }
            for letters in 0..per_subset {
                let mut x = BitVec::zeros(self.n);
                let mut z = BitVec::zeros(self.n);
                let mut rest = letters;
                let mut digits = [0u64; 64];
                for d in digits.iter_mut().take(w).rev() {
                    *d = rest % 3;
                    rest /= 3;
                }
                for (pos, &q) in support.iter().enumerate() {
                    let (bx, bz) = Letter::NONTRIVIAL[digits[pos] as usize].bits();
                    x.set(q, bx);
                    z.set(q, bz);
                }
                if self.is_nontrivial_logical(&x, &z) {
                    let rank = subset_index as u64 * per_subset + letters;
                    let op = PauliOperator::positive_from_vectors(x, z).expect("same length");
                    return Some((rank, op));
                }
            }
        }
        None
    }

    /// Sequential search over weights `1..=max_weight` (clamped to `n`).
    pub fn run(&self, max_weight: usize) -> (Distance, Option<PauliOperator>) {
        let max_weight = max_weight.min(self.n);
        for w in 1..=max_weight {
            if let Some((_, op)) = self.search_weight(w, 0, 1) {
                return (Distance::Exact(w), Some(op));
            }
        }
        (Distance::AtLeast(max_weight + 1), None)
    }
}

/// Distance of the group generated by `generators`, treating `excluded`
/// (e.g. gauge operators) as trivial.
pub fn distance_of_group(
    n: usize,
    generators: &[PauliOperator],
    excluded: &[PauliOperator],
    max_weight: usize,
) -> Distance {
    DistanceSearch::new(n, generators, excluded).run(max_weight).0
}
