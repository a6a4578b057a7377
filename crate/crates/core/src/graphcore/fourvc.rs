use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{and_count, first_failure, ones, Counterexample, DenseGraph, Mode, Verdict};

/// Edge counts inside common neighborhoods: `alpha` over adjacent pairs,
/// `beta` over nonadjacent pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FourVertex {
    pub alpha: u64,
    pub beta: u64,
}

/// Number of edges of the subgraph induced on `Γ(x) ∩ Γ(y)`.
pub fn four_vertex_counts(g: &DenseGraph, x: u32, y: u32) -> u64 {
    let common = g.common_row(x, y);
    let twice: u64 = ones(&common).map(|c| and_count(g.row(c), &common) as u64).sum();
    twice / 2
}

/// Checks the 4-vertex condition. Full mode visits every pair; sampled mode
/// draws `count` base vertices and pairs each with one random neighbor and
/// one random non-neighbor.
pub fn four_vertex_condition(g: &DenseGraph, mode: Mode) -> Verdict<FourVertex> {
    let n = g.order() as u32;
    let pairs_of = |x: u32| -> Vec<u32> {
        match mode {
            Mode::Full => (x + 1..n).collect(),
            Mode::Sampled { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (x as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let nb: Vec<u32> = g.neighbors(x).collect();
                let non: Vec<u32> = (0..n).filter(|&y| y != x && !g.has_edge(x, y)).collect();
                let mut out = Vec::new();
                if !nb.is_empty() {
                    out.push(nb[rng.gen_range(0..nb.len())]);
                }
                if !non.is_empty() {
                    out.push(non[rng.gen_range(0..non.len())]);
                }
                out
            }
        }
    };
    let bases = mode.bases(n as usize);
    // reference values from the first base vertex's first pairs of each kind
    let b0 = bases[0];
    let reference = |adj: bool| {
        pairs_of(b0).into_iter().find(|&y| g.has_edge(b0, y) == adj).map(|y| four_vertex_counts(g, b0, y))
    };
    let (alpha, beta) = (reference(true), reference(false));
    let results: Vec<Option<Counterexample>> = bases
        .par_iter()
        .map(|&x| {
            pairs_of(x).into_iter().find_map(|y| {
                let adj = g.has_edge(x, y);
                let found = four_vertex_counts(g, x, y);
                let want = if adj { alpha } else { beta };
                let want = want.unwrap_or(found);
                (found != want).then(|| Counterexample {
                    vertices: vec![x, y],
                    what: if adj { "edges among common neighbors of an adjacent pair" } else { "edges among common neighbors of a nonadjacent pair" }.into(),
                    found,
                    expected: want,
                })
            })
        })
        .collect();
    match first_failure(results) {
        Some(c) => Verdict::Fails(c),
        None => Verdict::Holds(FourVertex { alpha: alpha.unwrap_or(0), beta: beta.unwrap_or(0) }),
    }
}
