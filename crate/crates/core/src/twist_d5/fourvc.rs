use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::D5Context;
use crate::graphcore::{four_vertex_counts, DenseGraph, Mode};

/// Edge counts inside common neighborhoods for one kind of pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KindCounts {
    /// `"C'C'"`, `"C'D"` or `"DD"`
    pub kind: &'static str,
    pub adjacent: bool,
    pub pairs: u64,
    /// edge count → number of pairs
    pub counts: BTreeMap<u64, u64>,
}

const KINDS: [&str; 3] = ["C'C'", "C'D", "DD"];

fn kind_of(ctx: &D5Context, x: u32, y: u32) -> usize {
    !ctx.is_line(x) as usize + !ctx.is_line(y) as usize
}

/// Splits the 4-vertex counts of `Γ'` by pair kind and adjacency. Full mode
/// covers every pair; sampled mode draws `count` pairs per stratum.
pub fn four_vertex_by_kind(ctx: &D5Context, gp: &DenseGraph, mode: Mode) -> Vec<KindCounts> {
    let nl = ctx.lines().len() as u32;
    let n = ctx.vertex_count() as u32;
    let strata: Vec<(usize, bool)> = (0..3).flat_map(|k| [(k, true), (k, false)]).collect();
    let mut out: Vec<KindCounts> = strata
        .iter()
        .map(|&(k, adjacent)| KindCounts { kind: KINDS[k], adjacent, pairs: 0, counts: BTreeMap::new() })
        .collect();
    let slot = |k: usize, adj: bool| 2 * k + (!adj) as usize;

    match mode {
        Mode::Full => {
            let parts: Vec<Vec<(usize, u64)>> = (0..n)
                .into_par_iter()
                .map(|x| (x + 1..n).map(|y| (slot(kind_of(ctx, x, y), gp.has_edge(x, y)), four_vertex_counts(gp, x, y))).collect())
                .collect();
            for (s, c) in parts.into_iter().flatten() {
                out[s].pairs += 1;
                *out[s].counts.entry(c).or_insert(0) += 1;
            }
        }
        Mode::Sampled { seed, count } => {
            for (i, &(k, adj)) in strata.iter().enumerate() {
                let (xs, ys) = match k {
                    0 => (0..nl, 0..nl),
                    1 => (0..nl, nl..n),
                    _ => (nl..n, nl..n),
                };
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                let mut pairs = Vec::with_capacity(count);
                while pairs.len() < count {
                    let x = rng.gen_range(xs.clone());
                    let y = if adj {
                        let nb: Vec<u32> = gp.neighbors(x).filter(|y| ys.contains(y)).collect();
                        if nb.is_empty() {
                            continue;
                        }
                        nb[rng.gen_range(0..nb.len())]
                    } else {
                        let y = rng.gen_range(ys.clone());
                        if y == x || gp.has_edge(x, y) {
                            continue;
                        }
                        y
                    };
                    pairs.push((x, y));
                }
                let counts: Vec<u64> = pairs.par_iter().map(|&(x, y)| four_vertex_counts(gp, x, y)).collect();
                out[i].pairs = count as u64;
                for c in counts {
                    *out[i].counts.entry(c).or_insert(0) += 1;
                }
            }
        }
    }
    out
}
