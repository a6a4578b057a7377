//! Residues of Greeks missing `P`: their solids `(P^⊥ ∩ x)/P` pairwise meet
//! in dimension 4, 2 or 0, and meet each `x'/P` (`x'` through `P`) in
//! dimension 3 or 1.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::D5Context;
use crate::graphcore::Mode;
use crate::linalg::Subspace;

const MAX_LISTED: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueLemmaReport {
    pub mode: &'static str,
    pub dd_pairs: u64,
    pub dc_pairs: u64,
    /// meet dimension → pair count
    pub dd_dims: BTreeMap<usize, u64>,
    pub dc_dims: BTreeMap<usize, u64>,
    /// `(x, y, dim)` in Greek ids; at most 20 listed
    pub violations: Vec<(u32, u32, usize)>,
    pub violation_count: u64,
}

impl ResidueLemmaReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Checks every pair in full mode, or `count` random pairs of each kind.
pub fn residue_lemma_check(ctx: &D5Context, mode: Mode) -> ResidueLemmaReport {
    let res = ctx.residue();
    let rsp = res.space().space();
    let solids: Vec<Subspace> = ctx.d().par_iter().map(|&g| res.project(&ctx.perp_part(ctx.index().maximal(g)))).collect();
    let through: Vec<Subspace> = ctx.c().par_iter().map(|&g| res.project(ctx.index().maximal(g))).collect();
    let (nd, nc) = (solids.len(), through.len());

    let dd: Vec<(usize, usize)>;
    let dc: Vec<(usize, usize)>;
    match mode {
        Mode::Full => {
            dd = (0..nd).flat_map(|i| (i..nd).map(move |j| (i, j))).collect();
            dc = (0..nd).flat_map(|i| (0..nc).map(move |j| (i, j))).collect();
        }
        Mode::Sampled { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            dd = (0..count).map(|_| (rng.gen_range(0..nd), rng.gen_range(0..nd))).collect();
            dc = (0..count).map(|_| (rng.gen_range(0..nd), rng.gen_range(0..nc))).collect();
        }
    }

    let tally = |pairs: &[(usize, usize)], other: &[Subspace], allowed: &[usize], other_ids: &[u32]| {
        pairs
            .par_iter()
            .fold(
                || (BTreeMap::<usize, u64>::new(), Vec::new()),
                |(mut dims, mut bad), &(i, j)| {
                    let d = rsp.meet_dim(&solids[i], &other[j]);
                    *dims.entry(d).or_insert(0) += 1;
                    if !allowed.contains(&d) {
                        bad.push((ctx.d()[i], other_ids[j], d));
                    }
                    (dims, bad)
                },
            )
            .reduce(
                || (BTreeMap::new(), Vec::new()),
                |(mut a, mut ab), (b, bb)| {
                    for (k, v) in b {
                        *a.entry(k).or_insert(0) += v;
                    }
                    ab.extend(bb);
                    (a, ab)
                },
            )
    };
    let (dd_dims, mut bad) = tally(&dd, &solids, &[4, 2, 0], ctx.d());
    let (dc_dims, bad_dc) = tally(&dc, &through, &[3, 1], ctx.c());
    bad.extend(bad_dc);
    let violation_count = bad.len() as u64;
    bad.sort_unstable();
    bad.truncate(MAX_LISTED);
    ResidueLemmaReport {
        mode: mode.label(),
        dd_pairs: dd.len() as u64,
        dc_pairs: dc.len() as u64,
        dd_dims,
        dc_dims,
        violations: bad,
        violation_count,
    }
}
