use rayon::prelude::*;
use serde::Serialize;

use super::{and_count, first_failure, Counterexample, DenseGraph, Mode, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Self {
        SrgParams { v, k, lambda, mu }
    }

    /// `k(k - λ - 1) = (v - k - 1) μ`.
    pub fn is_feasible(&self) -> bool {
        let (v, k, l, m) = (self.v as i128, self.k as i128, self.lambda as i128, self.mu as i128);
        k * (k - l - 1) == (v - k - 1) * m
    }

    pub fn complement(&self) -> SrgParams {
        let SrgParams { v, k, lambda, mu } = *self;
        SrgParams { v, k: v - k - 1, lambda: v + mu - 2 - 2 * k, mu: v + lambda - 2 * k }
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SRG({}, {}, {}, {})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Checks strong regularity. Degrees are always checked for every vertex;
/// common-neighbor counts are checked for every pair in full mode and for
/// every pair through a sampled base vertex otherwise.
pub fn check_srg(g: &DenseGraph, mode: Mode) -> Verdict<SrgParams> {
    let n = g.order();
    if n < 3 {
        return Verdict::Fails(Counterexample { vertices: vec![], what: "too few vertices".into(), found: n as u64, expected: 3 });
    }
    let k = g.degree(0);
    let degrees: Vec<u32> = (0..n as u32).into_par_iter().map(|i| g.degree(i)).collect();
    if let Some(i) = degrees.iter().position(|&d| d != k) {
        return Verdict::Fails(Counterexample {
            vertices: vec![i as u32],
            what: "degree".into(),
            found: degrees[i] as u64,
            expected: k as u64,
        });
    }

    let bases = mode.bases(n);
    // reference counts from the first base vertex
    let b0 = bases[0];
    let first = |adj: bool| (0..n as u32).find(|&y| y != b0 && g.has_edge(b0, y) == adj);
    let lambda = first(true).map_or(0, |y| and_count(g.row(b0), g.row(y)));
    let mu = first(false).map_or(0, |y| and_count(g.row(b0), g.row(y)));
    let full = mode == Mode::Full;

    let results: Vec<Option<Counterexample>> = bases
        .par_iter()
        .map(|&x| {
            let rx = g.row(x);
            let start = if full { x + 1 } else { 0 };
            (start..n as u32).filter(|&y| y != x).find_map(|y| {
                let c = and_count(rx, g.row(y));
                let adj = g.has_edge(x, y);
                let want = if adj { lambda } else { mu };
                (c != want).then(|| Counterexample {
                    vertices: vec![x, y],
                    what: if adj { "lambda" } else { "mu" }.into(),
                    found: c as u64,
                    expected: want as u64,
                })
            })
        })
        .collect();
    match first_failure(results) {
        Some(c) => Verdict::Fails(c),
        None => Verdict::Holds(SrgParams::new(n as u64, k as u64, lambda as u64, mu as u64)),
    }
}
