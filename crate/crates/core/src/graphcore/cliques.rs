//! Bron–Kerbosch with Tomita pivoting on bit rows.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{and_count, ones, DenseGraph};
use crate::error::{Error, Result};

struct Search<'a> {
    g: &'a DenseGraph,
    out: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn expand(&mut self, r: &mut Vec<u32>, p: Vec<u64>, x: Vec<u64>) {
        if p.iter().all(|&w| w == 0) {
            if x.iter().all(|&w| w == 0) {
                let mut c = r.clone();
                c.sort_unstable();
                self.out.push(c);
            }
            return;
        }
        // pivot: vertex of P ∪ X with most neighbors in P
        let pivot: Vec<u64> = p.iter().zip(&x).map(|(a, b)| a | b).collect();
        let u = ones(&pivot).max_by_key(|&u| (and_count(self.g.row(u), &p), std::cmp::Reverse(u))).unwrap();
        let urow = self.g.row(u);
        let outside: Vec<u64> = p.iter().zip(urow).map(|(a, b)| a & !b).collect();
        let candidates: Vec<u32> = ones(&outside).collect();
        let mut p = p;
        let mut x = x;
        for v in candidates {
            let row = self.g.row(v);
            let np: Vec<u64> = p.iter().zip(row).map(|(a, b)| a & b).collect();
            let nx: Vec<u64> = x.iter().zip(row).map(|(a, b)| a & b).collect();
            r.push(v);
            self.expand(r, np, nx);
            r.pop();
            p[v as usize / 64] &= !(1 << (v % 64));
            x[v as usize / 64] |= 1 << (v % 64);
        }
    }
}

/// All maximal cliques of `g` that contain the edge `{x, y}`, each sorted,
/// in lexicographic order.
pub fn maximal_cliques_through_edge(g: &DenseGraph, x: u32, y: u32) -> Result<Vec<Vec<u32>>> {
    if x == y || !g.has_edge(x, y) {
        return Err(Error::NotAnEdge(x, y));
    }
    let mut s = Search { g, out: Vec::new() };
    s.expand(&mut vec![x, y], g.common_row(x, y), vec![0; g.words()]);
    let mut out = s.out;
    debug_assert!(out.iter().all(|c| is_maximal_clique(g, c)));
    out.sort();
    Ok(out)
}

/// Every maximal clique with at least two vertices, each exactly once,
/// sorted. A clique is found from its smallest vertex.
pub fn maximal_cliques(g: &DenseGraph) -> Vec<Vec<u32>> {
    let n = g.order() as u32;
    let per_vertex: Vec<Vec<Vec<u32>>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let row = g.row(v);
            let mut later = vec![0u64; g.words()];
            let mut earlier = vec![0u64; g.words()];
            for u in ones(row) {
                if u > v {
                    later[u as usize / 64] |= 1 << (u % 64);
                } else {
                    earlier[u as usize / 64] |= 1 << (u % 64);
                }
            }
            if later.iter().all(|&w| w == 0) {
                return Vec::new();
            }
            let mut s = Search { g, out: Vec::new() };
            s.expand(&mut vec![v], later, earlier);
            s.out.sort();
            s.out
        })
        .collect();
    per_vertex.into_iter().flatten().collect()
}

pub fn is_maximal_clique(g: &DenseGraph, c: &[u32]) -> bool {
    for (i, &u) in c.iter().enumerate() {
        if c[i + 1..].iter().any(|&v| !g.has_edge(u, v)) {
            return false;
        }
    }
    let Some((&first, rest)) = c.split_first() else { return false };
    let mut common = g.row(first).to_vec();
    for &v in rest {
        for (a, b) in common.iter_mut().zip(g.row(v)) {
            *a &= b;
        }
    }
    common.iter().all(|&w| w == 0)
}

/// Clique size → number of cliques of that size.
pub fn clique_census(cliques: &[Vec<u32>]) -> BTreeMap<usize, u64> {
    let mut m = BTreeMap::new();
    for c in cliques {
        *m.entry(c.len()).or_insert(0) += 1;
    }
    m
}
