//! A few tiny named graphs, mostly for tests and examples.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{DenseGraph, SwitchingPartition};

pub fn complete(n: usize) -> DenseGraph {
    DenseGraph::from_neighbor_fn(n, |i, out| out.extend((0..n as u32).filter(|&j| j as usize != i)))
}

pub fn cycle(n: usize) -> DenseGraph {
    DenseGraph::from_edges(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32)))
}

pub fn path(n: usize) -> DenseGraph {
    DenseGraph::from_edges(n, (1..n as u32).map(|i| (i - 1, i)))
}

pub fn star(leaves: usize) -> DenseGraph {
    DenseGraph::from_edges(leaves + 1, (1..=leaves as u32).map(|i| (0, i)))
}

/// Kneser graph K(5, 2).
pub fn petersen() -> DenseGraph {
    let pairs: Vec<u32> = (0..5u32)
        .flat_map(|a| (a + 1..5).map(move |b| (1 << a) | (1 << b)))
        .collect();
    DenseGraph::from_neighbor_fn(10, |i, out| {
        out.extend((0..10u32).filter(|&j| pairs[i] & pairs[j as usize] == 0));
    })
}

/// `m × m` rook's graph.
pub fn rook(m: usize) -> DenseGraph {
    DenseGraph::from_neighbor_fn(m * m, |i, out| {
        let (r, c) = (i / m, i % m);
        out.extend((0..m * m).filter(|&j| j != i && (j / m == r || j % m == c)).map(|j| j as u32));
    })
}

/// A random graph with a planted Godsil-McKay partition: `cells` cells of
/// `cell_size` vertices each plus `d` vertices in the switching set, under a
/// random labelling.
///
/// Every cell and every pair of cells is joined by a circulant pattern, so
/// the partition is equitable. Each switching vertex sees none, all or (for
/// even sizes) a random half of each cell.
pub fn planted_switching(rng: &mut impl Rng, cells: usize, cell_size: usize, d: usize) -> (DenseGraph, SwitchingPartition) {
    let n = cells * cell_size + d;
    let mut label: Vec<u32> = (0..n as u32).collect();
    label.shuffle(rng);
    let vertex = |c: usize, i: usize| label[c * cell_size + i];
    let mut g = DenseGraph::new(n);
    let s = cell_size;

    for a in 0..cells {
        for b in a..cells {
            let shifts: Vec<usize> = (0..s).filter(|&t| (a != b || t != 0) && rng.gen_bool(0.3)).collect();
            for i in 0..s {
                for &t in &shifts {
                    g.add_edge(vertex(a, i), vertex(b, (i + t) % s));
                }
            }
        }
    }
    let switching: Vec<u32> = label[cells * s..].to_vec();
    for (k, &x) in switching.iter().enumerate() {
        for c in 0..cells {
            let mut members: Vec<usize> = (0..s).collect();
            let take = match rng.gen_range(0..3) {
                0 => 0,
                1 => s,
                _ if s % 2 == 0 => s / 2,
                _ => 0,
            };
            members.shuffle(rng);
            for &i in &members[..take] {
                g.add_edge(x, vertex(c, i));
            }
        }
        for &y in &switching[k + 1..] {
            if rng.gen_bool(0.5) {
                g.add_edge(x, y);
            }
        }
    }
    let cell_lists = (0..cells).map(|c| (0..s).map(|i| vertex(c, i)).collect()).collect();
    (g, SwitchingPartition::new(cell_lists, switching))
}
