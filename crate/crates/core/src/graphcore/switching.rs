use rayon::prelude::*;
use serde::Serialize;

use super::DenseGraph;
use crate::error::{Error, Result};

const IN_D: u32 = u32::MAX;

/// Cells `C_1, ..., C_t` and the switching set `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchingPartition {
    pub cells: Vec<Vec<u32>>,
    pub switching_set: Vec<u32>,
}

impl SwitchingPartition {
    pub fn new(cells: Vec<Vec<u32>>, switching_set: Vec<u32>) -> Self {
        SwitchingPartition { cells, switching_set }
    }

    /// Cell index of every vertex, `u32::MAX` for members of `D`.
    pub fn cell_of(&self, n: usize) -> Result<Vec<u32>> {
        let mut owner = vec![u32::MAX - 1; n];
        let mut place = |v: u32, tag: u32| -> Result<()> {
            let slot = owner
                .get_mut(v as usize)
                .ok_or_else(|| Error::NotAPartition(format!("vertex {v} out of range")))?;
            if *slot != u32::MAX - 1 {
                return Err(Error::NotAPartition(format!("vertex {v} appears twice")));
            }
            *slot = tag;
            Ok(())
        };
        for (i, c) in self.cells.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::NotAPartition(format!("cell {i} is empty")));
            }
            for &v in c {
                place(v, i as u32)?;
            }
        }
        for &v in &self.switching_set {
            place(v, IN_D)?;
        }
        if let Some(v) = owner.iter().position(|&o| o == u32::MAX - 1) {
            return Err(Error::NotAPartition(format!("vertex {v} is not covered")));
        }
        Ok(owner)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `vertex` in `cell` has `count` neighbors in `target`, but the first
    /// member of `cell` has `expected`.
    NotEquitable { cell: u32, target: u32, vertex: u32, count: u32, expected: u32 },
    /// A vertex of `D` with a count outside `{0, |C|/2, |C|}`.
    BadCount { vertex: u32, cell: u32, count: u32, cell_size: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub cells: usize,
    pub switching_set: usize,
    pub cell_pairs_checked: u64,
    pub violations: Vec<Violation>,
    /// `(x, cell)` with `x ∈ D` adjacent to exactly half of the cell.
    pub half_pairs: Vec<(u32, u32)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Neighbor counts of `x` per cell, sorted by cell, zero counts omitted.
fn cell_counts(g: &DenseGraph, owner: &[u32], x: u32, buf: &mut Vec<u32>) -> Vec<(u32, u32)> {
    buf.clear();
    buf.extend(g.neighbors(x).map(|y| owner[y as usize]).filter(|&c| c != IN_D));
    buf.sort_unstable();
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &c in buf.iter() {
        match out.last_mut() {
            Some((last, k)) if *last == c => *k += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

fn first_difference(cell: u32, vertex: u32, mine: &[(u32, u32)], reference: &[(u32, u32)]) -> Violation {
    let lookup = |v: &[(u32, u32)], t: u32| v.binary_search_by_key(&t, |e| e.0).map_or(0, |i| v[i].1);
    let target = mine
        .iter()
        .chain(reference)
        .map(|e| e.0)
        .filter(|&t| lookup(mine, t) != lookup(reference, t))
        .min()
        .expect("count vectors differ");
    Violation::NotEquitable { cell, target, vertex, count: lookup(mine, target), expected: lookup(reference, target) }
}

/// Checks the switching conditions: the cells form an equitable partition of
/// the graph induced off `D`, and every vertex of `D` sees none, half or all
/// of each cell. For a cell of odd size only none or all pass.
pub fn gm_validate(g: &DenseGraph, part: &SwitchingPartition) -> Result<ValidationReport> {
    let owner = part.cell_of(g.order())?;
    let t = part.cells.len();

    let per_cell: Vec<Vec<Violation>> = part
        .cells
        .par_iter()
        .enumerate()
        .map_init(Vec::new, |buf, (ci, cell)| {
            let reference = cell_counts(g, &owner, cell[0], buf);
            let mut out = Vec::new();
            for &x in &cell[1..] {
                let mine = cell_counts(g, &owner, x, buf);
                if mine != reference {
                    out.push(first_difference(ci as u32, x, &mine, &reference));
                }
            }
            out
        })
        .collect();

    let per_d: Vec<(Vec<Violation>, Vec<(u32, u32)>)> = part
        .switching_set
        .par_iter()
        .map_init(Vec::new, |buf, &x| {
            let mut bad = Vec::new();
            let mut half = Vec::new();
            for (c, count) in cell_counts(g, &owner, x, buf) {
                let size = part.cells[c as usize].len() as u32;
                if count == size {
                    continue;
                }
                if size % 2 == 0 && 2 * count == size {
                    half.push((x, c));
                } else {
                    bad.push(Violation::BadCount { vertex: x, cell: c, count, cell_size: size });
                }
            }
            (bad, half)
        })
        .collect();

    let mut violations: Vec<Violation> = per_cell.into_iter().flatten().collect();
    let mut half_pairs = Vec::new();
    for (bad, half) in per_d {
        violations.extend(bad);
        half_pairs.extend(half);
    }
    Ok(ValidationReport {
        cells: t,
        switching_set: part.switching_set.len(),
        cell_pairs_checked: (t * t) as u64,
        violations,
        half_pairs,
    })
}

/// Switches in place and returns the validation report.
pub fn gm_switch_in_place(g: &mut DenseGraph, part: &SwitchingPartition) -> Result<ValidationReport> {
    let report = gm_validate(g, part)?;
    if !report.passed() {
        return Err(Error::InvalidPartition(format!("{} violations, first {:?}", report.violations.len(), report.violations[0])));
    }
    for &(x, c) in &report.half_pairs {
        for &y in &part.cells[c as usize] {
            g.toggle_edge(x, y);
        }
    }
    Ok(report)
}

/// The switched graph. Requires a partition that passes [`gm_validate`].
pub fn gm_switch(g: &DenseGraph, part: &SwitchingPartition) -> Result<DenseGraph> {
    let mut h = g.clone();
    gm_switch_in_place(&mut h, part)?;
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{charpoly_fingerprint, default_primes, small};

    #[test]
    fn hand_examples() {
        let k4 = small::complete(4);
        let whole = SwitchingPartition::new(vec![vec![0, 1, 2, 3]], vec![]);
        assert!(gm_validate(&k4, &whole).unwrap().passed());

        let c4 = small::cycle(4);
        let p = SwitchingPartition::new(vec![vec![0, 2]], vec![1, 3]);
        let r = gm_validate(&c4, &p).unwrap();
        assert!(r.passed() && r.half_pairs.is_empty());
        assert_eq!(gm_switch(&c4, &p).unwrap(), c4);

        let p3 = small::path(3);
        let p = SwitchingPartition::new(vec![vec![0, 2]], vec![1]);
        assert!(gm_validate(&p3, &p).unwrap().passed());
    }

    #[test]
    fn half_switch_by_hand() {
        // C4 on {0,1,2,3} plus vertex 4 adjacent to 0 only; cell = C4, D = {4}
        let g = DenseGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 2)]);
        let p = SwitchingPartition::new(vec![vec![0, 1, 2, 3]], vec![4]);
        let r = gm_validate(&g, &p).unwrap();
        assert!(r.passed());
        assert_eq!(r.half_pairs, vec![(4, 0)]);
        let h = gm_switch(&g, &p).unwrap();
        let want = DenseGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 1), (4, 3)]);
        assert_eq!(h, want);
        assert_eq!(gm_switch(&h, &p).unwrap(), g);
    }

    #[test]
    fn violations_are_reported() {
        let g = small::path(4);
        // not equitable: 0 has one neighbor in the cell, 1 has two
        let p = SwitchingPartition::new(vec![vec![0, 1, 2, 3]], vec![]);
        assert!(!gm_validate(&g, &p).unwrap().passed());
        // odd cell, D-vertex sees one of three
        let g = DenseGraph::from_edges(4, [(0, 1), (1, 2), (2, 0), (3, 0)]);
        let p = SwitchingPartition::new(vec![vec![0, 1, 2]], vec![3]);
        let r = gm_validate(&g, &p).unwrap();
        assert_eq!(r.violations, vec![Violation::BadCount { vertex: 3, cell: 0, count: 1, cell_size: 3 }]);
        assert!(matches!(gm_switch(&g, &p), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn partition_errors() {
        let g = small::path(3);
        let dup = SwitchingPartition::new(vec![vec![0, 1]], vec![1, 2]);
        assert!(matches!(gm_validate(&g, &dup), Err(Error::NotAPartition(_))));
        let gap = SwitchingPartition::new(vec![vec![0]], vec![1]);
        assert!(matches!(gm_validate(&g, &gap), Err(Error::NotAPartition(_))));
        let empty = SwitchingPartition::new(vec![vec![], vec![0, 1, 2]], vec![]);
        assert!(matches!(gm_validate(&g, &empty), Err(Error::NotAPartition(_))));
    }

    #[test]
    fn switching_preserves_spectrum() {
        // C6 with D = {6} adjacent to 0, 1, 2; cell = C6 (regular), 3 of 6
        let mut g = small::cycle(6);
        let mut h = DenseGraph::new(7);
        for (u, v) in g.edges() {
            h.add_edge(u, v);
        }
        for v in [0, 1, 2] {
            h.add_edge(6, v);
        }
        g = h;
        let p = SwitchingPartition::new(vec![(0..6).collect()], vec![6]);
        let s = gm_switch(&g, &p).unwrap();
        assert_ne!(s, g);
        let primes = default_primes(3);
        assert!(charpoly_fingerprint(&g, &primes).unwrap().matches(&charpoly_fingerprint(&s, &primes).unwrap()));
    }
}
