use rayon::prelude::*;
use serde::Serialize;

use super::{and_count, count, first_failure, ones, Counterexample, DenseGraph, Mode, Verdict};
use crate::error::{Error, Result};

/// `{b_0, ..., b_{d-1}; c_1, ..., c_d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<u64>,
    pub c: Vec<u64>,
}

impl IntersectionArray {
    pub fn diameter(&self) -> usize {
        self.c.len()
    }
}

impl std::fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

/// BFS layers from `x` as bit rows; errors if some vertex is unreachable.
fn layers(g: &DenseGraph, x: u32) -> Result<Vec<Vec<u64>>> {
    let w = g.words();
    let mut seen = vec![0u64; w];
    let mut cur = vec![0u64; w];
    super::set_bit(&mut cur, x as usize);
    super::set_bit(&mut seen, x as usize);
    let mut out = vec![cur.clone()];
    let mut reached = 1;
    loop {
        let mut next = vec![0u64; w];
        for v in ones(&cur) {
            for (a, b) in next.iter_mut().zip(g.row(v)) {
                *a |= b;
            }
        }
        for (a, s) in next.iter_mut().zip(&seen) {
            *a &= !s;
        }
        let added = count(&next) as usize;
        if added == 0 {
            break;
        }
        reached += added;
        for (s, a) in seen.iter_mut().zip(&next) {
            *s |= a;
        }
        out.push(next.clone());
        cur = next;
    }
    if reached < g.order() {
        let missing = (0..g.order()).find(|&i| !super::get_bit(&seen, i)).unwrap();
        return Err(Error::Disconnected(missing as u32));
    }
    Ok(out)
}

/// Intersection numbers seen from `x`, or the first vertex that disagrees
/// with its layer.
fn array_from(g: &DenseGraph, x: u32, reference: Option<&IntersectionArray>) -> Result<std::result::Result<IntersectionArray, Counterexample>> {
    let ls = layers(g, x)?;
    let d = ls.len() - 1;
    if let Some(r) = reference {
        if r.diameter() != d {
            return Ok(Err(Counterexample { vertices: vec![x], what: "diameter".into(), found: d as u64, expected: r.diameter() as u64 }));
        }
    }
    let mut b = vec![0u64; d];
    let mut c = vec![0u64; d];
    for i in 0..=d {
        let mut first = true;
        for v in ones(&ls[i]) {
            let row = g.row(v);
            let ci = if i > 0 { and_count(row, &ls[i - 1]) as u64 } else { 0 };
            let bi = if i < d { and_count(row, &ls[i + 1]) as u64 } else { 0 };
            let (want_b, want_c) = match reference {
                Some(r) => (if i < d { r.b[i] } else { 0 }, if i > 0 { r.c[i - 1] } else { 0 }),
                None if first => (bi, ci),
                None => (if i < d { b[i] } else { 0 }, if i > 0 { c[i - 1] } else { 0 }),
            };
            first = false;
            if bi != want_b {
                return Ok(Err(Counterexample { vertices: vec![x, v], what: format!("b_{i}"), found: bi, expected: want_b }));
            }
            if ci != want_c {
                return Ok(Err(Counterexample { vertices: vec![x, v], what: format!("c_{i}"), found: ci, expected: want_c }));
            }
            if i < d {
                b[i] = bi;
            }
            if i > 0 {
                c[i - 1] = ci;
            }
        }
    }
    Ok(Ok(IntersectionArray { b, c }))
}

/// Checks distance-regularity from every (or every sampled) base vertex.
pub fn check_drg(g: &DenseGraph, mode: Mode) -> Result<Verdict<IntersectionArray>> {
    if g.order() == 0 {
        return Ok(Verdict::Holds(IntersectionArray { b: vec![], c: vec![] }));
    }
    let bases = mode.bases(g.order());
    let reference = match array_from(g, bases[0], None)? {
        Ok(a) => a,
        Err(c) => return Ok(Verdict::Fails(c)),
    };
    let results: Vec<Result<Option<Counterexample>>> = bases[1..]
        .par_iter()
        .map(|&x| Ok(array_from(g, x, Some(&reference))?.err()))
        .collect();
    let results: Vec<Option<Counterexample>> = results.into_iter().collect::<Result<_>>()?;
    Ok(match first_failure(results) {
        Some(c) => Verdict::Fails(c),
        None => Verdict::Holds(reference),
    })
}

/// Number of vertices at distance exactly 2 from `x`.
pub fn distance2_degree(g: &DenseGraph, x: u32) -> u32 {
    let mut reach = vec![0u64; g.words()];
    for v in g.neighbors(x) {
        for (a, b) in reach.iter_mut().zip(g.row(v)) {
            *a |= b;
        }
    }
    for (a, b) in reach.iter_mut().zip(g.row(x)) {
        *a &= !b;
    }
    super::dense::set_bit(&mut reach, x as usize);
    count(&reach) - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::small;

    fn bfs_dist(g: &DenseGraph, x: u32) -> Vec<i64> {
        let mut d = vec![-1i64; g.order()];
        d[x as usize] = 0;
        let mut queue = std::collections::VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if d[v as usize] < 0 {
                    d[v as usize] = d[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        d
    }

    #[test]
    fn known_arrays() {
        let a = check_drg(&small::cycle(6), Mode::Full).unwrap();
        assert_eq!(a.value().unwrap().to_string(), "{2,1,1;1,1,2}");
        let a = check_drg(&small::petersen(), Mode::Full).unwrap();
        assert_eq!(a.value().unwrap().to_string(), "{3,2;1,1}");
        let mut pe = small::petersen();
        let (u, v) = pe.edges().next().unwrap();
        pe.remove_edge(u, v);
        assert!(!check_drg(&pe, Mode::Full).unwrap().holds());
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = DenseGraph::from_edges(4, [(0, 1), (2, 3)]);
        assert!(matches!(check_drg(&g, Mode::Full), Err(Error::Disconnected(2))));
    }

    #[test]
    fn distance_two_matches_bfs() {
        assert_eq!(distance2_degree(&small::cycle(6), 0), 2);
        assert_eq!(distance2_degree(&small::star(4), 0), 0);
        assert_eq!(distance2_degree(&small::star(4), 1), 3);
        for g in [small::petersen(), small::rook(4), small::path(7)] {
            for x in 0..g.order() as u32 {
                let want = bfs_dist(&g, x).iter().filter(|&&d| d == 2).count() as u32;
                assert_eq!(distance2_degree(&g, x), want);
            }
        }
    }
}
