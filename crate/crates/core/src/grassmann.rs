//! Grassmann graphs `J_q(n, k)` and the two twisted variants of
//! `J_q(2k+1, k+1)`: by swapping the vertices inside a hyperplane, and by
//! Godsil–McKay switching.
//!
//! The hyperplane is always `H = {x : x_{2k} = 0}`, spanned by the first
//! `2k` unit vectors.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::FieldTables;
use crate::graphcore::{gm_switch, gm_validate, DenseGraph, SwitchingPartition, ValidationReport};
use crate::linalg::{gaussian, Subspace, Vector, VectorSpace};
use crate::quadspace::Polarity;

/// Largest vertex count these constructions will build.
pub const VERTEX_BUDGET: u128 = 20_000;

fn check_budget(what: &str, size: u128) -> Result<()> {
    if size > VERTEX_BUDGET {
        return Err(Error::SizeBudgetExceeded { what: what.into(), size, budget: VERTEX_BUDGET });
    }
    Ok(())
}

fn all_subspaces(space: &VectorSpace, k: usize) -> Vec<Subspace> {
    space.enumerate_subspaces(&space.whole(), k).collect()
}

/// `H`, the span of the first `n - 1` unit vectors.
pub fn hyperplane(space: &VectorSpace) -> Subspace {
    let n = space.dim();
    space.span_packed((0..n - 1).map(|i| Vector::unit(n, i).packed()))
}

/// A graph together with the subspace behind each vertex.
#[derive(Clone, Debug)]
pub struct SubspaceGraph<V> {
    pub graph: DenseGraph,
    pub vertices: Vec<V>,
}

/// `J_q(n, k)`: the `k`-spaces of `GF(q)^n`, adjacent when they meet in a
/// `(k-1)`-space.
pub fn grassmann_graph(q: u32, n: usize, k: usize) -> Result<SubspaceGraph<Subspace>> {
    if k == 0 || k >= n {
        return Err(Error::InvalidConfig(format!("need 1 <= k < n, got n={n}, k={k}")));
    }
    check_budget("grassmann vertices", gaussian(n as u32, k as u32, q))?;
    let space = VectorSpace::new(FieldTables::new(q)?, n)?;
    let vertices = all_subspaces(&space, k);
    let graph = DenseGraph::from_neighbor_fn(vertices.len(), |i, out| {
        let x = &vertices[i];
        out.extend((0..vertices.len()).filter(|&j| j != i && space.meet_dim(x, &vertices[j]) == k - 1).map(|j| j as u32));
    });
    Ok(SubspaceGraph { graph, vertices })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistedVertex {
    /// A `(k-1)`-space of `H`.
    InH(Subspace),
    /// A `(k+1)`-space not contained in `H`.
    OffH(Subspace),
}

impl TwistedVertex {
    pub fn subspace(&self) -> &Subspace {
        match self {
            TwistedVertex::InH(s) | TwistedVertex::OffH(s) => s,
        }
    }
}

/// The twisted Grassmann graph on the `(k+1)`-spaces off `H` and the
/// `(k-1)`-spaces of `H`. Off-`H` spaces are adjacent when they meet in a
/// `k`-space, spaces of `H` when they meet in a `(k-2)`-space, and mixed
/// pairs when incident. The `(k+1)`-spaces off `H` come first.
pub fn twisted_grassmann_vertexswap(q: u32, k: usize) -> Result<SubspaceGraph<TwistedVertex>> {
    if k < 1 {
        return Err(Error::InvalidConfig("k must be positive".into()));
    }
    let n = 2 * k + 1;
    check_budget("twisted grassmann vertices", gaussian(n as u32, k as u32 + 1, q))?;
    let space = VectorSpace::new(FieldTables::new(q)?, n)?;
    let h = hyperplane(&space);
    let mut vertices: Vec<TwistedVertex> = all_subspaces(&space, k + 1)
        .into_iter()
        .filter(|x| !space.is_subspace_of(x, &h))
        .map(TwistedVertex::OffH)
        .collect();
    vertices.extend(space.enumerate_subspaces(&h, k - 1).map(TwistedVertex::InH));

    let graph = DenseGraph::from_neighbor_fn(vertices.len(), |i, out| {
        for (j, w) in vertices.iter().enumerate() {
            if i == j {
                continue;
            }
            let adjacent = match (&vertices[i], w) {
                (TwistedVertex::OffH(a), TwistedVertex::OffH(b)) => space.meet_dim(a, b) == k,
                (TwistedVertex::InH(a), TwistedVertex::InH(b)) => space.meet_dim(a, b) + 2 == k,
                (TwistedVertex::InH(a), TwistedVertex::OffH(b)) | (TwistedVertex::OffH(b), TwistedVertex::InH(a)) => {
                    space.is_subspace_of(a, b)
                }
            };
            if adjacent {
                out.push(j as u32);
            }
        }
    });
    Ok(SubspaceGraph { graph, vertices })
}

/// Output of the switching construction.
#[derive(Clone, Debug)]
pub struct SwitchedGrassmann {
    /// `J_q(2k+1, k+1)` before switching.
    pub base: SubspaceGraph<Subspace>,
    pub partition: SwitchingPartition,
    pub report: ValidationReport,
    pub switched: DenseGraph,
}

/// Switches `J_q(2k+1, k+1)` with `D` = the `(k+1)`-spaces of `H`, and one
/// cell per pair `{T, T^σ}` of `k`-spaces of `H` (σ the symplectic polarity
/// of `H`) holding the `(k+1)`-spaces off `H` that meet `H` in `T` or `T^σ`.
pub fn twisted_grassmann_switch(q: u32, k: usize) -> Result<SwitchedGrassmann> {
    let n = 2 * k + 1;
    let base = grassmann_graph(q, n, k + 1)?;
    let space = VectorSpace::new(FieldTables::new(q)?, n)?;
    let h = hyperplane(&space);
    let sigma = Polarity::symplectic(&space, &h)?;

    let mut d = Vec::new();
    let mut cells: BTreeMap<(Subspace, Subspace), Vec<u32>> = BTreeMap::new();
    for (i, x) in base.vertices.iter().enumerate() {
        if space.is_subspace_of(x, &h) {
            d.push(i as u32);
            continue;
        }
        let t = space.intersect(x, &h)?;
        let ts = sigma.apply(&t);
        let key = if t <= ts { (t, ts) } else { (ts, t) };
        cells.entry(key).or_default().push(i as u32);
    }
    let partition = SwitchingPartition::new(cells.into_values().collect(), d);
    let report = gm_validate(&base.graph, &partition)?;
    if !report.passed() {
        return Err(Error::ValidationFailed(format!("{} violations, first {:?}", report.violations.len(), report.violations[0])));
    }
    let switched = gm_switch(&base.graph, &partition)?;
    Ok(SwitchedGrassmann { base, partition, report, switched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{charpoly_fingerprint, clique_census, maximal_cliques, check_drg, check_srg, default_primes, small, Mode, SrgParams, Verdict};

    #[test]
    fn small_grassmann_graphs() {
        let g = grassmann_graph(2, 3, 1).unwrap();
        assert_eq!(g.graph, small::complete(7));
        let g = grassmann_graph(2, 4, 2).unwrap();
        // lines of PG(3,2): two skew lines have (q+1)^2 common transversals;
        // two meeting lines share the 5 other lines on their point and the 4 other lines of their plane
        assert_eq!(check_srg(&g.graph, Mode::Full), Verdict::Holds(SrgParams::new(35, 18, 9, 9)));
        let g = grassmann_graph(2, 5, 3).unwrap();
        assert_eq!(g.graph.order(), 155);
        assert!((0..155).all(|i| g.graph.degree(i) == 42));
        assert!(matches!(grassmann_graph(3, 8, 4), Err(Error::SizeBudgetExceeded { .. })));
        assert!(matches!(grassmann_graph(2, 4, 4), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn vertex_swap_counts() {
        let t = twisted_grassmann_vertexswap(2, 2).unwrap();
        assert_eq!(t.graph.order() as u128, gaussian(5, 3, 2));
        let in_h = t.vertices.iter().filter(|v| matches!(v, TwistedVertex::InH(_))).count();
        assert_eq!(in_h as u128, gaussian(4, 1, 2));
        assert!((0..155).all(|i| t.graph.degree(i) == 42));
        assert!(t.graph.is_symmetric());
    }

    #[test]
    fn switch_partition_shape() {
        let s = twisted_grassmann_switch(2, 2).unwrap();
        assert_eq!(s.partition.switching_set.len() as u128, gaussian(4, 3, 2));
        // 15 self-polar lines of H give cells of 4, the other 20 lines pair up into cells of 8
        let mut sizes: Vec<usize> = s.partition.cells.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [vec![4; 15], vec![8; 10]].concat());
        assert!(s.report.passed());
        assert!(!s.report.half_pairs.is_empty());
        assert_ne!(s.switched, s.base.graph);
    }

    #[test]
    fn three_graphs_share_spectrum_and_array() {
        let j = grassmann_graph(2, 5, 3).unwrap().graph;
        let swap = twisted_grassmann_vertexswap(2, 2).unwrap().graph;
        let sw = twisted_grassmann_switch(2, 2).unwrap().switched;
        let primes = default_primes(3);
        let fj = charpoly_fingerprint(&j, &primes).unwrap();
        assert!(fj.matches(&charpoly_fingerprint(&swap, &primes).unwrap()));
        assert!(fj.matches(&charpoly_fingerprint(&sw, &primes).unwrap()));
        let a = check_drg(&j, Mode::Full).unwrap();
        assert_eq!(a.value().unwrap().to_string(), "{42,24;1,9}");
        assert_eq!(check_drg(&swap, Mode::Full).unwrap(), a);
        assert_eq!(check_drg(&sw, Mode::Full).unwrap(), a);
        // maximal cliques of J_2(5,3): 3-spaces through a line (7 each, 155 lines)
        // and inside a solid (15 each, 31 solids); the twist has other sizes
        let cj = clique_census(&maximal_cliques(&j));
        assert_eq!(cj, BTreeMap::from([(7, 155), (15, 31)]));
        let cs = clique_census(&maximal_cliques(&swap));
        assert_ne!(cj, cs);
        assert_eq!(clique_census(&maximal_cliques(&sw)), cs);
    }
}
