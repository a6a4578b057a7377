//! Switching `D_{6,6}(q)`, the Greeks of `O+(12, q)` adjacent when they meet
//! in a solid.
//!
//! Fix a Latin `L` and a polarity `σ` of `L`. The switching set `D` holds the
//! Greeks meeting `L` in a hyperplane of `L`. Every other Greek meets `L` in
//! a point or a plane `S`; the cells are `X_P` for points and
//! `X_π ∪ X_{π^σ}` for planes, where `X_S` is the set of Greeks `G` with
//! `G ∩ L = S`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphcore::{distance2_degree, gm_switch_in_place, DenseGraph, Mode, SwitchingPartition, ValidationReport};
use crate::linalg::{Subspace, Vector};
use crate::quadspace::{load_or_build, Family, PolarIndex, Polarity, PolarityKind, QuadraticSpace};

pub const VERTEX_BUDGET: u128 = 100_000;

/// `(q+1)(q^2+1)(q^3+1)(q^4+1)(q^5+1)`.
pub fn greek_count(q: u32) -> u128 {
    (1..=5).map(|i| (q as u128).pow(i) + 1).product()
}

pub struct D6Context {
    index: PolarIndex,
    latin: Subspace,
    polarity: Polarity,
    /// `G ∩ L` for every Greek
    meets: Vec<Subspace>,
}

impl D6Context {
    pub fn new(q: u32) -> Result<Self> {
        Self::with_cache(q, None)
    }

    pub fn with_cache(q: u32, cache_dir: Option<&Path>) -> Result<Self> {
        let v = greek_count(q);
        if v > VERTEX_BUDGET {
            return Err(Error::SizeBudgetExceeded { what: "D6,6 vertices".into(), size: v, budget: VERTEX_BUDGET });
        }
        let space = QuadraticSpace::hyperbolic(q, 6)?;
        Self::from_index(load_or_build(&space, cache_dir)?)
    }

    /// `L = ⟨e_0, e_2, e_4, e_6, e_8, e_11⟩`.
    pub fn from_index(index: PolarIndex) -> Result<Self> {
        let qs = index.space();
        if qs.rank() != 6 {
            return Err(Error::DimensionMismatch { expected: 12, found: qs.dim() });
        }
        let sp = qs.space();
        let latin = sp.span(&[0, 2, 4, 6, 8, 11].map(|i| Vector::unit(12, i)))?;
        let id = index.id_of(&latin).ok_or_else(|| Error::NotFound("fixed Latin".into()))?;
        if index.family(id) != Family::Latin {
            return Err(Error::InvalidConfig("fixed maximal is not a Latin".into()));
        }
        let polarity = Polarity::symplectic(sp, &latin)?;
        let meets = (0..index.greek_count() as u32)
            .into_par_iter()
            .map(|g| sp.intersect_unchecked(index.maximal(g), &latin))
            .collect();
        Ok(D6Context { index, latin, polarity, meets })
    }

    pub fn q(&self) -> u32 {
        self.index.space().q()
    }

    pub fn index(&self) -> &PolarIndex {
        &self.index
    }

    pub fn latin(&self) -> &Subspace {
        &self.latin
    }

    /// The symplectic polarity of `L`.
    pub fn polarity(&self) -> &Polarity {
        &self.polarity
    }

    pub fn polarity_of_kind(&self, kind: PolarityKind) -> Result<Polarity> {
        Polarity::new(kind, self.index.space().space(), &self.latin)
    }

    /// `G ∩ L`.
    pub fn meet(&self, g: u32) -> &Subspace {
        &self.meets[g as usize]
    }

    pub fn vertex_count(&self) -> usize {
        self.index.greek_count()
    }
}

/// `Γ`: Greeks meeting in a solid.
pub fn build_gamma6(ctx: &D6Context) -> DenseGraph {
    let idx = &ctx.index;
    DenseGraph::from_neighbor_fn(idx.greek_count(), |i, out| idx.same_family_neighbors(i as u32, out))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKey {
    Point(Subspace),
    /// `{π, π^σ}`, smaller first; equal when `π` is self-polar.
    Planes(Subspace, Subspace),
}

#[derive(Clone, Debug)]
pub struct D6Partition {
    pub partition: SwitchingPartition,
    pub keys: Vec<CellKey>,
    /// meet dimension with `L` → number of Greeks
    pub meet_dims: BTreeMap<usize, usize>,
}

impl D6Partition {
    pub fn point_cells(&self) -> usize {
        self.keys.iter().filter(|k| matches!(k, CellKey::Point(_))).count()
    }

    pub fn plane_cells(&self) -> usize {
        self.keys.len() - self.point_cells()
    }

    pub fn self_polar_planes(&self) -> usize {
        self.keys.iter().filter(|k| matches!(k, CellKey::Planes(a, b) if a == b)).count()
    }

    pub fn cell_sizes(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for c in &self.partition.cells {
            *m.entry(c.len()).or_insert(0) += 1;
        }
        m
    }
}

/// Splits the Greeks into `D` and the cells, pairing planes with the
/// symplectic polarity. Fails with [`Error::CoverageGap`] on a Greek meeting
/// `L` in even dimension.
pub fn build_partition(ctx: &D6Context) -> Result<D6Partition> {
    build_partition_with(ctx, &ctx.polarity)
}

pub fn build_partition_with(ctx: &D6Context, polarity: &Polarity) -> Result<D6Partition> {
    let mut d = Vec::new();
    let mut cells: HashMap<CellKey, Vec<u32>> = HashMap::new();
    let mut meet_dims = BTreeMap::new();
    for g in 0..ctx.vertex_count() as u32 {
        let m = ctx.meet(g);
        *meet_dims.entry(m.dim()).or_insert(0) += 1;
        let key = match m.dim() {
            5 => {
                d.push(g);
                continue;
            }
            3 => {
                let dual = polarity.apply(m);
                if &dual < m {
                    CellKey::Planes(dual, m.clone())
                } else {
                    CellKey::Planes(m.clone(), dual)
                }
            }
            1 => CellKey::Point(m.clone()),
            _ => return Err(Error::CoverageGap(g)),
        };
        cells.entry(key).or_default().push(g);
    }
    let mut cells: Vec<(CellKey, Vec<u32>)> = cells.into_iter().collect();
    cells.sort();
    let (keys, cells): (Vec<_>, Vec<_>) = cells.into_iter().unzip();
    Ok(D6Partition { partition: SwitchingPartition::new(cells, d), keys, meet_dims })
}

/// Validates the switching conditions on `g` (which must be `Γ`) and
/// switches it in place.
pub fn validate_and_switch(part: &D6Partition, g: &mut DenseGraph) -> Result<ValidationReport> {
    gm_switch_in_place(g, &part.partition).map_err(|e| match e {
        Error::InvalidPartition(s) => Error::ValidationFailed(s),
        e => e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfWitnessReport {
    /// `(G, cell)` with `G ∈ D` containing exactly one of `π`, `π^σ`
    pub predicted: u64,
    pub failures: u64,
    pub first_failure: Option<(u32, u32)>,
    /// The predicted pairs are exactly the half pairs found by validation.
    pub matches_validation: bool,
}

impl HalfWitnessReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.matches_validation
    }
}

/// For every `G ∈ D` and plane cell `{π, π^σ}` with exactly one of the two
/// planes in `G`, checks that `G` has exactly half of the cell as neighbors
/// in `g` (the unswitched graph).
pub fn half_witness_check(ctx: &D6Context, part: &D6Partition, g: &DenseGraph, report: &ValidationReport) -> HalfWitnessReport {
    let sp = ctx.index.space().space();
    let cells = &part.partition.cells;
    let per_d: Vec<Vec<(u32, u32, bool)>> = part
        .partition
        .switching_set
        .par_iter()
        .map(|&x| {
            let gx = ctx.index.maximal(x);
            part.keys
                .iter()
                .enumerate()
                .filter_map(|(c, key)| match key {
                    CellKey::Planes(a, b) if sp.is_subspace_of(a, gx) != sp.is_subspace_of(b, gx) => {
                        let cell = &cells[c];
                        let k = cell.iter().filter(|&&y| g.has_edge(x, y)).count();
                        Some((x, c as u32, 2 * k == cell.len()))
                    }
                    _ => None,
                })
                .collect()
        })
        .collect();
    let all: Vec<(u32, u32, bool)> = per_d.into_iter().flatten().collect();
    let mut predicted: Vec<(u32, u32)> = all.iter().map(|&(x, c, _)| (x, c)).collect();
    predicted.sort_unstable();
    let mut found = report.half_pairs.clone();
    found.sort_unstable();
    let bad: Vec<(u32, u32)> = all.iter().filter(|t| !t.2).map(|&(x, c, _)| (x, c)).collect();
    HalfWitnessReport {
        predicted: predicted.len() as u64,
        failures: bad.len() as u64,
        first_failure: bad.first().copied(),
        matches_validation: predicted == found,
    }
}

/// Distance-2 degree in `Γ` computed from the polar index.
pub fn gamma_distance2_degree(ctx: &D6Context, x: u32) -> u32 {
    let idx = &ctx.index;
    let mut mark = vec![0u8; idx.greek_count()];
    let (mut nb, mut far) = (Vec::new(), Vec::new());
    idx.same_family_neighbors(x, &mut nb);
    mark[x as usize] = 1;
    for &y in &nb {
        mark[y as usize] = 1;
    }
    let mut count = 0;
    for &y in &nb {
        idx.same_family_neighbors(y, &mut far);
        for &z in &far {
            if mark[z as usize] == 0 {
                mark[z as usize] = 2;
                count += 1;
            }
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonDrgCertificate {
    pub u: u32,
    pub v: u32,
    pub switched_d2: (u32, u32),
    pub gamma_d2: (u32, u32),
}

impl NonDrgCertificate {
    pub fn is_valid(&self) -> bool {
        self.switched_d2.0 != self.switched_d2.1 && self.gamma_d2.0 == self.gamma_d2.1
    }
}

/// Two vertices of the switched graph with different distance-2 degrees,
/// searched among `D`, then the cells, then everything else.
pub fn non_drg_certificate(ctx: &D6Context, part: &D6Partition, switched: &DenseGraph) -> Result<NonDrgCertificate> {
    let p = &part.partition;
    let in_d: std::collections::HashSet<u32> = p.switching_set.iter().copied().collect();
    let order = p
        .switching_set
        .iter()
        .copied()
        .chain(p.cells.iter().map(|c| c[0]))
        .chain((0..switched.order() as u32).filter(|v| !in_d.contains(v)));
    let mut order = order;
    let u = order.next().ok_or_else(|| Error::NotFound("empty graph".into()))?;
    let du = distance2_degree(switched, u);
    for v in order {
        let dv = distance2_degree(switched, v);
        if dv != du {
            return Ok(NonDrgCertificate {
                u,
                v,
                switched_d2: (du, dv),
                gamma_d2: (gamma_distance2_degree(ctx, u), gamma_distance2_degree(ctx, v)),
            });
        }
    }
    Err(Error::NotFound("distance-2 graph is regular".into()))
}

/// Distance-2 degree → number of vertices, over all or sampled vertices.
pub fn distance2_profile(g: &DenseGraph, mode: Mode) -> BTreeMap<u32, u64> {
    let values: Vec<u32> = mode.bases(g.order()).par_iter().map(|&x| distance2_degree(g, x)).collect();
    let mut m = BTreeMap::new();
    for v in values {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::gaussian;
    use std::sync::OnceLock;

    fn ctx2() -> &'static D6Context {
        static CTX: OnceLock<D6Context> = OnceLock::new();
        CTX.get_or_init(|| D6Context::new(2).unwrap())
    }

    #[test]
    fn greek_count_formula() {
        assert_eq!(greek_count(2), 75735);
        assert_eq!(greek_count(3), 4 * 10 * 28 * 82 * 244);
    }

    #[test]
    fn budget_refuses_q3() {
        assert!(matches!(D6Context::new(3), Err(Error::SizeBudgetExceeded { .. })));
    }

    #[test]
    fn partition_shape_at_q2() {
        let ctx = ctx2();
        let part = build_partition(ctx).unwrap();
        assert_eq!(part.partition.switching_set.len() as u128, gaussian(6, 5, 2));
        assert_eq!(part.point_cells() as u128, gaussian(6, 1, 2));
        assert!(part.plane_cells() as u128 <= gaussian(6, 3, 2));
        assert_eq!(part.meet_dims.keys().copied().collect::<Vec<_>>(), vec![1, 3, 5]);
        let covered: usize = part.partition.cells.iter().map(Vec::len).sum::<usize>() + part.partition.switching_set.len();
        assert_eq!(covered, 75735);
        part.partition.cell_of(75735).unwrap();
        // every plane either pairs with a different plane or is self-polar
        let planes = 2 * part.plane_cells() - part.self_polar_planes();
        assert_eq!(planes as u128, gaussian(6, 3, 2));
    }

    #[test]
    fn polarity_pairs_planes_of_the_latin() {
        let ctx = ctx2();
        let sp = ctx.index().space().space();
        for pi in sp.enumerate_subspaces(ctx.latin(), 3).step_by(50) {
            let dual = ctx.polarity().apply(&pi);
            assert_eq!(dual.dim(), 3);
            assert!(sp.is_subspace_of(&dual, ctx.latin()));
            assert_eq!(ctx.polarity().apply(&dual), pi);
        }
    }

    #[test]
    fn sparse_distance2_matches_dense() {
        let ctx = ctx2();
        let g = build_gamma6(ctx);
        assert_eq!(g.degree(0), 1302);
        for x in [0, 1, 4000, 75734] {
            assert_eq!(gamma_distance2_degree(ctx, x), distance2_degree(&g, x));
        }
    }

    #[test]
    fn orthogonal_partition_shape() {
        let ctx = ctx2();
        let sigma = ctx.polarity_of_kind(PolarityKind::Orthogonal).unwrap();
        let part = build_partition_with(ctx, &sigma).unwrap();
        assert_eq!(part.self_polar_planes(), 15);
        assert_eq!(part.cell_sizes(), BTreeMap::from([(8, 15), (16, 690), (1024, 63)]));
    }

    #[test]
    fn plane_greeks_only_see_point_cells_inside_their_plane() {
        // G ∩ L = π and H ∩ L = P with dim(G ∩ H) = 4 forces P ⊂ π: in the
        // residue of P both G and L meet in a 3-space and H would have to
        // meet that 3-space inside the 5-space image of G
        let ctx = ctx2();
        let sp = ctx.index().space().space();
        let mut nb = Vec::new();
        let plane_greeks = (0..ctx.vertex_count() as u32).filter(|&g| ctx.meet(g).dim() == 3);
        for g in plane_greeks.step_by(997).take(12) {
            ctx.index().same_family_neighbors(g, &mut nb);
            let mut per_point: BTreeMap<&Subspace, u32> = BTreeMap::new();
            for &h in &nb {
                let m = ctx.meet(h);
                if m.dim() == 1 {
                    assert!(sp.is_subspace_of(m, ctx.meet(g)));
                    *per_point.entry(m).or_insert(0) += 1;
                }
            }
            assert_eq!(per_point.len(), 7);
            assert!(per_point.values().all(|&c| c == 128));
        }
    }
}
