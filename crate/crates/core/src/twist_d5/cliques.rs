//! The seven families of maximal cliques of `Γ'`, the two of `Γ`, and the
//! census that checks nothing else occurs.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::D5Context;
use crate::error::{Error, Result};
use crate::graphcore::{is_maximal_clique, maximal_cliques, DenseGraph};
use crate::linalg::Subspace;

/// Largest graph the census runs on.
pub const CENSUS_BUDGET: u128 = 5_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CliqueType {
    /// Greeks through a line `L ⊄ P^⊥`, with `⟨P, P^⊥ ∩ L⟩`.
    I,
    /// Greeks missing `P` through a line `L ⊆ P^⊥`, with the lines through
    /// `P` meeting `L`.
    II,
    /// Lines through `P` in a Greek through `P`.
    III,
    /// Greeks meeting a solid `S ⊄ P^⊥` in at least a plane.
    IV,
    /// Greeks meeting a solid `S` in a plane, where `⟨P, S⟩` is a Greek.
    V,
    /// Greeks missing `P` meeting a Latin `L ∋ P` in a solid, with the lines
    /// through `P` in `L`.
    VI,
    /// Greeks missing `P` meeting a solid `S ∋ P` in a plane, with the lines
    /// through `P` in `S`.
    VII,
}

impl CliqueType {
    pub const ALL: [CliqueType; 7] =
        [CliqueType::I, CliqueType::II, CliqueType::III, CliqueType::IV, CliqueType::V, CliqueType::VI, CliqueType::VII];

    pub fn roman(self) -> &'static str {
        ["i", "ii", "iii", "iv", "v", "vi", "vii"][self as usize]
    }

    /// `(|C ∩ C'|, |C ∩ D|)`.
    pub fn shape(self, q: u32) -> (usize, usize) {
        let q = q as usize;
        let (q2, q3, q4) = (q * q, q * q * q, q * q * q * q);
        match self {
            CliqueType::I => (1, q3 + q2 + q + 1),
            CliqueType::II => (q + 1, q3 + q2),
            CliqueType::III => (q3 + q2 + q + 1, 0),
            CliqueType::IV | CliqueType::V => (0, q4 + q3 + q2 + q),
            CliqueType::VI => (q3 + q2 + q + 1, q4),
            CliqueType::VII => (q2 + q + 1, q4),
        }
    }

    pub fn size(self, q: u32) -> usize {
        let (a, b) = self.shape(q);
        a + b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueWitness {
    pub kind: CliqueType,
    /// The line, solid, Greek or Latin the clique is built from.
    pub witness: Subspace,
    /// `Γ'` vertices, sorted.
    pub vertices: Vec<u32>,
}

/// `g` together with the Greeks meeting it in a plane.
fn around(ctx: &D5Context, g: u32) -> Vec<u32> {
    let mut out = Vec::new();
    ctx.index().same_family_neighbors(g, &mut out);
    out.push(g);
    out
}

/// Distinct `k`-subspaces of Greeks that satisfy `keep`, each with a Greek
/// containing it.
fn greek_subspaces(ctx: &D5Context, k: usize, keep: impl Fn(&Subspace) -> bool, limit: usize) -> Vec<(Subspace, u32)> {
    let sp = ctx.space().space();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    'outer: for g in 0..ctx.index().greek_count() as u32 {
        for s in sp.enumerate_subspaces(ctx.index().maximal(g), k) {
            if out.len() >= limit {
                break 'outer;
            }
            if keep(&s) && seen.insert(s.clone()) {
                out.push((s, g));
            }
        }
    }
    out
}

/// Solids, each from its unique Greek.
fn greek_solids(ctx: &D5Context, hosts: impl Iterator<Item = u32>, keep: impl Fn(&Subspace) -> bool, limit: usize) -> Vec<(Subspace, u32)> {
    let idx = ctx.index();
    hosts
        .flat_map(|g| (0..idx.hyperplanes_per_maximal()).map(move |j| (idx.hyperplane(g, j), g)))
        .filter(|(s, _)| keep(s))
        .take(limit)
        .collect()
}

fn witnesses(ctx: &D5Context, kind: CliqueType, limit: usize) -> Vec<(Subspace, u32)> {
    let sp = ctx.space().space();
    let (p, pp) = (ctx.point(), ctx.point_perp());
    let idx = ctx.index();
    let c = ctx.c().iter().copied();
    match kind {
        CliqueType::I => greek_subspaces(ctx, 2, |l| !sp.is_subspace_of(l, pp), limit),
        CliqueType::II => greek_subspaces(ctx, 2, |l| sp.is_subspace_of(l, pp) && !sp.is_subspace_of(p, l), limit),
        CliqueType::III => c.take(limit).map(|g| (idx.maximal(g).clone(), g)).collect(),
        CliqueType::IV => greek_solids(ctx, 0..idx.greek_count() as u32, |s| !sp.is_subspace_of(s, pp), limit),
        CliqueType::V => greek_solids(ctx, c, |s| !sp.is_subspace_of(p, s), limit),
        CliqueType::VI => {
            let g = idx.greek_count() as u32;
            (g..2 * g)
                .filter(|&l| sp.is_subspace_of(p, idx.maximal(l)))
                .take(limit)
                .map(|l| (idx.maximal(l).clone(), l))
                .collect()
        }
        CliqueType::VII => greek_solids(ctx, c, |s| sp.is_subspace_of(p, s), limit),
    }
}

fn members(ctx: &D5Context, kind: CliqueType, w: &Subspace, host: u32) -> Vec<u32> {
    let sp = ctx.space().space();
    let idx = ctx.index();
    let d_where = |cands: Vec<u32>, keep: &dyn Fn(&Subspace) -> bool| -> Vec<u32> {
        cands.into_iter().filter_map(|g| ctx.vertex_of_greek(g).filter(|_| keep(idx.maximal(g)))).collect()
    };
    let lines_in = |s: &Subspace| -> Vec<u32> {
        let mut v: Vec<u32> = sp
            .points_of(s)
            .filter(|&x| !sp.contains_packed(ctx.point(), x))
            .map(|x| ctx.vertex_of_line(&ctx.line_through(x)).expect("line through P"))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut out = match kind {
        CliqueType::I => {
            let mut v = d_where(around(ctx, host), &|g| sp.is_subspace_of(w, g));
            let foot = sp.intersect(w, ctx.point_perp()).unwrap();
            v.push(ctx.vertex_of_line(&sp.sum_space(ctx.point(), &foot).unwrap()).expect("line through P"));
            v
        }
        CliqueType::II => {
            let mut v = d_where(around(ctx, host), &|g| sp.is_subspace_of(w, g));
            v.extend(sp.points_of(w).map(|x| ctx.vertex_of_line(&ctx.line_through(x)).expect("line through P")));
            v
        }
        CliqueType::III => lines_in(w),
        CliqueType::IV => d_where(around(ctx, host), &|g| sp.meet_dim(w, g) >= 3),
        CliqueType::V => d_where(around(ctx, host), &|g| sp.meet_dim(w, g) == 3),
        CliqueType::VI => {
            let mut v = d_where(idx.flips_of(host).to_vec(), &|_| true);
            v.extend(lines_in(w));
            v
        }
        CliqueType::VII => {
            let mut v = d_where(around(ctx, host), &|g| sp.meet_dim(w, g) == 3);
            v.extend(lines_in(w));
            v
        }
    };
    out.sort_unstable();
    out.dedup();
    out
}

fn check_witness(ctx: &D5Context, gp: &DenseGraph, c: &CliqueWitness) -> Result<()> {
    let q = ctx.q();
    let nl = ctx.lines().len() as u32;
    let a = c.vertices.iter().filter(|&&v| v < nl).count();
    let shape = (a, c.vertices.len() - a);
    let fail = |what: &str| Err(Error::ValidationFailed(format!("type ({}) clique {}: {what}", c.kind.roman(), c.witness.key())));
    if shape != c.kind.shape(q) {
        return fail(&format!("shape {shape:?}, expected {:?}", c.kind.shape(q)));
    }
    if !is_maximal_clique(gp, &c.vertices) {
        return fail("not a maximal clique");
    }
    Ok(())
}

fn instances(ctx: &D5Context, kind: CliqueType, limit: usize) -> Vec<CliqueWitness> {
    let all: Vec<CliqueWitness> = witnesses(ctx, kind, limit.saturating_mul(64))
        .into_par_iter()
        .map(|(w, host)| {
            let vertices = members(ctx, kind, &w, host);
            CliqueWitness { kind, witness: w, vertices }
        })
        .collect();
    // several witnesses can describe the same vertex set
    let mut seen = HashSet::new();
    all.into_iter().filter(|c| seen.insert(c.vertices.clone())).take(limit).collect()
}

/// Instances of one clique type in `Γ'` (the first `limit` distinct vertex
/// sets, or all), each checked to be a maximal clique of the stated shape.
pub fn clique_family(ctx: &D5Context, gp: &DenseGraph, kind: CliqueType, limit: Option<usize>) -> Result<Vec<CliqueWitness>> {
    if limit.is_none() && ctx.vertex_count() as u128 > CENSUS_BUDGET {
        return Err(Error::SizeBudgetExceeded {
            what: "clique family enumeration".into(),
            size: ctx.vertex_count() as u128,
            budget: CENSUS_BUDGET,
        });
    }
    let out = instances(ctx, kind, limit.unwrap_or(usize::MAX));
    if out.is_empty() {
        return Err(Error::WitnessUnavailable(format!("type ({})", kind.roman())));
    }
    out.iter().try_for_each(|c| check_witness(ctx, gp, c))?;
    Ok(out)
}

/// Cliques made of a line `⟨P, u⟩` and the Greeks missing `P` that meet a
/// Latin `M` (with `P ∉ M`) in a solid through `u`, for `u` a point of
/// `P^⊥ ∩ M`. Shape `(1, q^3+q^2+q)`.
pub fn latin_point_cliques(ctx: &D5Context) -> Vec<Vec<u32>> {
    let sp = ctx.space().space();
    let idx = ctx.index();
    let g = idx.greek_count() as u32;
    (g..2 * g)
        .into_par_iter()
        .filter(|&m| !sp.is_subspace_of(ctx.point(), idx.maximal(m)))
        .flat_map_iter(|m| {
            let foot = ctx.perp_part(idx.maximal(m));
            sp.points_of(&foot)
                .map(|u| {
                    let mut v: Vec<u32> = idx
                        .flips_of(m)
                        .iter()
                        .filter(|&&h| sp.contains_packed(idx.maximal(h), u))
                        .filter_map(|&h| ctx.vertex_of_greek(h))
                        .collect();
                    v.push(ctx.vertex_of_line(&ctx.line_through(u)).expect("line through P"));
                    v.sort_unstable();
                    v
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FamilyTally {
    /// distinct vertex sets
    pub instances: u64,
    /// of those, how many are maximal cliques
    pub maximal: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub graph: &'static str,
    pub cliques: u64,
    pub by_size: BTreeMap<usize, u64>,
    pub families: BTreeMap<String, FamilyTally>,
    /// Maximal cliques in none of the families.
    pub unclassified: u64,
    pub unclassified_by_shape: BTreeMap<String, u64>,
    pub first_unclassified: Option<Vec<u32>>,
    /// Unclassified cliques that are latin-point cliques.
    pub unclassified_latin_point: u64,
}

impl CensusReport {
    /// Every maximal clique is in a family and every family member is
    /// maximal.
    pub fn passed(&self) -> bool {
        self.unclassified == 0 && self.families.values().all(|t| t.instances == t.maximal)
    }

    pub fn has_size(&self, s: usize) -> bool {
        self.by_size.contains_key(&s)
    }

    pub fn max_size(&self) -> usize {
        self.by_size.keys().next_back().copied().unwrap_or(0)
    }
}

fn census(
    graph: &'static str,
    g: &DenseGraph,
    families: Vec<(String, Vec<Vec<u32>>)>,
    shape: impl Fn(&[u32]) -> String,
    extra: Vec<Vec<u32>>,
) -> CensusReport {
    let found = maximal_cliques(g);
    let found_set: HashSet<&[u32]> = found.iter().map(Vec::as_slice).collect();
    let mut known: HashSet<&[u32]> = HashSet::new();
    let mut tallies = BTreeMap::new();
    for (label, sets) in &families {
        let distinct: HashSet<&[u32]> = sets.iter().map(Vec::as_slice).collect();
        let maximal = distinct.iter().filter(|c| found_set.contains(*c)).count() as u64;
        tallies.insert(label.clone(), FamilyTally { instances: distinct.len() as u64, maximal });
        known.extend(distinct);
    }
    let extra: HashSet<&[u32]> = extra.iter().map(Vec::as_slice).collect();
    let mut r = CensusReport {
        graph,
        cliques: found.len() as u64,
        by_size: crate::graphcore::clique_census(&found),
        families: tallies,
        unclassified: 0,
        unclassified_by_shape: BTreeMap::new(),
        first_unclassified: None,
        unclassified_latin_point: 0,
    };
    for c in found.iter().filter(|c| !known.contains(c.as_slice())) {
        r.unclassified += 1;
        *r.unclassified_by_shape.entry(shape(c)).or_insert(0) += 1;
        r.first_unclassified.get_or_insert_with(|| c.clone());
        if extra.contains(c.as_slice()) {
            r.unclassified_latin_point += 1;
        }
    }
    r
}

/// All maximal cliques of `Γ'`, matched against the seven families. Family
/// members are not required to be maximal here; the report counts them.
pub fn classify_gamma_prime_census(ctx: &D5Context, gp: &DenseGraph) -> Result<CensusReport> {
    if gp.order() as u128 > CENSUS_BUDGET {
        return Err(Error::SizeBudgetExceeded { what: "clique census".into(), size: gp.order() as u128, budget: CENSUS_BUDGET });
    }
    let families = CliqueType::ALL
        .iter()
        .map(|&kind| (format!("({})", kind.roman()), instances(ctx, kind, usize::MAX).into_iter().map(|c| c.vertices).collect()))
        .collect();
    let nl = ctx.lines().len() as u32;
    let shape = |c: &[u32]| {
        let a = c.iter().filter(|&&v| v < nl).count();
        format!("({a}, {})", c.len() - a)
    };
    Ok(census("gamma-prime", gp, families, shape, latin_point_cliques(ctx)))
}

/// The two families of maximal cliques of `Γ`: Greeks through a line, and
/// Greeks meeting a solid in at least a plane. Greek ids, sorted, distinct.
fn gamma_families(ctx: &D5Context) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let sp = ctx.space().space();
    let idx = ctx.index();
    let line_cliques = greek_subspaces(ctx, 2, |_| true, usize::MAX)
        .into_par_iter()
        .map(|(l, host)| {
            let mut v: Vec<u32> = around(ctx, host).into_iter().filter(|&g| sp.is_subspace_of(&l, idx.maximal(g))).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let mut solid_cliques: Vec<Vec<u32>> = greek_solids(ctx, 0..idx.greek_count() as u32, |_| true, usize::MAX)
        .into_par_iter()
        .map(|(s, host)| {
            let mut v: Vec<u32> = around(ctx, host).into_iter().filter(|&g| sp.meet_dim(&s, idx.maximal(g)) >= 3).collect();
            v.sort_unstable();
            v
        })
        .collect();
    // the solids of one Latin all give the same clique
    solid_cliques.sort_unstable();
    solid_cliques.dedup();
    (line_cliques, solid_cliques)
}

/// All maximal cliques of `Γ`, matched against its two families.
pub fn classify_gamma_census(ctx: &D5Context, gamma: &DenseGraph) -> Result<CensusReport> {
    if gamma.order() as u128 > CENSUS_BUDGET {
        return Err(Error::SizeBudgetExceeded { what: "clique census".into(), size: gamma.order() as u128, budget: CENSUS_BUDGET });
    }
    let (lines, solids) = gamma_families(ctx);
    let families = vec![("line".to_string(), lines), ("solid".to_string(), solids)];
    Ok(census("gamma", gamma, families, |c| c.len().to_string(), Vec::new()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub line_cliques: u64,
    pub solid_cliques: u64,
    pub line_clique_size: Vec<usize>,
    pub solid_clique_size: Vec<usize>,
    pub all_maximal: bool,
    pub pairs_sampled: u64,
    /// intersection size → pair count, over sampled pairs sharing a vertex
    pub histogram: BTreeMap<usize, u64>,
    pub bound: usize,
    /// A line clique against the clique of a solid containing the line.
    pub line_in_solid: usize,
    /// Two line cliques whose lines span a totally singular plane.
    pub coplanar_lines: usize,
}

impl IntersectionReport {
    pub fn passed(&self) -> bool {
        let q_bound = self.bound;
        self.all_maximal
            && self.histogram.keys().all(|&k| k <= q_bound)
            && self.histogram.contains_key(&q_bound)
            && self.line_in_solid == q_bound
    }
}

fn meet_count(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

/// Builds both clique families of `Γ`, checks they are maximal, and
/// intersects `samples` random pairs of distinct cliques through a common
/// vertex.
pub fn clique_intersection_check(ctx: &D5Context, gamma: &DenseGraph, samples: usize, seed: u64) -> Result<IntersectionReport> {
    if gamma.order() as u128 > CENSUS_BUDGET {
        return Err(Error::SizeBudgetExceeded { what: "clique families".into(), size: gamma.order() as u128, budget: CENSUS_BUDGET });
    }
    let q = ctx.q() as usize;
    let sp = ctx.space().space();
    let idx = ctx.index();
    let (lines, solids) = gamma_families(ctx);
    let sizes = |cs: &[Vec<u32>]| {
        let mut s: Vec<usize> = cs.iter().map(Vec::len).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    let all_maximal = lines.par_iter().chain(solids.par_iter()).all(|c| is_maximal_clique(gamma, c));

    let all: Vec<&Vec<u32>> = lines.iter().chain(&solids).collect();
    let mut through: Vec<Vec<u32>> = vec![Vec::new(); gamma.order()];
    for (i, c) in all.iter().enumerate() {
        for &v in c.iter() {
            through[v as usize].push(i as u32);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut histogram = BTreeMap::new();
    for _ in 0..samples {
        let v = rng.gen_range(0..gamma.order());
        let t = &through[v];
        let i = t[rng.gen_range(0..t.len())];
        let j = loop {
            let j = t[rng.gen_range(0..t.len())];
            if j != i {
                break j;
            }
        };
        *histogram.entry(meet_count(all[i as usize], all[j as usize])).or_insert(0) += 1;
    }

    // explicit configurations inside Greek 0
    let g0 = idx.maximal(0);
    let solid = idx.hyperplane(0, 0);
    let mut plane_lines = sp.enumerate_subspaces(&sp.enumerate_subspaces(&solid, 3).next().unwrap(), 2);
    let (l1, l2) = (plane_lines.next().unwrap(), plane_lines.next().unwrap());
    let clique_of_line = |l: &Subspace| -> Vec<u32> {
        let mut v: Vec<u32> = around(ctx, 0).into_iter().filter(|&g| sp.is_subspace_of(l, idx.maximal(g))).collect();
        v.sort_unstable();
        v
    };
    let mut solid_clique: Vec<u32> = around(ctx, 0).into_iter().filter(|&g| sp.meet_dim(&solid, idx.maximal(g)) >= 3).collect();
    solid_clique.sort_unstable();
    debug_assert!(sp.is_subspace_of(&solid, g0));

    Ok(IntersectionReport {
        line_cliques: lines.len() as u64,
        solid_cliques: solids.len() as u64,
        line_clique_size: sizes(&lines),
        solid_clique_size: sizes(&solids),
        all_maximal,
        pairs_sampled: samples as u64,
        histogram,
        bound: q * q + q + 1,
        line_in_solid: meet_count(&clique_of_line(&l1), &solid_clique),
        coplanar_lines: meet_count(&clique_of_line(&l1), &clique_of_line(&l2)),
    })
}
