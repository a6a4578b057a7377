//! `D_{5,5}(q)` on the Greeks of `O+(10, q)` and its twist `Γ'` on
//! `C' ∪ D`, where for a fixed singular point `P`, `C'` is the set of totally
//! singular lines through `P` and `D` the Greeks missing `P`.
//!
//! Vertex numbering of `Γ'`: the lines of `C'` first, in canonical order,
//! then `D` in Greek-id order. `Γ` uses Greek ids directly.

mod cliques;
mod fact_one;
mod fourvc;
mod lemma;

use std::collections::HashMap;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphcore::DenseGraph;
use crate::linalg::{Subspace, Vector};
use crate::quadspace::{load_or_build, PolarIndex, QuadraticSpace, Residue};

pub use cliques::{
    classify_gamma_census, classify_gamma_prime_census, clique_family, clique_intersection_check, latin_point_cliques, CensusReport,
    CliqueType, CliqueWitness, FamilyTally, IntersectionReport, CENSUS_BUDGET,
};
pub use fact_one::{classify_common_neighborhood, sample_fact_one, FactOneSummary, FactOneTally, PairCase, SubCase};
pub use fourvc::{four_vertex_by_kind, KindCounts};
pub use lemma::{residue_lemma_check, ResidueLemmaReport};

/// Largest Greek count a context is built for.
pub const VERTEX_BUDGET: u128 = 100_000;

/// `(q+1)(q^2+1)(q^3+1)(q^4+1)`.
pub fn greek_count(q: u32) -> u128 {
    (1..=4).map(|i| (q as u128).pow(i) + 1).product()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum D5Vertex {
    LineThroughP(Subspace),
    GreekOffP(Subspace),
}

pub struct D5Context {
    index: PolarIndex,
    point: Subspace,
    point_perp: Subspace,
    residue: Residue,
    lines: Vec<Subspace>,
    line_ids: HashMap<Subspace, u32>,
    c: Vec<u32>,
    d: Vec<u32>,
    gp_of_greek: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl D5Context {
    pub fn new(q: u32) -> Result<Self> {
        Self::with_cache(q, None)
    }

    /// Builds (or loads from `cache_dir`) the polar index of `O+(10, q)`.
    pub fn with_cache(q: u32, cache_dir: Option<&Path>) -> Result<Self> {
        let v = greek_count(q);
        if v > VERTEX_BUDGET {
            return Err(Error::SizeBudgetExceeded { what: "D5,5 vertices".into(), size: v, budget: VERTEX_BUDGET });
        }
        let space = QuadraticSpace::hyperbolic(q, 5)?;
        Self::from_index(load_or_build(&space, cache_dir)?)
    }

    /// `P = ⟨e_0⟩`.
    pub fn from_index(index: PolarIndex) -> Result<Self> {
        let qs = index.space().clone();
        if qs.rank() != 5 {
            return Err(Error::DimensionMismatch { expected: 10, found: qs.dim() });
        }
        let sp = qs.space();
        let point = sp.span(&[Vector::unit(10, 0)])?;
        let point_perp = qs.perp(&point);
        let residue = qs.residue(&point)?;
        let mut lines = qs.ts_lines_through(&point)?;
        lines.sort();
        let line_ids = lines.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
        let (mut c, mut d) = (Vec::new(), Vec::new());
        let mut gp_of_greek = vec![NONE; index.greek_count()];
        for g in 0..index.greek_count() as u32 {
            if sp.is_subspace_of(&point, index.maximal(g)) {
                c.push(g);
            } else {
                gp_of_greek[g as usize] = (lines.len() + d.len()) as u32;
                d.push(g);
            }
        }
        Ok(D5Context { index, point, point_perp, residue, lines, line_ids, c, d, gp_of_greek })
    }

    pub fn q(&self) -> u32 {
        self.index.space().q()
    }

    pub fn index(&self) -> &PolarIndex {
        &self.index
    }

    pub fn space(&self) -> &QuadraticSpace {
        self.index.space()
    }

    pub fn point(&self) -> &Subspace {
        &self.point
    }

    pub fn point_perp(&self) -> &Subspace {
        &self.point_perp
    }

    pub fn residue(&self) -> &Residue {
        &self.residue
    }

    /// `C'`, sorted.
    pub fn lines(&self) -> &[Subspace] {
        &self.lines
    }

    /// Greek ids through `P`.
    pub fn c(&self) -> &[u32] {
        &self.c
    }

    /// Greek ids missing `P`.
    pub fn d(&self) -> &[u32] {
        &self.d
    }

    pub fn vertex_count(&self) -> usize {
        self.lines.len() + self.d.len()
    }

    pub fn is_line(&self, v: u32) -> bool {
        (v as usize) < self.lines.len()
    }

    /// Subspace behind a `Γ'` vertex.
    pub fn subspace(&self, v: u32) -> &Subspace {
        match self.greek_of(v) {
            Some(g) => self.index.maximal(g),
            None => &self.lines[v as usize],
        }
    }

    pub fn vertex(&self, v: u32) -> D5Vertex {
        if self.is_line(v) {
            D5Vertex::LineThroughP(self.lines[v as usize].clone())
        } else {
            D5Vertex::GreekOffP(self.subspace(v).clone())
        }
    }

    /// Greek id of a `Γ'` vertex in `D`.
    pub fn greek_of(&self, v: u32) -> Option<u32> {
        let n = self.lines.len() as u32;
        (v >= n).then(|| self.d[(v - n) as usize])
    }

    /// `Γ'` vertex of a Greek missing `P`.
    pub fn vertex_of_greek(&self, g: u32) -> Option<u32> {
        let v = self.gp_of_greek[g as usize];
        (v != NONE).then_some(v)
    }

    pub fn vertex_of_line(&self, line: &Subspace) -> Option<u32> {
        self.line_ids.get(line).copied()
    }

    /// The line `⟨P, v⟩` for a vector `v ∈ P^⊥ \ P`.
    pub fn line_through(&self, v: u64) -> Subspace {
        self.space().space().span_packed([self.point.rows()[0], v])
    }

    /// `P^⊥ ∩ y` for a Greek `y` missing `P`: a solid.
    pub fn perp_part(&self, y: &Subspace) -> Subspace {
        self.space().space().intersect(&self.point_perp, y).expect("same ambient space")
    }

    /// `Γ'` ids of the lines of `C'` meeting the Greek `y` (which misses `P`).
    pub fn lines_meeting(&self, y: &Subspace) -> Vec<u32> {
        let sp = self.space().space();
        let mut out: Vec<u32> = sp
            .points_of(&self.perp_part(y))
            .map(|v| self.line_ids[&self.line_through(v)])
            .collect();
        out.sort_unstable();
        out
    }
}

/// `Γ`: Greeks, adjacent when they meet in a plane.
pub fn build_gamma(ctx: &D5Context) -> DenseGraph {
    let idx = &ctx.index;
    DenseGraph::from_neighbor_fn(idx.greek_count(), |i, out| idx.same_family_neighbors(i as u32, out))
}

/// `Γ'` on `C' ∪ D`: lines spanning a totally singular plane, Greeks meeting
/// in a plane, and a line and a Greek meeting in a point.
pub fn build_gamma_prime(ctx: &D5Context) -> DenseGraph {
    let qs = ctx.space();
    let sp = qs.space();
    let nl = ctx.lines.len();

    let line_line: Vec<Vec<u32>> = (0..nl)
        .into_par_iter()
        .map(|i| {
            let x = &ctx.lines[i];
            (0..nl as u32)
                .filter(|&j| j as usize != i && qs.is_totally_singular(&sp.sum_space(x, &ctx.lines[j as usize]).unwrap()))
                .collect()
        })
        .collect();
    let greek_line: Vec<Vec<u32>> = ctx.d.par_iter().map(|&g| ctx.lines_meeting(ctx.index.maximal(g))).collect();
    let mut line_greek: Vec<Vec<u32>> = vec![Vec::new(); nl];
    for (j, ls) in greek_line.iter().enumerate() {
        for &l in ls {
            line_greek[l as usize].push((nl + j) as u32);
        }
    }

    DenseGraph::from_neighbor_fn(ctx.vertex_count(), |v, out| {
        if v < nl {
            out.extend_from_slice(&line_line[v]);
            out.extend_from_slice(&line_greek[v]);
        } else {
            let g = ctx.d[v - nl];
            let mut nb = Vec::new();
            ctx.index.same_family_neighbors(g, &mut nb);
            out.extend(nb.iter().filter_map(|&h| ctx.vertex_of_greek(h)));
            out.extend_from_slice(&greek_line[v - nl]);
        }
    })
}

/// Parameters `(v, k, λ, μ)` shared by `Γ` and `Γ'`.
pub fn expected_parameters(q: u32) -> crate::graphcore::SrgParams {
    let q = q as u64;
    let v = (q + 1) * (q * q + 1) * (q * q * q + 1) * (q.pow(4) + 1);
    let k = q * (q * q + 1) * (q.pow(5) - 1) / (q - 1);
    let lambda = q - 1 + q * q * (q + 1) * (q * q + q + 1);
    let mu = (q * q + 1) * (q * q + q + 1);
    crate::graphcore::SrgParams::new(v, k, lambda, mu)
}
