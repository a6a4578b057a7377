//! Hyperbolic quadratic spaces O+(2n, q).
//!
//! The form is always the standard one, `Q(x) = x0*x1 + x2*x3 + ... `, with
//! coordinates paired as `(2i, 2i+1)`. Its polar form is
//! `B(u, v) = Q(u+v) - Q(u) - Q(v) = sum_i u_{2i} v_{2i+1} + u_{2i+1} v_{2i}`.

mod cache;
mod index;
mod polarity;
mod residue;

pub use cache::{load_or_build, read_cache, write_cache, CacheHeader, CACHE_MAGIC};
pub use index::{Family, PolarIndex};
pub use polarity::{Polarity, PolarityKind};
pub use residue::Residue;

use crate::error::{Error, Result};
use crate::gf::{self, Elem, FieldTables};
use crate::linalg::{Subspace, Vector, VectorSpace, MAX_DIM};

/// Low nibble of every byte: the even coordinate of each hyperbolic pair.
const EVEN_BITS: u64 = 0x0000_0101_0101_0101;
const EVEN_NIBBLES: u64 = 0x0000_0F0F_0F0F_0F0F;

pub const FORM_NAME: &str = "hyperbolic-standard";

#[derive(Clone, Debug)]
pub struct QuadraticSpace {
    space: VectorSpace,
    rank: usize,
}

impl QuadraticSpace {
    /// O+(2·rank, q) with the standard hyperbolic form.
    pub fn new(field: FieldTables, rank: usize) -> Result<Self> {
        if rank == 0 || 2 * rank > MAX_DIM {
            return Err(Error::DimensionMismatch { expected: MAX_DIM, found: 2 * rank });
        }
        Ok(QuadraticSpace { space: VectorSpace::new(field, 2 * rank)?, rank })
    }

    pub fn hyperbolic(q: u32, rank: usize) -> Result<Self> {
        Self::new(FieldTables::new(q)?, rank)
    }

    pub fn space(&self) -> &VectorSpace {
        &self.space
    }

    pub fn field(&self) -> &FieldTables {
        self.space.field()
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }

    /// Witt index n; the ambient dimension is 2n.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        2 * self.rank
    }

    /// Short digest identifying (q, dimension, form) for cache keys.
    pub fn form_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let d = Sha256::digest(format!("{FORM_NAME}:{}:{}", self.q(), self.dim()));
        d.iter().take(4).map(|b| format!("{b:02x}")).collect()
    }

    fn check(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.dim() });
        }
        Ok(())
    }

    pub fn eval_q(&self, v: &Vector) -> Result<Elem> {
        self.check(v)?;
        Ok(self.q_packed(v.packed()))
    }

    pub fn eval_b(&self, u: &Vector, v: &Vector) -> Result<Elem> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.b_packed(u.packed(), v.packed()))
    }

    #[inline]
    pub fn q_packed(&self, v: u64) -> Elem {
        let f = self.field();
        if f.order() == 2 {
            return ((v & (v >> 4) & EVEN_BITS).count_ones() & 1) as Elem;
        }
        let mut acc = 0;
        for i in 0..self.rank {
            acc = f.add(acc, f.mul(gf::coord(v, 2 * i), gf::coord(v, 2 * i + 1)));
        }
        acc
    }

    /// Exchanges the two coordinates of every hyperbolic pair, so that
    /// `B(u, v) = u · swap(v)`.
    #[inline]
    pub(crate) fn swap_pairs(v: u64) -> u64 {
        ((v & EVEN_NIBBLES) << 4) | ((v >> 4) & EVEN_NIBBLES)
    }

    #[inline]
    pub fn b_packed(&self, u: u64, v: u64) -> Elem {
        self.field().vdot(u, Self::swap_pairs(v), self.dim())
    }

    pub fn perp(&self, u: &Subspace) -> Subspace {
        let swapped = self.space.span_packed(u.rows().iter().map(|&r| Self::swap_pairs(r)));
        self.space.annihilator(&swapped)
    }

    pub fn is_totally_singular(&self, u: &Subspace) -> bool {
        let rows = u.rows();
        rows.iter().enumerate().all(|(i, &a)| {
            self.q_packed(a) == 0 && rows[i + 1..].iter().all(|&b| self.b_packed(a, b) == 0)
        })
    }

    /// `(q^{n-1} + 1)(q^n - 1)/(q - 1)`.
    pub fn singular_point_count(&self) -> u128 {
        let q = self.q() as u128;
        let n = self.rank as u32;
        (q.pow(n - 1) + 1) * (q.pow(n) - 1) / (q - 1)
    }

    /// Maximals per family: `prod_{i=1}^{n-1} (q^i + 1)`.
    pub fn maximals_per_family(&self) -> u128 {
        let q = self.q() as u128;
        (1..self.rank as u32).map(|i| q.pow(i) + 1).product()
    }

    /// `span(e0, e2, ..., e_{2n-2})`, the maximal declared Greek.
    pub fn reference_greek(&self) -> Subspace {
        let rows: Vec<u64> = (0..self.rank).map(|i| 1u64 << (8 * i)).collect();
        Subspace::from_rref_rows(self.dim(), &rows)
    }

    pub fn enumerate_singular_points(&self) -> Vec<Subspace> {
        let whole = self.space.whole();
        self.space
            .enumerate_subspaces(&whole, 1)
            .filter(|p| self.q_packed(p.rows()[0]) == 0)
            .collect()
    }

    /// All totally singular lines through the singular point `p`.
    pub fn ts_lines_through(&self, p: &Subspace) -> Result<Vec<Subspace>> {
        let res = self.residue(p)?;
        Ok(res
            .space()
            .enumerate_singular_points()
            .iter()
            .map(|pt| res.lift(pt))
            .collect())
    }

    pub fn residue(&self, p: &Subspace) -> Result<Residue> {
        Residue::new(self, p)
    }

    /// Greeks and Latins, found by the hyperplane-flip closure of [`PolarIndex`].
    pub fn enumerate_maximals(&self) -> Result<(Vec<Subspace>, Vec<Subspace>)> {
        let idx = PolarIndex::build(self.clone())?;
        Ok((idx.greeks().to_vec(), idx.latins().to_vec()))
    }

    /// A basis `a1, b1, a2, b2, ...` of the nondegenerate subspace `w` with
    /// `Q(ai) = Q(bi) = 0`, `B(ai, bi) = 1`, distinct pairs orthogonal.
    pub(crate) fn hyperbolic_basis(&self, w: &Subspace) -> Vec<u64> {
        let f = self.field();
        let n = self.dim();
        let mut out = Vec::with_capacity(w.dim());
        let mut cur = w.clone();
        while cur.dim() > 0 {
            let a = self
                .space
                .points_of(&cur)
                .find(|&v| self.q_packed(v) == 0)
                .expect("nondegenerate plus-type subspace has singular vectors");
            let b0 = *cur
                .rows()
                .iter()
                .find(|&&r| self.b_packed(a, r) != 0)
                .expect("subspace is nondegenerate");
            let b1 = f.vscale(f.inv(self.b_packed(a, b0)), b0, n);
            let b = f.vsub_scaled(b1, self.q_packed(b1), a, n);
            out.push(a);
            out.push(b);
            let pair = self.space.span_packed([a, b]);
            cur = self.space.intersect_unchecked(&cur, &self.perp(&pair));
        }
        out
    }
}
