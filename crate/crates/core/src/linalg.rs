//! Vectors and subspaces of GF(q)^n, n <= 12.
//!
//! A [`Subspace`] is stored as its reduced row echelon basis, so two values
//! compare equal exactly when they are the same set of vectors. The pivot of a
//! row is its first nonzero coordinate.

use std::fmt;

use arrayvec::ArrayVec;

use crate::error::{Error, Result};
use crate::gf::{self, Elem, FieldTables};

pub const MAX_DIM: usize = 12;

/// A vector of GF(q)^n, packed four bits per coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    packed: u64,
    dim: u8,
}

impl Vector {
    pub fn from_coords(coords: &[Elem]) -> Self {
        assert!(coords.len() <= MAX_DIM);
        let packed = coords
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << (4 * i)));
        Vector { packed, dim: coords.len() as u8 }
    }

    pub fn from_packed(packed: u64, dim: usize) -> Self {
        Vector { packed, dim: dim as u8 }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        Vector { packed: 1 << (4 * i), dim: dim as u8 }
    }

    pub fn zero(dim: usize) -> Self {
        Vector { packed: 0, dim: dim as u8 }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn packed(&self) -> u64 {
        self.packed
    }

    pub fn coord(&self, i: usize) -> Elem {
        gf::coord(self.packed, i)
    }

    pub fn coords(&self) -> Vec<Elem> {
        (0..self.dim()).map(|i| self.coord(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.packed == 0
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.coord(i))?;
        }
        write!(f, ")")
    }
}

/// A subspace in canonical reduced row echelon form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: u8,
    rows: ArrayVec<u64, MAX_DIM>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient: ambient as u8, rows: ArrayVec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient as usize
    }

    /// Basis rows, packed, in increasing pivot order.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.rows.iter().map(|&r| Vector::from_packed(r, self.ambient_dim())).collect()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|&r| gf::leading(r))
    }

    /// Stable textual key: rows as hex, row-major.
    pub fn key(&self) -> String {
        let rows: Vec<String> = self.rows.iter().map(|r| format!("{r:x}")).collect();
        format!("{}:{}", self.ambient, rows.join("."))
    }

    pub(crate) fn from_rref_rows(ambient: usize, rows: &[u64]) -> Self {
        Subspace { ambient: ambient as u8, rows: rows.iter().copied().collect() }
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.ambient_dim();
        f.debug_list()
            .entries(self.rows.iter().map(|&r| Vector::from_packed(r, n)))
            .finish()
    }
}

/// Incremental row echelon basis indexed by pivot column.
pub(crate) struct Echelon<'a> {
    field: &'a FieldTables,
    n: usize,
    by_pivot: [u64; MAX_DIM],
    rank: usize,
}

impl<'a> Echelon<'a> {
    pub(crate) fn new(field: &'a FieldTables, n: usize) -> Self {
        Echelon { field, n, by_pivot: [0; MAX_DIM], rank: 0 }
    }

    pub(crate) fn from_subspace(field: &'a FieldTables, s: &Subspace) -> Self {
        let mut e = Self::new(field, s.ambient_dim());
        for &r in s.rows() {
            e.by_pivot[gf::leading(r)] = r;
        }
        e.rank = s.dim();
        e
    }

    /// Eliminates leading coordinates; zero iff `v` is in the span.
    #[inline]
    pub(crate) fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let p = gf::leading(v);
            let row = self.by_pivot[p];
            if row == 0 {
                return v;
            }
            v = self.field.vsub_scaled(v, gf::coord(v, p), row, self.n);
        }
        0
    }

    #[inline]
    pub(crate) fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let p = gf::leading(r);
        self.by_pivot[p] = self.field.vscale(self.field.inv(gf::coord(r, p)), r, self.n);
        self.rank += 1;
        true
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    pub(crate) fn into_subspace(self) -> Subspace {
        let mut rows: ArrayVec<u64, MAX_DIM> =
            self.by_pivot[..self.n].iter().copied().filter(|&r| r != 0).collect();
        for i in (0..rows.len()).rev() {
            let p = gf::leading(rows[i]);
            for j in 0..i {
                let c = gf::coord(rows[j], p);
                if c != 0 {
                    rows[j] = self.field.vsub_scaled(rows[j], c, rows[i], self.n);
                }
            }
        }
        Subspace { ambient: self.n as u8, rows }
    }
}

/// GF(q)^n together with its field tables.
#[derive(Clone, Debug)]
pub struct VectorSpace {
    field: FieldTables,
    n: usize,
}

impl VectorSpace {
    pub fn new(field: FieldTables, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimensionMismatch { expected: MAX_DIM, found: n });
        }
        Ok(VectorSpace { field, n })
    }

    pub fn field(&self) -> &FieldTables {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    fn check_vec(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: v.dim() });
        }
        Ok(())
    }

    fn check_sub(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: s.ambient_dim() });
        }
        Ok(())
    }

    pub(crate) fn echelon(&self) -> Echelon<'_> {
        Echelon::new(&self.field, self.n)
    }

    pub fn whole(&self) -> Subspace {
        let rows: Vec<u64> = (0..self.n).map(|i| 1u64 << (4 * i)).collect();
        Subspace::from_rref_rows(self.n, &rows)
    }

    pub fn span(&self, vectors: &[Vector]) -> Result<Subspace> {
        for v in vectors {
            self.check_vec(v)?;
        }
        Ok(self.span_packed(vectors.iter().map(|v| v.packed)))
    }

    pub fn span_packed(&self, vectors: impl IntoIterator<Item = u64>) -> Subspace {
        let mut e = self.echelon();
        for v in vectors {
            e.insert(v);
        }
        e.into_subspace()
    }

    /// Dimension of the span of packed vectors.
    pub fn rank_packed(&self, vectors: impl IntoIterator<Item = u64>) -> usize {
        let mut e = self.echelon();
        for v in vectors {
            e.insert(v);
        }
        e.rank()
    }

    pub fn sum_space(&self, u: &Subspace, w: &Subspace) -> Result<Subspace> {
        self.check_sub(u)?;
        self.check_sub(w)?;
        Ok(self.sum_unchecked(u, w))
    }

    pub(crate) fn sum_unchecked(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let mut e = Echelon::from_subspace(&self.field, u);
        for &r in w.rows() {
            e.insert(r);
        }
        e.into_subspace()
    }

    /// Dimension of `u + w`.
    #[inline]
    pub fn join_dim(&self, u: &Subspace, w: &Subspace) -> usize {
        let mut e = Echelon::from_subspace(&self.field, u);
        for &r in w.rows() {
            e.insert(r);
        }
        e.rank()
    }

    /// Dimension of `u ∩ w`, by the modular law.
    #[inline]
    pub fn meet_dim(&self, u: &Subspace, w: &Subspace) -> usize {
        u.dim() + w.dim() - self.join_dim(u, w)
    }

    pub fn contains(&self, u: &Subspace, v: &Vector) -> Result<bool> {
        self.check_sub(u)?;
        self.check_vec(v)?;
        Ok(self.contains_packed(u, v.packed))
    }

    #[inline]
    pub fn contains_packed(&self, u: &Subspace, v: u64) -> bool {
        Echelon::from_subspace(&self.field, u).reduce(v) == 0
    }

    /// Whether `inner ⊆ outer`.
    pub fn is_subspace_of(&self, inner: &Subspace, outer: &Subspace) -> bool {
        let e = Echelon::from_subspace(&self.field, outer);
        inner.rows().iter().all(|&r| e.reduce(r) == 0)
    }

    /// `{v : v·u = 0 for all u in U}` for the standard dot product.
    pub fn annihilator(&self, u: &Subspace) -> Subspace {
        let f = &self.field;
        let pivots: Vec<usize> = u.pivots().collect();
        let mut gens = Vec::with_capacity(self.n - u.dim());
        for col in 0..self.n {
            if pivots.contains(&col) {
                continue;
            }
            let mut v = 1u64 << (4 * col);
            for (&row, &p) in u.rows().iter().zip(&pivots) {
                let c = gf::coord(row, col);
                if c != 0 {
                    v = gf::with_coord(v, p, f.neg(c));
                }
            }
            gens.push(v);
        }
        self.span_packed(gens)
    }

    pub fn intersect(&self, u: &Subspace, w: &Subspace) -> Result<Subspace> {
        self.check_sub(u)?;
        self.check_sub(w)?;
        Ok(self.intersect_unchecked(u, w))
    }

    pub(crate) fn intersect_unchecked(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let joined = self.sum_unchecked(&self.annihilator(u), &self.annihilator(w));
        self.annihilator(&joined)
    }

    /// Coordinates of `v` (assumed in `u`) relative to the echelon basis of `u`.
    pub fn coords_in(&self, u: &Subspace, v: u64) -> Vec<Elem> {
        u.pivots().map(|p| gf::coord(v, p)).collect()
    }

    /// `sum_i coords[i] * basis_i(u)`.
    pub fn combine(&self, u: &Subspace, coords: &[Elem]) -> u64 {
        let f = &self.field;
        u.rows()
            .iter()
            .zip(coords)
            .fold(0, |acc, (&r, &c)| f.vadd(acc, f.vscale(c, r, self.n), self.n))
    }

    /// All `k`-subspaces of `w`, each once, in canonical form.
    pub fn enumerate_subspaces(&self, w: &Subspace, k: usize) -> SubspaceIter<'_> {
        SubspaceIter::new(self, w.clone(), k)
    }

    /// Normalized spanning vectors of the points (1-spaces) of `w`.
    pub fn points_of(&self, w: &Subspace) -> impl Iterator<Item = u64> + '_ {
        self.enumerate_subspaces(w, 1).map(|s| s.rows()[0])
    }
}

/// Streams the `k`-subspaces of a fixed subspace by running through all
/// `k x m` reduced echelon coefficient matrices.
pub struct SubspaceIter<'a> {
    space: &'a VectorSpace,
    base: Subspace,
    k: usize,
    pivots: Vec<usize>,
    // (row, column) of each free entry of the current pivot pattern
    free: Vec<(usize, usize)>,
    digits: Vec<Elem>,
    done: bool,
}

impl<'a> SubspaceIter<'a> {
    fn new(space: &'a VectorSpace, base: Subspace, k: usize) -> Self {
        let m = base.dim();
        let mut it = SubspaceIter {
            space,
            base,
            k,
            pivots: (0..k).collect(),
            free: Vec::new(),
            digits: Vec::new(),
            done: k > m,
        };
        if !it.done {
            it.reset_free();
        }
        it
    }

    fn reset_free(&mut self) {
        let m = self.base.dim();
        self.free.clear();
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..m {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let m = self.base.dim();
        let k = self.k;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < m - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn advance(&mut self) {
        let q = self.space.q() as Elem;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                return;
            }
            *d = 0;
        }
        if self.next_pivots() {
            self.reset_free();
        } else {
            self.done = true;
        }
    }
}

impl Iterator for SubspaceIter<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let f = self.space.field();
        let n = self.space.dim();
        let basis = self.base.rows();
        let mut rows: ArrayVec<u64, MAX_DIM> = self.pivots.iter().map(|&p| basis[p]).collect();
        for (&(r, c), &d) in self.free.iter().zip(&self.digits) {
            if d != 0 {
                rows[r] = f.vadd(rows[r], f.vscale(d, basis[c], n), n);
            }
        }
        let out = Subspace { ambient: n as u8, rows };
        if self.k == 0 {
            self.done = true;
        } else {
            self.advance();
        }
        Some(out)
    }
}

/// Gaussian binomial coefficient: the number of `k`-subspaces of GF(q)^n.
///
/// Panics if the value does not fit in a `u128`.
pub fn gaussian(n: u32, k: u32, q: u32) -> u128 {
    assert!(k <= n, "gaussian({n}, {k}, {q}) needs k <= n");
    let q = q as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = q.pow(n - i) - 1;
        let den = q.pow(i + 1) - 1;
        acc = acc.checked_mul(num).expect("gaussian binomial overflow") / den;
    }
    acc
}
