use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf;
use crate::linalg::{Subspace, MAX_DIM};

use super::QuadraticSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Family {
    Greek,
    Latin,
}

impl Family {
    pub fn other(self) -> Family {
        match self {
            Family::Greek => Family::Latin,
            Family::Latin => Family::Greek,
        }
    }
}

/// Every maximal totally singular subspace of a hyperbolic quadric, split
/// into Greeks and Latins, plus the singular points.
///
/// Maximals carry global ids: Greeks are `0..g`, Latins `g..2g`, each list
/// sorted by canonical form. For every maximal `M` and every hyperplane `H`
/// of `M` there is exactly one other maximal through `H`, of the opposite
/// family; [`PolarIndex::flip`] stores it. Hyperplanes of `M` are numbered by
/// the normalized functionals of GF(q)^n in [`PolarIndex::functionals`] order,
/// applied to coordinates relative to the echelon basis of `M`.
pub struct PolarIndex {
    space: QuadraticSpace,
    points: Vec<Subspace>,
    maximals: Vec<Subspace>,
    greek_count: usize,
    lookup: HashMap<Subspace, u32>,
    functionals: Vec<u64>,
    flips: Vec<u32>,
}

impl PolarIndex {
    /// Closure search from the reference Greek: each maximal is expanded by
    /// flipping across all of its hyperplanes (the rank-one residue `H^⊥/H`
    /// holds exactly two maximals). The search alternates families, which
    /// fixes the Greek/Latin labels.
    pub fn build(space: QuadraticSpace) -> Result<Self> {
        let n = space.rank();
        let local = crate::linalg::VectorSpace::new(space.field().clone(), n)?;
        let functionals: Vec<u64> = local.points_of(&local.whole()).collect();
        let h = functionals.len();

        let mut found: Vec<Subspace> = vec![space.reference_greek()];
        let mut parity: Vec<u8> = vec![0];
        let mut lookup: HashMap<Subspace, u32> = HashMap::new();
        lookup.insert(found[0].clone(), 0);
        let mut raw_flips: Vec<u32> = Vec::new();

        let mut head = 0;
        while head < found.len() {
            let m = found[head].clone();
            let want = 1 - parity[head];
            for &f in &functionals {
                let other = flip_across(&space, &m, f);
                let id = match lookup.get(&other) {
                    Some(&id) => {
                        if parity[id as usize] != want {
                            return Err(Error::ValidationFailed(format!(
                                "family parity clash at {other:?}"
                            )));
                        }
                        id
                    }
                    None => {
                        let id = found.len() as u32;
                        lookup.insert(other.clone(), id);
                        found.push(other);
                        parity.push(want);
                        id
                    }
                };
                raw_flips.push(id);
            }
            head += 1;
        }

        // canonical order: Greeks sorted, then Latins sorted
        let mut order: Vec<u32> = (0..found.len() as u32).collect();
        order.sort_by(|&a, &b| {
            (parity[a as usize], &found[a as usize]).cmp(&(parity[b as usize], &found[b as usize]))
        });
        let greek_count = parity.iter().filter(|&&p| p == 0).count();
        let mut new_id = vec![0u32; found.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old as usize] = new as u32;
        }
        let mut flips = vec![0u32; raw_flips.len()];
        for old in 0..found.len() {
            let dst = new_id[old] as usize * h;
            for j in 0..h {
                flips[dst + j] = new_id[raw_flips[old * h + j] as usize];
            }
        }
        let maximals: Vec<Subspace> = order.iter().map(|&o| found[o as usize].clone()).collect();
        for (id, m) in maximals.iter().enumerate() {
            *lookup.get_mut(m).unwrap() = id as u32;
        }

        let points = space.enumerate_singular_points();
        let idx = PolarIndex { space, points, maximals, greek_count, lookup, functionals, flips };
        idx.check_counts()?;
        Ok(idx)
    }

    pub(crate) fn from_parts(
        space: QuadraticSpace,
        points: Vec<Subspace>,
        maximals: Vec<Subspace>,
        greek_count: usize,
        flips: Vec<u32>,
    ) -> Result<Self> {
        let n = space.rank();
        let local = crate::linalg::VectorSpace::new(space.field().clone(), n)?;
        let functionals: Vec<u64> = local.points_of(&local.whole()).collect();
        let lookup = maximals.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let idx = PolarIndex { space, points, maximals, greek_count, lookup, functionals, flips };
        if idx.flips.len() != idx.maximals.len() * idx.functionals.len() {
            return Err(Error::Cache("flip table has the wrong length".into()));
        }
        idx.check_counts()?;
        Ok(idx)
    }

    fn check_counts(&self) -> Result<()> {
        let per = self.space.maximals_per_family();
        if self.greek_count as u128 != per || self.latins().len() as u128 != per {
            return Err(Error::ValidationFailed(format!(
                "found {} greeks and {} latins, expected {per} each",
                self.greek_count,
                self.latins().len()
            )));
        }
        if self.points.len() as u128 != self.space.singular_point_count() {
            return Err(Error::ValidationFailed("singular point count".into()));
        }
        Ok(())
    }

    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    pub fn points(&self) -> &[Subspace] {
        &self.points
    }

    pub fn greeks(&self) -> &[Subspace] {
        &self.maximals[..self.greek_count]
    }

    pub fn latins(&self) -> &[Subspace] {
        &self.maximals[self.greek_count..]
    }

    /// All maximals by global id.
    pub fn maximals(&self) -> &[Subspace] {
        &self.maximals
    }

    pub fn greek_count(&self) -> usize {
        self.greek_count
    }

    pub fn maximal(&self, id: u32) -> &Subspace {
        &self.maximals[id as usize]
    }

    pub fn family(&self, id: u32) -> Family {
        if (id as usize) < self.greek_count {
            Family::Greek
        } else {
            Family::Latin
        }
    }

    /// Global id of a maximal, if `s` is one.
    pub fn id_of(&self, s: &Subspace) -> Option<u32> {
        self.lookup.get(s).copied()
    }

    pub fn functionals(&self) -> &[u64] {
        &self.functionals
    }

    pub fn hyperplanes_per_maximal(&self) -> usize {
        self.functionals.len()
    }

    pub(crate) fn flip_table(&self) -> &[u32] {
        &self.flips
    }

    /// Ids of the maximals meeting `id` in a hyperplane, in functional order.
    pub fn flips_of(&self, id: u32) -> &[u32] {
        let h = self.functionals.len();
        &self.flips[id as usize * h..(id as usize + 1) * h]
    }

    /// The `j`-th hyperplane of a maximal.
    pub fn hyperplane(&self, id: u32, j: usize) -> Subspace {
        hyperplane_of(&self.space, self.maximal(id), self.functionals[j])
    }

    /// Maximals of the same family meeting `id` in an `(n-2)`-space, sorted.
    /// Each is two flips away.
    pub fn same_family_neighbors(&self, id: u32, out: &mut Vec<u32>) {
        out.clear();
        for &mid in self.flips_of(id) {
            out.extend(self.flips_of(mid).iter().copied().filter(|&g| g != id));
        }
        out.sort_unstable();
        out.dedup();
    }

    /// Totally singular lines through the singular point `p`.
    pub fn lines_through(&self, p: &Subspace) -> Result<Vec<Subspace>> {
        self.space.ts_lines_through(p)
    }

    /// Ids of the Greeks containing `s`.
    pub fn greeks_containing(&self, s: &Subspace) -> Vec<u32> {
        let sp = self.space.space();
        (0..self.greek_count as u32)
            .filter(|&g| sp.is_subspace_of(s, self.maximal(g)))
            .collect()
    }
}

fn hyperplane_of(space: &QuadraticSpace, m: &Subspace, functional: u64) -> Subspace {
    let f = space.field();
    let dim = space.dim();
    let rows = m.rows();
    let i0 = gf::leading(functional);
    let gens = (0..rows.len())
        .filter(|&i| i != i0)
        .map(|i| f.vsub_scaled(rows[i], gf::coord(functional, i), rows[i0], dim));
    space.space().span_packed(gens)
}

/// The other maximal through the hyperplane `ker(functional)` of `m`.
///
/// With `m` in echelon form with pivots `p_j`, the vectors `e_{p_j ^ 1}`
/// form a dual basis under `B`, so `w = sum_j f_j e_{p_j ^ 1}` satisfies
/// `B(b_i, w) = f_i`. Then `H^⊥ = m + ⟨w⟩`, and the second singular point
/// of `H^⊥/H` is spanned by `w - Q(w) b_{i0}`.
pub(crate) fn flip_across(space: &QuadraticSpace, m: &Subspace, functional: u64) -> Subspace {
    let f = space.field();
    let dim = space.dim();
    let rows = m.rows();
    let i0 = gf::leading(functional);
    let mut w = 0u64;
    for (j, p) in m.pivots().enumerate() {
        w = gf::with_coord(w, p ^ 1, gf::coord(functional, j));
    }
    let v = f.vsub_scaled(w, space.q_packed(w), rows[i0], dim);
    let mut gens: arrayvec::ArrayVec<u64, MAX_DIM> = arrayvec::ArrayVec::new();
    for i in 0..rows.len() {
        if i != i0 {
            gens.push(f.vsub_scaled(rows[i], gf::coord(functional, i), rows[i0], dim));
        }
    }
    gens.push(v);
    space.space().span_packed(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_quadric_families() {
        // O+(4,2): the two rulings of the 3x3 grid
        let qs = QuadraticSpace::hyperbolic(2, 2).unwrap();
        let idx = PolarIndex::build(qs.clone()).unwrap();
        assert_eq!(idx.greeks().len(), 3);
        assert_eq!(idx.latins().len(), 3);
        // exhaustive: every totally singular 2-space appears exactly once
        let sp = qs.space();
        let ts: HashSet<Subspace> = sp
            .enumerate_subspaces(&sp.whole(), 2)
            .filter(|s| qs.is_totally_singular(s))
            .collect();
        let listed: HashSet<Subspace> = idx.maximals().iter().cloned().collect();
        assert_eq!(ts, listed);
        for g in idx.greeks() {
            for l in idx.latins() {
                assert_eq!(sp.meet_dim(g, l), 1);
            }
        }
    }

    #[test]
    fn counts_for_rank_3_and_4() {
        for (q, n) in [(2, 3), (3, 3), (2, 4), (3, 4), (4, 3), (5, 3)] {
            let qs = QuadraticSpace::hyperbolic(q, n).unwrap();
            let idx = PolarIndex::build(qs.clone()).unwrap();
            assert_eq!(idx.greeks().len() as u128, qs.maximals_per_family());
            for m in idx.maximals() {
                assert_eq!(m.dim(), n);
                assert!(qs.is_totally_singular(m));
            }
        }
    }

    #[test]
    fn parity_rule_in_rank_4() {
        let qs = QuadraticSpace::hyperbolic(2, 4).unwrap();
        let idx = PolarIndex::build(qs.clone()).unwrap();
        let sp = qs.space();
        let ms = idx.maximals();
        for a in 0..ms.len() {
            for b in a..ms.len() {
                let d = sp.meet_dim(&ms[a], &ms[b]);
                let same = idx.family(a as u32) == idx.family(b as u32);
                assert_eq!(same, (4 - d) % 2 == 0, "{a} {b} d={d}");
            }
        }
    }

    #[test]
    fn flips_are_consistent() {
        let qs = QuadraticSpace::hyperbolic(3, 3).unwrap();
        let idx = PolarIndex::build(qs.clone()).unwrap();
        let sp = qs.space();
        for id in 0..idx.maximals().len() as u32 {
            for (j, &o) in idx.flips_of(id).iter().enumerate() {
                assert_ne!(idx.family(id), idx.family(o));
                let h = idx.hyperplane(id, j);
                assert_eq!(h.dim(), 2);
                assert!(sp.is_subspace_of(&h, idx.maximal(o)));
                // flipping back across the same hyperplane returns id
                assert!(idx.flips_of(o).contains(&id));
            }
        }
    }

    #[test]
    fn hyperplane_meets_in_one_greek_and_one_latin() {
        let qs = QuadraticSpace::hyperbolic(2, 4).unwrap();
        let idx = PolarIndex::build(qs.clone()).unwrap();
        let sp = qs.space();
        let g = idx.maximal(0).clone();
        for h in sp.enumerate_subspaces(&g, 3) {
            let through: Vec<u32> = (0..idx.maximals().len() as u32)
                .filter(|&m| sp.is_subspace_of(&h, idx.maximal(m)))
                .collect();
            assert_eq!(through.len(), 2);
            assert_ne!(idx.family(through[0]), idx.family(through[1]));
        }
    }

    #[test]
    fn two_step_neighbors_meet_in_codim_two() {
        let qs = QuadraticSpace::hyperbolic(2, 4).unwrap();
        let idx = PolarIndex::build(qs.clone()).unwrap();
        let sp = qs.space();
        let mut nb = Vec::new();
        for g in 0..idx.greek_count() as u32 {
            idx.same_family_neighbors(g, &mut nb);
            let brute: Vec<u32> = (0..idx.greek_count() as u32)
                .filter(|&h| h != g && sp.meet_dim(idx.maximal(g), idx.maximal(h)) == 2)
                .collect();
            assert_eq!(nb, brute);
        }
    }
}
