use crate::error::{Error, Result};
use crate::linalg::Subspace;

use super::QuadraticSpace;

/// The quotient `P^⊥/P` of a singular point, realized on a hyperbolic
/// complement `W` of `P` inside `P^⊥` so that the induced form is again the
/// standard one.
#[derive(Clone, Debug)]
pub struct Residue {
    parent: QuadraticSpace,
    quotient: QuadraticSpace,
    point: Subspace,
    // a1, b1, a2, b2, ... in the parent space
    basis: Vec<u64>,
}

impl Residue {
    pub(crate) fn new(parent: &QuadraticSpace, p: &Subspace) -> Result<Self> {
        if p.dim() != 1 || p.ambient_dim() != parent.dim() {
            return Err(Error::DimensionMismatch { expected: 1, found: p.dim() });
        }
        let pv = p.rows()[0];
        if parent.q_packed(pv) != 0 {
            return Err(Error::NotSingular);
        }
        if parent.rank() < 2 {
            return Err(Error::DimensionMismatch { expected: 4, found: parent.dim() });
        }
        let f = parent.field();
        let n = parent.dim();
        // hyperbolic partner u of p: B(p, u) = 1, Q(u) = 0
        let u0 = (0..n)
            .map(|i| 1u64 << (4 * i))
            .find(|&e| parent.b_packed(pv, e) != 0)
            .expect("form is nondegenerate");
        let u1 = f.vscale(f.inv(parent.b_packed(pv, u0)), u0, n);
        let u = f.vsub_scaled(u1, parent.q_packed(u1), pv, n);
        let plane = parent.space().span_packed([pv, u]);
        let w = parent.perp(&plane);
        let basis = parent.hyperbolic_basis(&w);
        let quotient = QuadraticSpace::new(f.clone(), parent.rank() - 1)?;
        Ok(Residue { parent: parent.clone(), quotient, point: p.clone(), basis })
    }

    /// The residue as a quadratic space of dimension `2n - 2`.
    pub fn space(&self) -> &QuadraticSpace {
        &self.quotient
    }

    pub fn point(&self) -> &Subspace {
        &self.point
    }

    /// Image of a vector of `P^⊥` in the residue.
    pub fn project_vec(&self, v: u64) -> u64 {
        let mut out = 0u64;
        for (i, pair) in self.basis.chunks_exact(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            out |= (self.parent.b_packed(v, b) as u64) << (8 * i);
            out |= (self.parent.b_packed(v, a) as u64) << (8 * i + 4);
        }
        out
    }

    /// A preimage in `W` of a residue vector.
    pub fn lift_vec(&self, r: u64) -> u64 {
        let f = self.parent.field();
        let n = self.parent.dim();
        self.basis.iter().enumerate().fold(0, |acc, (i, &b)| {
            f.vadd(acc, f.vscale(crate::gf::coord(r, i), b, n), n)
        })
    }

    /// Image `⟨P, S⟩/P` of a subspace `S ⊆ P^⊥`.
    pub fn project(&self, s: &Subspace) -> Subspace {
        self.quotient
            .space()
            .span_packed(s.rows().iter().map(|&r| self.project_vec(r)))
    }

    /// Preimage `⟨P, lift(T)⟩` of a residue subspace.
    pub fn lift(&self, t: &Subspace) -> Subspace {
        let pv = self.point.rows()[0];
        self.parent
            .space()
            .span_packed(std::iter::once(pv).chain(t.rows().iter().map(|&r| self.lift_vec(r))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vector;
    use crate::quadspace::PolarIndex;

    #[test]
    fn residue_of_rank5() {
        let qs = QuadraticSpace::hyperbolic(2, 5).unwrap();
        let p = qs.space().span(&[Vector::unit(10, 0)]).unwrap();
        let res = qs.residue(&p).unwrap();
        assert_eq!(res.space().dim(), 8);
        assert_eq!(res.space().enumerate_singular_points().len(), 135);
        let idx = PolarIndex::build(res.space().clone()).unwrap();
        assert_eq!(idx.greeks().len(), 3 * 5 * 9);
        assert_eq!(idx.latins().len(), 3 * 5 * 9);
    }

    #[test]
    fn projection_preserves_form_and_incidence() {
        for q in [2, 3] {
            let qs = QuadraticSpace::hyperbolic(q, 4).unwrap();
            let sp = qs.space();
            let p = sp
                .span(&[Vector::from_coords(&[1, 1, 1, q as u8 - 1, 0, 1, 0, 0])])
                .unwrap();
            let res = qs.residue(&p).unwrap();
            let pp = qs.perp(&p);
            for v in sp.points_of(&pp) {
                let r = res.project_vec(v);
                assert_eq!(res.space().q_packed(r), qs.q_packed(v));
                // lift then project is the identity on residue vectors
                assert_eq!(res.project_vec(res.lift_vec(r)), r);
            }
            // images of greeks through p are residue maximals
            let idx = PolarIndex::build(qs.clone()).unwrap();
            for g in idx.greeks().iter().filter(|g| sp.is_subspace_of(&p, g)) {
                let img = res.project(g);
                assert_eq!(img.dim(), 3);
                assert!(res.space().is_totally_singular(&img));
                assert_eq!(&res.lift(&img), g);
            }
        }
    }

    #[test]
    fn rejects_nonsingular_points() {
        let qs = QuadraticSpace::hyperbolic(3, 3).unwrap();
        let p = qs.space().span(&[Vector::from_coords(&[1, 1, 0, 0, 0, 0])]).unwrap();
        assert!(matches!(qs.residue(&p), Err(Error::NotSingular)));
    }
}
