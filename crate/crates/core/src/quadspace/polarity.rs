use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Subspace, VectorSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PolarityKind {
    /// `f(a, b) = sum_i a_{2i} b_{2i+1} - a_{2i+1} b_{2i}`; needs even dimension.
    Symplectic,
    /// `f(a, b) = sum_i a_i b_i`.
    Orthogonal,
}

/// The polarity `S -> S^⊥f` of a subspace `L` induced by a nondegenerate
/// form `f` on coordinates relative to the echelon basis of `L`.
#[derive(Clone, Debug)]
pub struct Polarity {
    kind: PolarityKind,
    ambient: VectorSpace,
    local: VectorSpace,
    base: Subspace,
}

impl Polarity {
    pub fn new(kind: PolarityKind, ambient: &VectorSpace, base: &Subspace) -> Result<Self> {
        if base.dim() == 0 || (kind == PolarityKind::Symplectic && base.dim() % 2 != 0) {
            return Err(Error::DimensionMismatch { expected: base.dim() + 1, found: base.dim() });
        }
        Ok(Polarity {
            kind,
            ambient: ambient.clone(),
            local: VectorSpace::new(ambient.field().clone(), base.dim())?,
            base: base.clone(),
        })
    }

    pub fn symplectic(ambient: &VectorSpace, base: &Subspace) -> Result<Self> {
        Self::new(PolarityKind::Symplectic, ambient, base)
    }

    pub fn orthogonal(ambient: &VectorSpace, base: &Subspace) -> Result<Self> {
        Self::new(PolarityKind::Orthogonal, ambient, base)
    }

    pub fn kind(&self) -> PolarityKind {
        self.kind
    }

    pub fn base(&self) -> &Subspace {
        &self.base
    }

    fn to_local(&self, v: u64) -> u64 {
        self.ambient
            .coords_in(&self.base, v)
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &c)| acc | ((c as u64) << (4 * i)))
    }

    /// `σ(S)` for `S ⊆ L`.
    pub fn apply(&self, s: &Subspace) -> Subspace {
        let f = self.local.field();
        let m = self.base.dim();
        // f(v, s) = v · J s, J = I for the orthogonal form
        let js = s.rows().iter().map(|&r| {
            let c = self.to_local(r);
            match self.kind {
                PolarityKind::Orthogonal => c,
                PolarityKind::Symplectic => (0..m / 2).fold(0u64, |acc, i| {
                    let a = crate::gf::coord(c, 2 * i);
                    let b = crate::gf::coord(c, 2 * i + 1);
                    acc | ((b as u64) << (8 * i)) | ((f.neg(a) as u64) << (8 * i + 4))
                }),
            }
        });
        let js = self.local.span_packed(js);
        let ann = self.local.annihilator(&js);
        self.ambient.span_packed(ann.rows().iter().map(|&r| {
            let coords: Vec<u8> = (0..m).map(|i| crate::gf::coord(r, i)).collect();
            self.ambient.combine(&self.base, &coords)
        }))
    }
}
