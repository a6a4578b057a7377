//! Common neighborhoods in `Γ'`, described geometrically case by case and
//! compared against the graph.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::D5Context;
use crate::error::{Error, Result};
use crate::graphcore::{common_neighbors, DenseGraph};
use crate::linalg::Subspace;

/// The six kinds of vertex pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PairCase {
    /// both in `D`, adjacent
    One = 1,
    /// line and Greek, adjacent
    Two = 2,
    /// both lines, adjacent
    Three = 3,
    /// both in `D`, nonadjacent
    Four = 4,
    /// line and Greek, nonadjacent
    Five = 5,
    /// both lines, nonadjacent
    Six = 6,
}

impl PairCase {
    pub const ALL: [PairCase; 6] = [PairCase::One, PairCase::Two, PairCase::Three, PairCase::Four, PairCase::Five, PairCase::Six];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn adjacent(self) -> bool {
        (self as u8) <= 3
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCase {
    pub label: &'static str,
    pub members: Vec<u32>,
    /// Size the counting argument predicts.
    pub claimed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactOneTally {
    pub case: PairCase,
    /// Finer split used by the counting argument, e.g. whether `P^⊥ ∩ x ∩ y`
    /// is a line or a plane.
    pub variant: &'static str,
    pub x: u32,
    pub y: u32,
    pub subcases: Vec<SubCase>,
    pub common: Vec<u32>,
    /// For nonadjacent Greeks meeting off `P^⊥`: whether the common
    /// neighborhood is the same as in `Γ`. `None` when not applicable.
    pub same_as_gamma: Option<bool>,
}

impl FactOneTally {
    pub fn claims_hold(&self) -> bool {
        self.subcases.iter().all(|s| s.members.len() as u64 == s.claimed) && self.same_as_gamma != Some(false)
    }
}

struct Formulas {
    q: u64,
}

impl Formulas {
    fn lambda(&self) -> u64 {
        let q = self.q;
        q - 1 + q * q * (q + 1) * (q * q + q + 1)
    }
    fn mu(&self) -> u64 {
        let q = self.q;
        (q * q + 1) * (q * q + q + 1)
    }
}

/// Which case `(x, y)` falls in, from the subspaces alone.
fn case_of(ctx: &D5Context, x: u32, y: u32) -> PairCase {
    let qs = ctx.space();
    let sp = qs.space();
    let (a, b) = (ctx.subspace(x), ctx.subspace(y));
    match (ctx.is_line(x), ctx.is_line(y)) {
        (false, false) if sp.meet_dim(a, b) == 3 => PairCase::One,
        (false, false) => PairCase::Four,
        (true, true) if qs.is_totally_singular(&sp.sum_space(a, b).unwrap()) => PairCase::Three,
        (true, true) => PairCase::Six,
        _ if sp.meet_dim(a, b) == 1 => PairCase::Two,
        _ => PairCase::Five,
    }
}

/// Splits `common_neighbors(gp, x, y)` into the sub-cases of the geometric
/// description and fails with [`Error::ClassificationMismatch`] unless the
/// sub-cases are disjoint and cover it exactly. `gamma`, when given, is used
/// for the comparison with `Γ` in case 4.
pub fn classify_common_neighborhood(ctx: &D5Context, gp: &DenseGraph, gamma: Option<&DenseGraph>, x: u32, y: u32) -> Result<FactOneTally> {
    if x == y {
        return Err(Error::InvalidConfig("pair must be distinct".into()));
    }
    let qs = ctx.space();
    let sp = qs.space();
    let f = Formulas { q: ctx.q() as u64 };
    let q = f.q;
    let res = ctx.residue();
    let nl = ctx.lines().len() as u32;
    let n = ctx.vertex_count() as u32;
    let case = case_of(ctx, x, y);
    // lines first for mixed pairs
    let (x, y) = if matches!(case, PairCase::Two | PairCase::Five) && !ctx.is_line(x) { (y, x) } else { (x, y) };
    let (sx, sy) = (ctx.subspace(x), ctx.subspace(y));

    let lines_where = |pred: &dyn Fn(&Subspace) -> bool| -> Vec<u32> {
        (0..nl).filter(|&z| z != x && z != y && pred(ctx.subspace(z))).collect()
    };
    let greeks_where = |pred: &dyn Fn(&Subspace) -> bool| -> Vec<u32> {
        (nl..n).filter(|&z| z != x && z != y && pred(ctx.subspace(z))).collect()
    };
    let residue_solid = |g: &Subspace| res.project(&ctx.perp_part(g));
    let in_residue = |line: &Subspace, r: &Subspace| res.space().space().is_subspace_of(&res.project(line), r);

    let mut same_as_gamma = None;
    let (variant, subcases): (&'static str, Vec<SubCase>) = match case {
        PairCase::One => {
            let pi = sp.intersect(sx, sy)?;
            let plane = sp.is_subspace_of(&pi, ctx.point_perp());
            let (rx, ry) = (residue_solid(sx), residue_solid(sy));
            let a = lines_where(&|z| in_residue(z, &rx) && in_residue(z, &ry));
            let b = greeks_where(&|z| sp.is_subspace_of(&pi, z));
            let c = greeks_where(&|z| sp.meet_dim(z, &pi) == 2);
            let claims = if plane {
                [q * q * q + q * q + q + 1, q - 2, (q * q + q + 1) * ((q * q + 1) * (q + 1) - 2 * q - 1)]
            } else {
                [q + 1, q - 1, (q * q + q) * q * q * (q + 1) + (q * q - 1) * (q + 1)]
            };
            (
                if plane { "P-perp meets x and y in a plane" } else { "P-perp meets x and y in a line" },
                vec![
                    SubCase { label: "1a", members: a, claimed: claims[0] },
                    SubCase { label: "1b", members: b, claimed: claims[1] },
                    SubCase { label: "1c", members: c, claimed: claims[2] },
                ],
            )
        }
        PairCase::Two => {
            let py = ctx.perp_part(sy);
            let ly = sp.sum_space(ctx.point(), &py)?;
            let meet = sp.intersect(sx, sy)?;
            let a = lines_where(&|z| sp.meet_dim(z, &py) >= 1);
            let b = greeks_where(&|z| sp.meet_dim(z, &ly) == 4);
            let c = greeks_where(&|z| sp.meet_dim(z, &ly) != 4 && sp.meet_dim(z, sy) == 3 && sp.is_subspace_of(&meet, z));
            (
                "",
                vec![
                    SubCase { label: "2a", members: a, claimed: q * q * q + q * q + q },
                    SubCase { label: "2b", members: b, claimed: q.pow(4) - 1 },
                    SubCase { label: "2c minus 2b", members: c, claimed: q * q * q * (q * q + q + 1) },
                ],
            )
        }
        PairCase::Three => {
            let xy = sp.sum_space(sx, sy)?;
            let a = lines_where(&|z| qs.is_totally_singular(&sp.sum_space(&xy, z).unwrap()));
            let b = greeks_where(&|z| sp.meet_dim(z, &xy) == 2);
            (
                "",
                vec![
                    SubCase { label: "3a", members: a, claimed: q - 1 + q * q * (q + 1) * (q + 1) },
                    SubCase { label: "3b", members: b, claimed: q.pow(4) * (q + 1) },
                ],
            )
        }
        PairCase::Four => {
            let meet = sp.intersect(sx, sy)?;
            let inside = sp.is_subspace_of(&meet, ctx.point_perp());
            let (rx, ry) = (residue_solid(sx), residue_solid(sy));
            let a = lines_where(&|z| in_residue(z, &rx) && in_residue(z, &ry));
            let b = greeks_where(&|z| sp.meet_dim(z, sx) == 3 && sp.meet_dim(z, sy) == 3);
            if !inside {
                if let Some(g) = gamma {
                    let (gx, gy) = (ctx.greek_of(x).unwrap(), ctx.greek_of(y).unwrap());
                    let want: Vec<u32> = common_neighbors(g, gx, gy).into_iter().map(|h| ctx.vertex_of_greek(h).unwrap_or(u32::MAX)).collect();
                    let mut want = want;
                    want.sort_unstable();
                    same_as_gamma = Some(want == common_neighbors(gp, x, y));
                }
            }
            let claims = if inside { [q + 1, (q * q + q + 1) * (q * q + 1) - (q + 1)] } else { [0, f.mu()] };
            (
                if inside { "x and y meet in a point of P-perp" } else { "x and y meet off P-perp" },
                vec![
                    SubCase { label: "4a", members: a, claimed: claims[0] },
                    SubCase { label: "4b", members: b, claimed: claims[1] },
                ],
            )
        }
        PairCase::Five => {
            let xp = sp.intersect(&qs.perp(sx), sy)?;
            let a = lines_where(&|z| sp.meet_dim(z, &xp) >= 1);
            let b = greeks_where(&|z| {
                sp.meet_dim(z, sx) == 1 && sp.meet_dim(z, sy) == 3 && sp.meet_dim(&sp.intersect(z, sy).unwrap(), &xp) == 2
            });
            (
                "",
                vec![
                    SubCase { label: "5a", members: a, claimed: q * q + q + 1 },
                    SubCase { label: "5b", members: b, claimed: q * (q * q * q + q * q + q) },
                ],
            )
        }
        PairCase::Six => {
            let a = lines_where(&|z| {
                qs.is_totally_singular(&sp.sum_space(sx, z).unwrap()) && qs.is_totally_singular(&sp.sum_space(sy, z).unwrap())
            });
            ("", vec![SubCase { label: "6", members: a, claimed: f.mu() }])
        }
    };

    let common = common_neighbors(gp, x, y);
    let mut union: Vec<u32> = subcases.iter().flat_map(|s| s.members.iter().copied()).collect();
    let listed = union.len();
    union.sort_unstable();
    union.dedup();
    let overlaps = listed - union.len();
    let missing = common.iter().filter(|v| union.binary_search(v).is_err()).count();
    let extra = union.iter().filter(|v| common.binary_search(v).is_err()).count();
    if missing + extra + overlaps > 0 {
        return Err(Error::ClassificationMismatch {
            case: format!("{} {variant} at ({x}, {y}), {overlaps} overlapping", case.number()),
            missing,
            extra,
        });
    }
    debug_assert_eq!(common.len() as u64, if case.adjacent() { f.lambda() } else { f.mu() });
    Ok(FactOneTally { case, variant, x, y, subcases, common, same_as_gamma })
}

/// Aggregate over sampled pairs of one case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactOneSummary {
    pub case: PairCase,
    pub pairs: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<String>,
    /// variant → number of pairs
    pub variants: BTreeMap<String, usize>,
    /// variant → sub-case label → (observed sizes, claimed size)
    pub sizes: BTreeMap<String, BTreeMap<String, (Vec<u64>, u64)>>,
    /// Pairs where some sub-case size differs from the counting argument.
    pub claim_failures: usize,
}

fn random_pair(ctx: &D5Context, gp: &DenseGraph, case: PairCase, rng: &mut ChaCha8Rng) -> Option<(u32, u32)> {
    let nl = ctx.lines().len() as u32;
    let n = ctx.vertex_count() as u32;
    let (xs, ys) = match case {
        PairCase::One | PairCase::Four => (nl..n, nl..n),
        PairCase::Two | PairCase::Five => (0..nl, nl..n),
        PairCase::Three | PairCase::Six => (0..nl, 0..nl),
    };
    for _ in 0..100 {
        let x = rng.gen_range(xs.clone());
        let cands: Vec<u32> = ys.clone().filter(|&y| y != x && gp.has_edge(x, y) == case.adjacent()).collect();
        if !cands.is_empty() {
            return Some((x, cands[rng.gen_range(0..cands.len())]));
        }
    }
    None
}

/// Classifies `count` seeded random pairs of the given case.
pub fn sample_fact_one(
    ctx: &D5Context,
    gp: &DenseGraph,
    gamma: Option<&DenseGraph>,
    case: PairCase,
    count: usize,
    seed: u64,
) -> Result<FactOneSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ case.number() as u64);
    let pairs: Vec<(u32, u32)> = (0..count)
        .map(|_| random_pair(ctx, gp, case, &mut rng).ok_or_else(|| Error::NotFound(format!("pair for case {}", case.number()))))
        .collect::<Result<_>>()?;
    let results: Vec<Result<FactOneTally>> = pairs.par_iter().map(|&(x, y)| classify_common_neighborhood(ctx, gp, gamma, x, y)).collect();

    let mut s = FactOneSummary {
        case,
        pairs: count,
        mismatches: 0,
        first_mismatch: None,
        variants: BTreeMap::new(),
        sizes: BTreeMap::new(),
        claim_failures: 0,
    };
    for r in results {
        match r {
            Ok(t) => {
                if t.case != case {
                    return Err(Error::InvalidConfig(format!("sampled pair landed in case {}", t.case.number())));
                }
                *s.variants.entry(t.variant.to_string()).or_insert(0) += 1;
                let per = s.sizes.entry(t.variant.to_string()).or_default();
                for sc in &t.subcases {
                    let e = per.entry(sc.label.to_string()).or_insert((Vec::new(), sc.claimed));
                    let k = sc.members.len() as u64;
                    if !e.0.contains(&k) {
                        e.0.push(k);
                        e.0.sort_unstable();
                    }
                }
                if !t.claims_hold() {
                    s.claim_failures += 1;
                }
            }
            Err(e @ Error::ClassificationMismatch { .. }) => {
                s.mismatches += 1;
                s.first_mismatch.get_or_insert_with(|| e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(s)
}
