//! Dense graphs and the verifiers that run on them.
//!
//! Every verifier that scans pairs or base vertices comes in two modes:
//! [`Mode::Full`] visits everything, [`Mode::Sampled`] draws a fixed number
//! of base vertices from a ChaCha8 stream seeded by the caller. Work is split
//! across the rayon pool per base vertex and merged in base order, so the
//! outcome never depends on the worker count.

mod charpoly;
mod cliques;
mod dense;
mod drg;
mod export;
mod fourvc;
pub mod report;
pub mod small;
mod srg;
mod switching;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use charpoly::{charpoly_fingerprint, default_primes, is_prime, CharPolyFingerprint};
pub use cliques::{clique_census, is_maximal_clique, maximal_cliques, maximal_cliques_through_edge};
pub use dense::{common_neighbors, DenseGraph};
pub(crate) use dense::{and_count, count, get_bit, ones, set_bit};
pub use drg::{check_drg, distance2_degree, IntersectionArray};
pub use export::{from_graph6, to_edgelist, to_graph6, GRAPH6_HEADER};
pub use fourvc::{four_vertex_condition, four_vertex_counts, FourVertex};
pub use srg::{check_srg, SrgParams};
pub use switching::{gm_switch, gm_switch_in_place, gm_validate, SwitchingPartition, ValidationReport, Violation};

/// How much of a graph a verifier looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Full,
    Sampled { seed: u64, count: usize },
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Sampled { .. } => "sampled",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            Mode::Sampled { seed, .. } => Some(seed),
            Mode::Full => None,
        }
    }

    pub fn samples(&self) -> Option<usize> {
        match *self {
            Mode::Sampled { count, .. } => Some(count),
            Mode::Full => None,
        }
    }

    /// Base vertices: all of them, or a sorted seeded sample without repeats.
    pub fn bases(&self, n: usize) -> Vec<u32> {
        match *self {
            Mode::Full => (0..n as u32).collect(),
            Mode::Sampled { seed, count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut v: Vec<u32> = rand::seq::index::sample(&mut rng, n, count.min(n))
                    .into_iter()
                    .map(|i| i as u32)
                    .collect();
                v.sort_unstable();
                v
            }
        }
    }
}

/// A pair (or tuple) of vertices witnessing that a property fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub vertices: Vec<u32>,
    pub what: String,
    pub found: u64,
    pub expected: u64,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at {:?}: found {}, expected {}", self.what, self.vertices, self.found, self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    Holds(T),
    Fails(Counterexample),
}

impl<T> Verdict<T> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Verdict::Holds(t) => Some(t),
            Verdict::Fails(_) => None,
        }
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Fails(c) => Some(c),
            Verdict::Holds(_) => None,
        }
    }
}

/// First failure in base order.
pub(crate) fn first_failure(results: Vec<Option<Counterexample>>) -> Option<Counterexample> {
    results.into_iter().flatten().next()
}
