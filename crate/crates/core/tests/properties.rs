use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polartwist::gf::FieldTables;
use polartwist::graphcore::{charpoly_fingerprint, default_primes, gm_switch, gm_validate, small};
use polartwist::linalg::{Vector, VectorSpace};
use polartwist::quadspace::{Polarity, PolarityKind, QuadraticSpace};

fn span(space: &VectorSpace, coords: &[Vec<u8>]) -> polartwist::linalg::Subspace {
    let vs: Vec<Vector> = coords.iter().map(|c| Vector::from_coords(c)).collect();
    space.span(&vs).unwrap()
}

fn vectors(q: u8, n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    proptest::collection::vec(proptest::collection::vec(0..q, n), 0..=count)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimension_formula(a in vectors(3, 5, 4), b in vectors(3, 5, 4)) {
        let space = VectorSpace::new(FieldTables::new(3).unwrap(), 5).unwrap();
        let (u, w) = (span(&space, &a), span(&space, &b));
        let meet = space.intersect(&u, &w).unwrap();
        prop_assert_eq!(u.dim() + w.dim(), meet.dim() + space.join_dim(&u, &w));
        prop_assert!(space.is_subspace_of(&meet, &u) && space.is_subspace_of(&meet, &w));
    }

    #[test]
    fn span_is_canonical(a in vectors(5, 4, 4), seed in any::<u64>()) {
        // the same space from a shuffled spanning set has the same key
        let space = VectorSpace::new(FieldTables::new(5).unwrap(), 4).unwrap();
        let mut b = a.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(&mut b[..], &mut rng);
        prop_assert_eq!(span(&space, &a), span(&space, &b));
    }

    #[test]
    fn polarity_reverses_inclusion(a in vectors(2, 6, 3), b in vectors(2, 6, 3), orthogonal in any::<bool>()) {
        let space = VectorSpace::new(FieldTables::new(2).unwrap(), 6).unwrap();
        let kind = if orthogonal { PolarityKind::Orthogonal } else { PolarityKind::Symplectic };
        let sigma = Polarity::new(kind, &space, &space.whole()).unwrap();
        let u = span(&space, &a);
        let w = space.sum_space(&u, &span(&space, &b)).unwrap();
        let (su, sw) = (sigma.apply(&u), sigma.apply(&w));
        prop_assert_eq!(su.dim() + u.dim(), 6);
        prop_assert!(space.is_subspace_of(&sw, &su));
        prop_assert_eq!(sigma.apply(&su), u);
    }

    #[test]
    fn planted_switching_is_valid_and_cospectral(seed in any::<u64>(), cells in 1usize..4, size in 1usize..7, d in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, part) = small::planted_switching(&mut rng, cells, size, d);
        prop_assert!(gm_validate(&g, &part).unwrap().passed());
        let h = gm_switch(&g, &part).unwrap();
        prop_assert_eq!(&gm_switch(&h, &part).unwrap(), &g);
        let primes = default_primes(2);
        prop_assert!(charpoly_fingerprint(&g, &primes).unwrap().matches(&charpoly_fingerprint(&h, &primes).unwrap()));
    }
}

#[test]
fn singular_points_match_the_count() {
    for (q, rank) in [(2, 3), (3, 3), (2, 4), (4, 2)] {
        let qs = QuadraticSpace::hyperbolic(q, rank).unwrap();
        assert_eq!(qs.enumerate_singular_points().len() as u128, qs.singular_point_count(), "q={q} rank={rank}");
    }
}
