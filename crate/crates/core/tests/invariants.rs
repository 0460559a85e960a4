use proptest::prelude::*;

use susylat::groundstates::exact_ground_states;
use susylat::hilbert::{enumerate_sectors, witten_by_enumeration};
use susylat::lattice::{build_square_torus, LatticeGraph, TorusSpec, Vec2};
use susylat::rank::choose_primes;
use susylat::specfile::{parse_shorthand, LatticeSpec};
use susylat::theorems::jonsson_index;
use susylat::tilings::enumerate_tilings;
use susylat::transfer::witten_transfer_torus;

fn graph() -> impl Strategy<Value = LatticeGraph> {
    (1usize..=12).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..2 * n)
            .prop_map(move |e| LatticeGraph::from_edges(n, &e).unwrap())
    })
}

fn torus() -> impl Strategy<Value = TorusSpec> {
    (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4)
        .prop_filter_map("degenerate", |(a, b, c, d)| {
            let s = TorusSpec::new(Vec2::new(a, b), Vec2::new(c, d)).ok()?;
            (s.n_sites() <= 20).then_some(s)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ground_states_reproduce_the_index(g in graph(), seed in any::<u64>()) {
        let space = enumerate_sectors(&g).unwrap();
        let r = exact_ground_states(&g, &space, choose_primes(seed)).unwrap();
        prop_assert_eq!(r.witten, witten_by_enumeration(&space));
        prop_assert_eq!(r.euler_characteristic(), r.witten);
    }

    #[test]
    fn three_index_routes_agree(spec in torus()) {
        let g = build_square_torus(spec);
        let w = witten_by_enumeration(&enumerate_sectors(&g).unwrap());
        prop_assert_eq!(witten_transfer_torus(&spec), w);
        let tilings = enumerate_tilings(spec).unwrap();
        prop_assert_eq!(jonsson_index(&spec, &tilings), w);
    }

    #[test]
    fn shorthand_round_trips(spec in torus()) {
        let s = LatticeSpec::SquareTorus { torus: spec };
        prop_assert_eq!(parse_shorthand(&s.to_string()).unwrap(), s);
    }
}
