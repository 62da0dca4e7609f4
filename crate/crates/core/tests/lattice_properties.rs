//! Property tests over random negative-definite trees. A tree whose vertex
//! weights satisfy `-E_i^2 > deg(E_i)` is diagonally dominant, hence
//! negative definite.

use pgideal::hilbert::NumericalIdealDatum;
use pgideal::lattice::{self, Cycle, DualGraph, Edge, Vertex};
use proptest::prelude::*;

fn tree(parents: Vec<usize>, slack: Vec<i64>, genera: Vec<u32>) -> DualGraph {
    let n = slack.len();
    let mut degree = vec![0i64; n];
    let mut edges = Vec::new();
    for (child, &p) in parents.iter().enumerate() {
        let (a, b) = (p % (child + 1), child + 1);
        degree[a] += 1;
        degree[b] += 1;
        edges.push(Edge {
            a: format!("v{a}"),
            b: format!("v{b}"),
            multiplicity: 1,
        });
    }
    let vertices = (0..n)
        .map(|i| Vertex {
            id: format!("v{i}"),
            self_intersection: -(degree[i] + slack[i]),
            genus: genera[i],
        })
        .collect();
    let g = DualGraph::new(vertices, edges).expect("well-formed tree");
    g.validate().expect("diagonally dominant tree");
    g
}

fn graph_and_cycle() -> impl Strategy<Value = (DualGraph, Cycle)> {
    (1usize..=6).prop_flat_map(|n| {
        (
            proptest::collection::vec(0usize..6, n - 1),
            proptest::collection::vec(1i64..=3, n),
            proptest::collection::vec(0u32..=2, n),
            proptest::collection::vec(0i64..=4, n),
        )
            .prop_filter("nonzero cycle", |(_, _, _, c)| c.iter().any(|&x| x > 0))
            .prop_map(|(p, s, gen, c)| (tree(p, s, gen), Cycle::new(c)))
    })
}

proptest! {
    #[test]
    fn closure_is_the_least_anti_nef_cycle_above((g, z) in graph_and_cycle()) {
        let closed = lattice::anti_nef_closure(&g, &z).unwrap();
        prop_assert!(closed.dominates(&z));
        prop_assert!(lattice::is_anti_nef(&g, &closed).unwrap());
        prop_assert_eq!(lattice::anti_nef_closure(&g, &closed).unwrap(), closed.clone());
        let zf = lattice::fundamental_cycle(&g).unwrap();
        prop_assert!(closed.dominates(&zf));
    }

    #[test]
    fn anti_nef_cycles_have_negative_square((g, z) in graph_and_cycle()) {
        let closed = lattice::anti_nef_closure(&g, &z).unwrap();
        prop_assert!(lattice::pairing(&g, &closed, &closed).unwrap() < 0);
    }

    #[test]
    fn canonical_pairing_matches_canonical_cycle((g, z) in graph_and_cycle()) {
        let zk = lattice::canonical_cycle(&g).unwrap();
        let direct = lattice::canonical_pairing(&g, &z).unwrap();
        let via_cycle = lattice::pairing_rational(&g, &z.to_rational(), &zk).unwrap();
        prop_assert_eq!(num_rational::BigRational::from_integer((-direct).into()), via_cycle);
    }

    #[test]
    fn adjunction_parity((g, z) in graph_and_cycle()) {
        let zz = lattice::pairing(&g, &z, &z).unwrap();
        let zk = lattice::canonical_pairing(&g, &z).unwrap();
        prop_assert_eq!((zz + zk).rem_euclid(2), 0);
    }

    #[test]
    fn genus_zero_trees_with_reduced_fundamental_cycle_are_rational((g, _z) in graph_and_cycle()) {
        let zf = lattice::fundamental_cycle(&g).unwrap();
        let all_genus_zero = g.vertices().iter().all(|v| v.genus == 0);
        if all_genus_zero && zf == g.reduced_cycle() {
            // p_a of a reduced tree of rational curves is 0
            prop_assert!(lattice::artin_rational_test(&g).unwrap());
        }
        if !all_genus_zero {
            prop_assert!(!lattice::artin_rational_test(&g).unwrap());
        }
    }

    #[test]
    fn rational_data_from_cycles_are_pg_ideals((g, z) in graph_and_cycle()) {
        if lattice::artin_rational_test(&g).unwrap() {
            let closed = lattice::anti_nef_closure(&g, &z).unwrap();
            let d = NumericalIdealDatum::from_cycle(&g, &closed, 0, vec![0]).unwrap();
            prop_assert!(d.pg_ideal_test().unwrap().verdict());
            prop_assert_eq!(d.coefficients().unwrap().e2bar, 0);
        }
    }
}
