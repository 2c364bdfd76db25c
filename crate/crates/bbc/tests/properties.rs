//! Property-based invariants: format round-trips, the circular
//! relaxation of valid colourings, and the common-neighbour
//! characterisation of 4-cycle freeness.

use bbc::algorithms::double_spaced_colouring;
use bbc::colouring::verify_circular_colouring;
use bbc::generators::gen_random_chordal;
use bbc::graph::Graph;
use bbc::io::{parse_instance, write_instance};
use bbc::BackboneInstance;
use proptest::prelude::*;

fn arb_instance(max_n: usize) -> impl Strategy<Value = BackboneInstance> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .collect();
            let m = pairs.len();
            (
                Just(n),
                Just(pairs),
                proptest::collection::vec(0u8..=2, m),
                1u32..=3,
            )
        })
        .prop_map(|(n, pairs, marks, q)| {
            // 0 = absent, 1 = host-only, 2 = backbone
            let host: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&marks)
                .filter(|(_, &m)| m > 0)
                .map(|(&e, _)| e)
                .collect();
            let backbone: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&marks)
                .filter(|(_, &m)| m == 2)
                .map(|(&e, _)| e)
                .collect();
            let g = Graph::from_edges(n, host).unwrap();
            BackboneInstance::new(g, backbone, q).unwrap()
        })
}

proptest! {
    /// Writing an instance and parsing it back is the identity; the
    /// serialized form is a fixed point.
    #[test]
    fn instance_round_trip(inst in arb_instance(12)) {
        let text = write_instance(&inst, &[]);
        let parsed = parse_instance(&text).unwrap();
        prop_assert_eq!(&parsed, &inst);
        prop_assert_eq!(write_instance(&parsed, &[]), text);
    }

    /// A valid gap-q colouring of span k is a valid circular colouring at
    /// k + q - 1: colours fit inside the larger wheel with room to spare
    /// on the wrap-around side.
    #[test]
    fn valid_colourings_relax_to_circular(
        seed in any::<u64>(),
        n in 2usize..32,
        omega_pick in 2usize..6,
        q in 2u32..4,
    ) {
        let omega = omega_pick.min(n);
        let g = gen_random_chordal(n, omega, seed).unwrap();
        let backbone: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .enumerate()
            .filter(|(i, _)| seed.wrapping_shr(*i as u32 % 64) & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        let inst = BackboneInstance::new(g, backbone, q).unwrap();
        let (col, report) = double_spaced_colouring(&inst).unwrap();
        let circular = verify_circular_colouring(&inst, &col, report.span + q - 1).unwrap();
        prop_assert!(circular.valid, "violations: {:?}", circular.violations);
    }

    /// A 4-cycle subgraph exists exactly when some vertex pair has at
    /// least two common neighbours.
    #[test]
    fn c4_freeness_matches_common_neighbour_count(inst in arb_instance(10)) {
        let g = &inst.host;
        let n = g.vertex_count();
        let mut naive_has_c4 = false;
        for u in 1..=n {
            for v in u + 1..=n {
                let common = g
                    .neighbours(u)
                    .iter()
                    .filter(|w| g.neighbours(v).contains(w))
                    .count();
                if common >= 2 {
                    naive_has_c4 = true;
                }
            }
        }
        prop_assert_eq!(!g.is_c4_free(), naive_has_c4);
        if let Some(w) = g.c4_witness() {
            for i in 0..4 {
                prop_assert!(g.has_edge(w[i], w[(i + 1) % 4]));
            }
            let mut distinct = w.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            prop_assert_eq!(distinct.len(), 4);
        }
    }
}
