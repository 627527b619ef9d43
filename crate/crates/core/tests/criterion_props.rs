use noneq_core::criterion::{
    check_order_witness, expected_pattern, extract_noneq_row, matches_pattern, PairIndex, SatMatrix,
};
use proptest::prelude::*;

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn pattern_invariant_under_index_permutations(
        (n, rows, cols) in (1usize..=4).prop_flat_map(|n| (Just(n), permutation(n), permutation(n)))
    ) {
        // Relabel the block index i by `rows` and the inner index j by
        // `cols`, the same map on both sides.
        let pattern = expected_pattern(n).unwrap();
        let relabel = |p: PairIndex| PairIndex::new(rows[p.i - 1], cols[p.j - 1]);
        let permuted = SatMatrix::from_fn(n, |a, b| pattern.get(relabel(a), relabel(b))).unwrap();
        prop_assert!(matches_pattern(&permuted));
    }

    #[test]
    fn any_single_flip_breaks_the_pattern(n in 1usize..=4, a in 0usize..16, b in 0usize..16) {
        let mut m = expected_pattern(n).unwrap();
        let cells: Vec<PairIndex> = PairIndex::all(n).collect();
        let (a, b) = (cells[a % cells.len()], cells[b % cells.len()]);
        m.set(a, b, !m.get(a, b));
        prop_assert!(!matches_pattern(&m));
    }

    #[test]
    fn json_round_trip(n in 1usize..=4, bits in prop::collection::vec(any::<bool>(), 256)) {
        let m = SatMatrix::from_fn(n, |a, b| {
            let idx = ((a.i - 1) * n + a.j - 1) * n * n + (b.i - 1) * n + b.j - 1;
            bits[idx]
        })
        .unwrap();
        prop_assert_eq!(SatMatrix::from_json(&m.to_json()).unwrap(), m);
    }
}

#[test]
fn every_row_is_an_order_witness() {
    for n in 2..=5 {
        let m = expected_pattern(n).unwrap();
        for i0 in 1..=n {
            let slice = extract_noneq_row(&m, i0).unwrap();
            assert!(check_order_witness(&slice).unwrap(), "n={n} i0={i0}");
        }
    }
}
