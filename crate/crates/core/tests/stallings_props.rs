use noneq_core::criterion::PairIndex;
use noneq_core::stallings::{fold, verify_basis_pair};
use noneq_core::witness::WitnessMatrices;
use noneq_core::{FreeWord, Generator, Letter};
use proptest::prelude::*;

fn word(rank: u32, min_len: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((1..=rank, any::<bool>()), min_len..=max_len).prop_map(|v| {
        FreeWord::from_letters(
            v.into_iter()
                .map(|(g, inv)| Letter::new(Generator::new(g).unwrap(), inv)),
        )
    })
}

fn exponent_sum(w: &FreeWord, g: u32) -> i64 {
    w.runs()
        .iter()
        .filter(|(h, _)| h.index() == g)
        .map(|(_, e)| e)
        .sum()
}

proptest! {
    #[test]
    fn fold_is_confluent(gens in prop::collection::vec(word(3, 1, 6), 1..4), seed in any::<u64>()) {
        let mut shuffled = gens.clone();
        // Rotate and invert some generators: the subgroup is unchanged.
        shuffled.rotate_left((seed as usize) % gens.len());
        for (k, g) in shuffled.iter_mut().enumerate() {
            if seed >> k & 1 == 1 {
                *g = g.inverse();
            }
        }
        // Redundant product of the first two.
        if gens.len() >= 2 {
            shuffled.push(gens[0].multiply(&gens[1]));
        }
        prop_assert_eq!(fold(&gens).canonical_form(), fold(&shuffled).canonical_form());
    }

    #[test]
    fn subgroup_elements_are_members(
        gens in prop::collection::vec(word(3, 1, 5), 1..4),
        picks in prop::collection::vec((0usize..4, any::<bool>()), 0..5),
    ) {
        let graph = fold(&gens);
        prop_assert!(graph.is_folded());
        prop_assert!(graph.rank() <= gens.len());
        let product = picks.iter().fold(FreeWord::identity(), |acc, &(i, inv)| {
            let g = &gens[i % gens.len()];
            acc.multiply(&if inv { g.inverse() } else { g.clone() })
        });
        prop_assert!(graph.contains(&product).unwrap());
    }

    #[test]
    fn index_two_subgroup_membership(w in word(2, 0, 12)) {
        // <e1^2, e2, e1 e2 e1^-1> is the kernel of e1 -> 1, e2 -> 0 in Z/2.
        let graph = fold(&["e1^2".parse().unwrap(), "e2".parse().unwrap(), "e1 e2 e1^-1".parse().unwrap()]);
        prop_assert_eq!(graph.vertex_count(), 2);
        prop_assert_eq!(graph.rank(), 3);
        prop_assert_eq!(graph.contains(&w).unwrap(), exponent_sum(&w, 1) % 2 == 0);
    }

    #[test]
    fn cyclic_subgroup_membership(r in word(2, 1, 4), n in -4i64..=4, w in word(2, 0, 8)) {
        let (_, core) = r.cyclic_split();
        prop_assume!(core.qth_root(2).is_none() && core.qth_root(3).is_none());
        let graph = fold(std::slice::from_ref(&r));
        prop_assert!(graph.contains(&r.power(n)).unwrap());
        prop_assert_eq!(graph.rank(), 1);
        // A member of <r> commutes with r.
        if graph.contains(&w).unwrap() {
            prop_assert!(w.commutes(&r));
        }
    }
}

#[test]
fn basis_certificates_on_pattern_cells() {
    for n in 1..=4 {
        let m = WitnessMatrices::build(n).unwrap();
        for a in PairIndex::all(n) {
            for b in PairIndex::all(n) {
                if a.i != b.i || a == b {
                    let ok = verify_basis_pair(
                        m.a(a),
                        m.b(b),
                        a.i as u32,
                        a.j as u32,
                        b.i as u32,
                        b.j as u32,
                    )
                    .unwrap();
                    assert!(ok, "n={n} a={a:?} b={b:?}");
                }
            }
        }
    }
}

#[test]
fn basis_check_rejects_off_pattern_cells() {
    // With i = k and j != l the product e_{i+j}^5 e_{i+l}^-4 is not
    // primitive, so no certificate may be issued.
    let m = WitnessMatrices::build(3).unwrap();
    for i in 1..=3 {
        for j in 1..=3 {
            for l in (1..=3).filter(|&l| l != j) {
                let (a, b) = (PairIndex::new(i, j), PairIndex::new(i, l));
                let ok = verify_basis_pair(m.a(a), m.b(b), i as u32, j as u32, i as u32, l as u32)
                    .unwrap();
                assert!(!ok, "a={a:?} b={b:?}");
            }
        }
    }
}
