use noneq_core::free_product::{
    FPElement, Factor, FactorElem, FreeFactor, FreeProduct, RootSet, Syllable, TableGroup,
};
use proptest::prelude::*;

const Z2Z3_TOKENS: &[&str] = &["Z2.1", "Z3.1", "Z3.2"];
const Z3F2_TOKENS: &[&str] = &["Z3.1", "Z3.2", "e1", "e1^-1", "e2", "e2^-1"];
const MIXED_TOKENS: &[&str] = &["Z2.1", "Z3.1", "Z3.2", "e1", "e1^-1"];

fn tokens(alphabet: &'static [&'static str], max_len: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(0..alphabet.len(), 0..=max_len)
        .prop_map(move |idx| idx.iter().map(|&i| alphabet[i]).collect::<Vec<_>>().join(" "))
}

fn z2z3() -> FreeProduct {
    FreeProduct::cyclic(&[2, 3])
}

fn z3f2() -> FreeProduct {
    FreeProduct::cyclic(&[3]).with_free(Some(2))
}

/// Normal-form invariants checked from the outside.
fn assert_normal(p: &FreeProduct, x: &FPElement) {
    p.check(x).unwrap();
    for pair in x.syllables().windows(2) {
        assert_ne!(pair[0].factor, pair[1].factor);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn z2z3_group_axioms(a in tokens(Z2Z3_TOKENS, 10), b in tokens(Z2Z3_TOKENS, 10), c in tokens(Z2Z3_TOKENS, 10)) {
        let p = z2z3();
        let (a, b, c) = (p.parse(&a).unwrap(), p.parse(&b).unwrap(), p.parse(&c).unwrap());
        let left = p.multiply(&p.multiply(&a, &b), &c);
        prop_assert_eq!(&left, &p.multiply(&a, &p.multiply(&b, &c)));
        prop_assert!(p.multiply(&a, &p.invert(&a)).is_identity());
        assert_normal(&p, &left);
    }

    #[test]
    fn z3f2_group_axioms(a in tokens(Z3F2_TOKENS, 10), b in tokens(Z3F2_TOKENS, 10), c in tokens(Z3F2_TOKENS, 10)) {
        let p = z3f2();
        let (a, b, c) = (p.parse(&a).unwrap(), p.parse(&b).unwrap(), p.parse(&c).unwrap());
        let left = p.multiply(&p.multiply(&a, &b), &c);
        prop_assert_eq!(&left, &p.multiply(&a, &p.multiply(&b, &c)));
        prop_assert!(p.multiply(&p.invert(&a), &a).is_identity());
        assert_normal(&p, &left);
    }
}

proptest! {
    #[test]
    fn split_cores_alternate(a in tokens(Z2Z3_TOKENS, 14)) {
        let p = z2z3();
        let a = p.parse(&a).unwrap();
        let (gamma, core) = p.cyclic_split(&a);
        prop_assert_eq!(p.conjugate(&core, &gamma), a);
        prop_assert!(p.is_cyclically_reduced(&core));
        // With two factors a cyclically reduced word of length >= 2 has
        // first and last syllables in different factors, hence even length.
        if core.syl() >= 2 {
            prop_assert_eq!(core.syl() % 2, 0);
        }
    }

    #[test]
    fn powers_and_roots(a in tokens(Z3F2_TOKENS, 8), q in 1u32..=5) {
        let p = z3f2();
        let a = p.parse(&a).unwrap();
        let z = p.power(&a, i64::from(q));
        let roots = p.qth_root(&z, q);
        if !a.is_identity() {
            // When a^q = 1 the root set is infinite and listed by representatives.
            prop_assert!(roots.contains_listed(&a) || !roots.is_finite());
        }
        for r in roots.listed() {
            prop_assert_eq!(&p.power(r, i64::from(q)), &z);
        }
    }

    #[test]
    fn format_round_trips(a in tokens(Z3F2_TOKENS, 12)) {
        let p = z3f2();
        let a = p.parse(&a).unwrap();
        prop_assert_eq!(p.parse(&p.format(&a)).unwrap(), a);
    }

    #[test]
    fn nested_product_agrees_with_flat(a in tokens(MIXED_TOKENS, 10), b in tokens(MIXED_TOKENS, 10)) {
        let inner = z2z3();
        let nested = FreeProduct::new(vec![
            Factor::Product(inner),
            Factor::Free(FreeFactor::new(Some(1), "e").unwrap()),
        ])
        .unwrap();
        let flat = FreeProduct::cyclic(&[2, 3]).with_free(Some(1));
        let (na, nb) = (nested.parse(&a).unwrap(), nested.parse(&b).unwrap());
        let (fa, fb) = (flat.parse(&a).unwrap(), flat.parse(&b).unwrap());
        prop_assert_eq!(flatten(&na), fa.clone());
        prop_assert_eq!(flatten(&nb), fb.clone());
        prop_assert_eq!(flatten(&nested.multiply(&na, &nb)), flat.multiply(&fa, &fb));
        prop_assert_eq!(flatten(&nested.invert(&na)), flat.invert(&fa));
    }
}

/// `(Z2 * Z3) * F1` into `Z2 * Z3 * F1`.
fn flatten(x: &FPElement) -> FPElement {
    let flat = FreeProduct::cyclic(&[2, 3]).with_free(Some(1));
    let syllables = x.syllables().iter().flat_map(|s| match (&s.factor, &s.elem) {
        (0, FactorElem::Product(inner)) => inner.syllables().to_vec(),
        (1, elem) => vec![Syllable {
            factor: 2,
            elem: elem.clone(),
        }],
        other => panic!("unexpected syllable {other:?}"),
    });
    flat.from_syllables(syllables)
}

#[test]
fn table_axioms_for_small_groups() {
    // Klein four-group and S3 by their Cayley tables.
    let v4 = TableGroup::new(
        "V4",
        vec!["e".into(), "a".into(), "b".into(), "c".into()],
        vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]],
        vec![0, 1, 2, 3],
        0,
    )
    .unwrap();
    assert_eq!(v4.order(), 4);
    // S3 as permutations of {0,1,2}: composition table computed directly.
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap() as u32;
    let mul: Vec<Vec<u32>> = perms
        .iter()
        .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    let inv: Vec<u32> = (0..6)
        .map(|i| (0..6).find(|&j| mul[i][j as usize] == 0).unwrap())
        .collect();
    let names = ["1", "r", "r2", "s", "sr", "sr2"].map(String::from).to_vec();
    let s3 = TableGroup::new("S3", names, mul, inv, 0).unwrap();
    let p = FreeProduct::new(vec![Factor::Table(s3), Factor::Table(v4)]).unwrap();
    let x = p.parse("S3.r V4.a S3.s").unwrap();
    assert_eq!(p.multiply(&x, &p.invert(&x)), FPElement::identity());
    // Order-2 elements of S3 and V4 give torsion square roots of 1.
    match p.qth_root(&FPElement::identity(), 2) {
        RootSet::Torsion(reps) => assert_eq!(reps.len(), 3 + 3),
        other => panic!("expected torsion roots, got {other:?}"),
    }
    let broken = TableGroup::new(
        "B",
        vec!["e".into(), "a".into()],
        vec![vec![0, 1], vec![1, 1]],
        vec![0, 1],
        0,
    );
    assert!(broken.is_err());
}
