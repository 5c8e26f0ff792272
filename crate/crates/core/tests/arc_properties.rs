use arc_complex::arc::{flatten, intersection, realize};
use arc_complex::flip::{FlipWord, MarkedTriangulation};
use arc_complex::{ArcClass, Surface};
use proptest::prelude::*;

fn random_class(s: Surface, word: &[usize], pick: usize) -> ArcClass {
    let mut m = MarkedTriangulation::standard(s).unwrap();
    for &w in word {
        let slots = m.flippable_slots();
        m = m.flip(slots[w % slots.len()]).unwrap();
    }
    m.class(pick % s.arc_count()).clone()
}

fn surfaces() -> impl Strategy<Value = Surface> {
    prop_oneof![
        Just(Surface { genus: 1, boundary: 1 }),
        Just(Surface { genus: 0, boundary: 4 }),
        Just(Surface { genus: 0, boundary: 5 }),
        Just(Surface { genus: 1, boundary: 2 }),
        Just(Surface { genus: 2, boundary: 1 }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn intersection_is_symmetric(s in surfaces(), w1 in prop::collection::vec(0usize..20, 0..12),
                                 w2 in prop::collection::vec(0usize..20, 0..12), p in 0usize..20, q in 0usize..20) {
        let a = random_class(s, &w1, p);
        let b = random_class(s, &w2, q);
        prop_assert_eq!(intersection(&a, &b).unwrap(), intersection(&b, &a).unwrap());
    }

    #[test]
    fn flatten_ends_on_the_class(s in surfaces(), w in prop::collection::vec(0usize..20, 0..15), p in 0usize..20) {
        let a = random_class(s, &w, p);
        let f = flatten(&a).unwrap();
        let m = MarkedTriangulation::standard(s).unwrap().apply(&f.word).unwrap();
        prop_assert_eq!(m.class(f.slot), &a);
    }

    #[test]
    fn triangulation_arcs_are_pairwise_disjoint(s in surfaces(), w in prop::collection::vec(0usize..20, 0..12)) {
        let a = random_class(s, &w, 0);
        let mut m = MarkedTriangulation::standard(s).unwrap();
        for &x in &w {
            let slots = m.flippable_slots();
            m = m.flip(slots[x % slots.len()]).unwrap();
        }
        let _ = a;
        for i in m.classes() {
            for j in m.classes() {
                prop_assert_eq!(intersection(i, j).unwrap().0, 0);
            }
        }
        let r = realize(m.classes()).unwrap();
        prop_assert_eq!(r.key(), m.key());
        let _ = FlipWord::new();
    }
}
