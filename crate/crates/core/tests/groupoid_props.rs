use fiberq::groupoid::FiniteGroupoid;
use proptest::prelude::*;

fn groupoid() -> impl Strategy<Value = FiniteGroupoid> {
    prop_oneof![
        Just(FiniteGroupoid::trivial()),
        (1usize..7).prop_map(FiniteGroupoid::cyclic),
        Just(FiniteGroupoid::symmetric3()),
        (1usize..4).prop_map(FiniteGroupoid::pair),
    ]
}

/// The composable `k`-tuple at position `pick` (mod the count) in the nerve.
fn tuple(g: &FiniteGroupoid, k: usize, pick: usize) -> Vec<usize> {
    let all = g.composable_tuples(k);
    all[pick % all.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn axioms_hold(g in groupoid()) {
        prop_assert!(g.validate().is_ok());
        let round = FiniteGroupoid::from_presentation(&g.presentation()).unwrap();
        prop_assert_eq!(round, g);
    }

    #[test]
    fn composition_is_associative(g in groupoid(), pick in any::<usize>()) {
        let t = tuple(&g, 3, pick);
        let left = g.compose(g.compose(t[0], t[1]).unwrap(), t[2]).unwrap();
        let right = g.compose(t[0], g.compose(t[1], t[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(g.product(&t), left);
    }

    #[test]
    fn reversed_inverses_invert_the_product(g in groupoid(), k in 1usize..4, pick in any::<usize>()) {
        let t = tuple(&g, k, pick);
        let r = g.reversed_inverses(&t);
        prop_assert!(g.is_composable(&r));
        let p = g.product(&t);
        prop_assert_eq!(g.product(&r), g.inv(p));
        prop_assert_eq!(g.compose(p, g.product(&r)), Some(g.unit(g.tgt(p))));
    }

    #[test]
    fn faces_and_degeneracies(g in groupoid(), k in 2usize..4, pick in any::<usize>()) {
        let t = tuple(&g, k, pick);
        for j in 1..k {
            let face = g.inner_face(&t, j);
            prop_assert_eq!(face.len(), k - 1);
            prop_assert_eq!(g.product(&face), g.product(&t));
        }
        for i in 0..=k {
            let d = g.degeneracy(&t, i);
            prop_assert!(g.is_composable(&d));
            prop_assert_eq!(g.product(&d), g.product(&t));
        }
    }

    #[test]
    fn nerve_counts(g in groupoid()) {
        // In a groupoid a composable pair is an arrow followed by any arrow out of its target.
        let pairs: usize = (0..g.arrow_count())
            .map(|a| (0..g.arrow_count()).filter(|&b| g.src(b) == g.tgt(a)).count())
            .sum();
        prop_assert_eq!(g.composable_tuples(2).len(), pairs);
        prop_assert_eq!(g.composable_tuples(1).len(), g.arrow_count());
        prop_assert_eq!(g.composable_tuples(0).len(), g.object_count());
    }
}
