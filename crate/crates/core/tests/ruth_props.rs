mod common;

use std::sync::Arc;

use fiberq::groupoid::FiniteGroupoid;
use fiberq::ruth::{
    character, cone_ruth, dual_ruth, semidirect_roundtrip, tensor_ruth, twisted_dual_direct,
    twisted_dual_ruth, RuthData, RuthMorphismData, SemidirectProduct, Simplex,
};
use proptest::prelude::*;
use rand::Rng;

/// A two-term representation with generally nonzero curvature, obtained by
/// re-extracting a strict one through a random lift.
fn curved(seed: u64) -> RuthData {
    let mut rng = common::rng(seed);
    let strict = if rng.gen_bool(0.3) {
        common::z2_two_term()
    } else {
        let n = rng.gen_range(1..=3);
        let (c, v) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        common::pair_two_term(&mut rng, n, c, v)
    };
    let lift = common::random_lift(&mut rng, &strict);
    semidirect_roundtrip(&strict, &lift).expect("extraction succeeds")
}

fn line_for(r: &RuthData) -> RuthData {
    let g: &Arc<FiniteGroupoid> = r.groupoid();
    if g.object_count() == 1 {
        character(g.clone(), |a| if g.is_unit(a) { 1 } else { -1 })
    } else {
        character(g.clone(), |_| 1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn extraction_verifies(seed in any::<u64>()) {
        let r = curved(seed);
        let report = r.verify();
        prop_assert!(report.passes, "{:?}", report.worst_location);
        SemidirectProduct::new(&r).unwrap().verify_axioms().unwrap();
    }

    #[test]
    fn constructions_stay_coherent(seed in any::<u64>()) {
        let r = curved(seed);
        let line = line_for(&r);
        prop_assert!(dual_ruth(&r).verify().passes);
        prop_assert!(tensor_ruth(&r, &line).unwrap().verify().passes);
        prop_assert!(twisted_dual_ruth(&r, &line).unwrap().verify().passes);
        prop_assert!(cone_ruth(&RuthMorphismData::identity(&r)).verify().passes);
    }

    #[test]
    fn duals_are_involutive(seed in any::<u64>()) {
        let r = curved(seed);
        let line = line_for(&r);
        prop_assert!(dual_ruth(&dual_ruth(&r)).same_data(&r));
        let twice = twisted_dual_direct(&twisted_dual_direct(&r, &line).unwrap(), &line).unwrap();
        prop_assert!(twice.same_data(&r));
    }

    #[test]
    fn trivial_tensor_is_identity(seed in any::<u64>()) {
        let r = curved(seed);
        let trivial = character(r.groupoid().clone(), |_| 1);
        prop_assert!(tensor_ruth(&r, &trivial).unwrap().same_data(&r));
    }

    #[test]
    fn broken_curvature_is_detected(seed in any::<u64>(), pick in any::<usize>()) {
        let r = curved(seed);
        let g = r.groupoid().clone();
        let pairs: Vec<Vec<usize>> = g
            .composable_tuples(2)
            .into_iter()
            .filter(|t| !g.is_unit(t[0]) && !g.is_unit(t[1]))
            .collect();
        prop_assume!(!pairs.is_empty());
        let t = pairs[pick % pairs.len()].clone();
        let (rows, cols) = r.op_shape(&Simplex::Arrows(t.clone()), 0);
        prop_assume!(rows > 0 && cols > 0);
        let mut m = r.op_matrix(&Simplex::Arrows(t.clone()), 0);
        m[(0, 0)] += fiberq::exactq::int(1);
        let broken = r.clone().with_op(Simplex::Arrows(t), 0, m).unwrap();
        let report = broken.verify();
        prop_assert!(!report.passes);
        prop_assert!(report.worst.unwrap().k >= 2);
    }
}

#[test]
fn s3_strict_representation_closure() {
    let r = common::s3_strict();
    assert!(r.verify().passes);
    let g = r.groupoid().clone();
    let sign = character(g.clone(), |a| {
        let name = g.arrow_name(a);
        // One-line notation: parity of the number of inversions.
        let b = name.as_bytes();
        let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| b[i] > b[j]).count();
        if inversions % 2 == 0 { 1 } else { -1 }
    });
    assert!(sign.verify().passes);
    for built in [
        dual_ruth(&r),
        tensor_ruth(&r, &sign).unwrap(),
        twisted_dual_ruth(&r, &sign).unwrap(),
        cone_ruth(&RuthMorphismData::identity(&r)),
    ] {
        let report = built.verify();
        assert!(report.passes && report.worst.is_none());
    }
    let twice = twisted_dual_ruth(&twisted_dual_ruth(&r, &sign).unwrap(), &sign).unwrap();
    assert!(twice.same_data(&r));
    assert_eq!(r.op_matrix(&Simplex::Object(0), -1), common::s3_boundary());
}
