use std::collections::BTreeMap;
use std::sync::Arc;

use super::constructions::character;
use super::*;
use crate::exactq::{int, RationalMatrix};
use crate::groupoid::FiniteGroupoid;
use crate::homalg::GradedSpace;

fn scalar(x: i64) -> RationalMatrix {
    RationalMatrix::from_i64(&[&[x]])
}

fn arrows(t: &[ArrowId]) -> Simplex {
    Simplex::Arrows(t.to_vec())
}

/// ℤ/2 acting by −1 on `C = ℚ` and `V = ℚ`, with `δ = id`.
fn z2_two_term() -> RuthData {
    let g = Arc::new(FiniteGroupoid::cyclic(2));
    RuthData::uniform(g, GradedSpace::new([(-1, 1), (0, 1)]))
        .with_op(Simplex::Object(0), -1, scalar(1))
        .unwrap()
        .with_op(arrows(&[1]), -1, scalar(-1))
        .unwrap()
        .with_op(arrows(&[1]), 0, scalar(-1))
        .unwrap()
}

#[test]
fn sign_representation_verifies() {
    let g = Arc::new(FiniteGroupoid::cyclic(2));
    let sign = character(g.clone(), |a| if a == 0 { 1 } else { -1 });
    let report = sign.verify();
    assert!(report.passes, "{report:?}");
    assert!(report.checked > 0);

    let broken = sign.with_op(arrows(&[0]), 0, scalar(2)).unwrap();
    let report = broken.verify();
    assert!(!report.passes);
    assert_eq!(report.worst.unwrap().kind, ViolationKind::Normalization);
}

#[test]
fn uncocycle_curvature_fails_third_identity() {
    let g = Arc::new(FiniteGroupoid::pair(2));
    let (a, b) = (g.arrow_by_name("1<-0").unwrap(), g.arrow_by_name("0<-1").unwrap());
    let mut r = RuthData::uniform(g.clone(), GradedSpace::new([(-1, 1), (0, 1)]));
    for arrow in [a, b] {
        r.set_op(arrows(&[arrow]), -1, scalar(1)).unwrap();
        r.set_op(arrows(&[arrow]), 0, scalar(1)).unwrap();
    }
    r.set_op(arrows(&[a, b]), 0, scalar(2)).unwrap();
    r.set_op(arrows(&[b, a]), 0, scalar(5)).unwrap();
    let report = r.verify();
    assert!(!report.passes);
    let worst = report.worst.clone().unwrap();
    assert_eq!((worst.kind, worst.k), (ViolationKind::Identity, 3));
    assert!(matches!(report.into_result(), Err(RuthError::IdentityViolation { k: 3, .. })));
}

#[test]
fn two_term_view_matches_storage() {
    let r = z2_two_term();
    assert!(r.verify().passes);
    assert_eq!(r.core_differential(0), scalar(1));
    assert_eq!(r.core_action(1), scalar(-1));
    assert_eq!(r.base_action(1), scalar(-1));
    assert_eq!(r.curvature_term(1, 1), scalar(0));
}

#[test]
fn morphism_identity_and_non_chain_map() {
    let r = z2_two_term();
    assert!(RuthMorphismData::identity(&r).verify().passes);

    // Φ_0 = 1 from C to a copy in degree −1 of a line with trivial differential: Φ_0 R_0 ≠ 0.
    let g = r.groupoid().clone();
    let line = character(g.clone(), |a| if a == 0 { 1 } else { -1 });
    let m = RuthMorphismData::new(r, line)
        .unwrap()
        .with_component(Simplex::Object(0), 0, scalar(1))
        .unwrap();
    let report = m.verify();
    assert!(!report.passes);
    assert_eq!(report.worst.unwrap().k, 0);
}

#[test]
fn kernel_morphism_through_a_lift() {
    let base = z2_two_term();
    let g = base.groupoid().clone();
    for c in [int(3), crate::exactq::ratio(-1, 2)] {
        let lift = BTreeMap::from([(1, RationalMatrix::new(1, 1, vec![c.clone()]))]);
        let lifted = semidirect_roundtrip(&base, &lift).unwrap();
        assert!(lifted.verify().passes);
        // The sign line placed in degree −1.
        let line = RuthData::uniform(g.clone(), GradedSpace::new([(-1, 1)]))
            .with_op(arrows(&[1]), -1, scalar(-1))
            .unwrap();
        let ell = scalar(1);
        let m = RuthMorphismData::new(lifted, line)
            .unwrap()
            .with_component(Simplex::Object(0), -1, ell.clone())
            .unwrap()
            .with_component(arrows(&[1]), 0, ell.scale(&c))
            .unwrap();
        let report = m.verify();
        assert!(report.passes, "{report:?}");
    }
}

#[test]
fn dual_examples() {
    let g = Arc::new(FiniteGroupoid::trivial());
    let delta = RationalMatrix::from_i64(&[&[1], &[0]]);
    let r = RuthData::uniform(g.clone(), GradedSpace::new([(-1, 1), (0, 2)]))
        .with_op(Simplex::Object(0), -1, delta.clone())
        .unwrap();
    let d = dual_ruth(&r);
    assert_eq!(d.fiber(0), &GradedSpace::new([(0, 2), (1, 1)]));
    assert_eq!(d.op_matrix(&Simplex::Object(0), 0), -&delta.transpose());
    assert!(d.verify().passes);
    assert!(dual_ruth(&d).same_data(&r));

    let z2 = Arc::new(FiniteGroupoid::cyclic(2));
    let sign = character(z2, |a| if a == 0 { 1 } else { -1 });
    assert!(dual_ruth(&sign).same_data(&sign));
}

#[test]
fn tensor_examples() {
    let z2 = Arc::new(FiniteGroupoid::cyclic(2));
    let trivial = character(z2.clone(), |_| 1);
    let sign = character(z2.clone(), |a| if a == 0 { 1 } else { -1 });
    let r = z2_two_term();
    assert!(tensor_ruth(&r, &trivial).unwrap().same_data(&r));
    let squared = tensor_ruth(&sign, &sign).unwrap();
    assert!(squared.same_data(&trivial));

    let two = RuthData::uniform(z2.clone(), GradedSpace::new([(0, 2)]))
        .with_op(arrows(&[1]), 0, RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]))
        .unwrap();
    let t = tensor_ruth(&r, &two).unwrap();
    assert_eq!(t.fiber(0), &GradedSpace::new([(-1, 2), (0, 2)]));
    assert!(t.verify().passes);

    assert!(matches!(tensor_ruth(&sign, &r), Err(RuthError::NotAStrictRepresentation(_))));
    let inert = RuthData::uniform(z2.clone(), GradedSpace::new([(0, 2)]));
    assert!(matches!(tensor_ruth(&r, &inert), Err(RuthError::NotAStrictRepresentation(_))));
}

#[test]
fn twisted_dual_examples() {
    let z2 = Arc::new(FiniteGroupoid::cyclic(2));
    let trivial = character(z2.clone(), |_| 1);
    let sign = character(z2.clone(), |a| if a == 0 { 1 } else { -1 });
    let r = z2_two_term();
    assert!(twisted_dual_ruth(&r, &trivial).unwrap().same_data(&dual_ruth(&r)));
    let td = twisted_dual_ruth(&r, &sign).unwrap();
    assert!(td.verify().passes);
    assert_eq!(td.fiber(0), &GradedSpace::new([(0, 1), (1, 1)]));
    assert!(twisted_dual_ruth(&td, &sign).unwrap().same_data(&r));
    assert!(matches!(
        twisted_dual_ruth(&r, &r),
        Err(RuthError::NotAStrictRepresentation(_))
    ));
}

#[test]
fn cone_examples() {
    let r = z2_two_term();
    let zero = RuthMorphismData::new(r.clone(), r.clone()).unwrap();
    let c = cone_ruth(&zero);
    assert!(c.verify().passes);
    assert_eq!(c.fiber(0), &GradedSpace::new([(-1, 1), (0, 2), (1, 1)]));

    let c = cone_ruth(&RuthMorphismData::identity(&r));
    assert!(c.verify().passes);
    assert!(c.underlying_complex(0).is_acyclic().unwrap());
}

#[test]
fn cone_of_anchor_and_form_is_kernel_complex() {
    // A = ℚ → TM = ℚ² by ρ = (0, 1)ᵀ, then θ = (1, 0) : TM → L, over the trivial groupoid.
    let g = Arc::new(FiniteGroupoid::trivial());
    let rho = RationalMatrix::from_i64(&[&[0], &[1]]);
    let theta = RationalMatrix::from_i64(&[&[1, 0]]);
    let adjoint = RuthData::uniform(g.clone(), GradedSpace::new([(-1, 1), (0, 2)]))
        .with_op(Simplex::Object(0), -1, rho.clone())
        .unwrap();
    let line = character(g, |_| 1);
    let m = RuthMorphismData::new(adjoint, line)
        .unwrap()
        .with_component(Simplex::Object(0), 0, theta.clone())
        .unwrap();
    assert!(m.verify().passes);
    let cone = cone_ruth(&m);
    let k = cone.underlying_complex(0);
    assert_eq!(k.space(), &GradedSpace::new([(-1, 1), (0, 2), (1, 1)]));
    assert_eq!(k.differential(-1), rho);
    assert_eq!(k.differential(0), theta);
}

#[test]
fn roundtrip_with_zero_lift_is_identity() {
    let r = z2_two_term();
    let back = semidirect_roundtrip(&r, &BTreeMap::new()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn roundtrip_with_lift_creates_curvature() {
    let r = z2_two_term();
    let c = int(3);
    let lift = BTreeMap::from([(1, RationalMatrix::new(1, 1, vec![c.clone()]))]);
    let out = semidirect_roundtrip(&r, &lift).unwrap();
    assert!(out.verify().passes);
    // Ω′_{g,g} = 2c − c², Δ′ = −1 + c.
    assert_eq!(out.curvature_term(1, 1), RationalMatrix::new(1, 1, vec![int(2) * &c - &c * &c]));
    assert_eq!(out.base_action(1), RationalMatrix::new(1, 1, vec![int(-1) + &c]));
    assert_eq!(out.core_action(1), RationalMatrix::new(1, 1, vec![int(-1) + &c]));
}

#[test]
fn roundtrip_rejects_bad_input() {
    let r = z2_two_term();
    let unit_lift = BTreeMap::from([(0, scalar(1))]);
    assert!(matches!(
        semidirect_roundtrip(&r, &unit_lift),
        Err(RuthError::LiftNotNormalized { .. })
    ));
    let broken = r.clone().with_op(arrows(&[1, 1]), 0, scalar(1)).unwrap();
    assert!(!broken.verify().passes);
    assert!(matches!(
        semidirect_roundtrip(&broken, &BTreeMap::new()),
        Err(RuthError::GroupoidAxiomViolation { .. })
    ));
    let three = RuthData::uniform(r.groupoid().clone(), GradedSpace::new([(1, 1)]));
    assert!(matches!(semidirect_roundtrip(&three, &BTreeMap::new()), Err(RuthError::NotTwoTerm)));
}
