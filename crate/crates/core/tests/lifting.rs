use hopflift::cohomology::TotalCochain;
use hopflift::hopf::qt::{drinfeld_u, trivial_r};
use hopflift::hopf::{drinfeld_double, group_algebra, verify_hopf, Group, HopfMorphism, HopfPresentation, RMatrix};
use hopflift::lifting::{lift, lift_morphism, lift_morphism_in, lift_rmatrix, reconcile, LiftState, Lifter, Strategy};
use hopflift::cohomology::ComplexContext;
use hopflift::ring::{make_ring, RingDescriptor};
use hopflift::tensor::MultiMap;
use hopflift::Error;
use proptest::prelude::*;

fn ring(p: u64) -> RingDescriptor {
    make_ring(p, 1, 1, None).unwrap()
}

fn group(p: u64, g: Group) -> HopfPresentation {
    group_algebra(ring(p), &g).unwrap()
}

fn assert_lift(state: &LiftState) {
    assert!(verify_hopf(state.current()).verified());
    assert_eq!(&state.at_precision(1).unwrap(), state.base());
}

/// `g ↦ h^2` from `C_2` into `C_4`.
fn inclusion(p: u64) -> HopfMorphism {
    let f = ring(p);
    let mut map = MultiMap::zeros(f, 2, 4, 1, 1);
    map.set(0, 0, f.one());
    map.set(2, 1, f.one());
    HopfMorphism::new(group(p, Group::cyclic(2)), group(p, Group::cyclic(4)), map).unwrap().verified().unwrap()
}

/// `h ↦ h^3` on `C_4`.
fn inversion_c4(p: u64) -> HopfMorphism {
    let f = ring(p);
    let mut map = MultiMap::zeros(f, 4, 4, 1, 1);
    for i in 0..4 {
        map.set((4 - i) % 4, i, f.one());
    }
    let c4 = group(p, Group::cyclic(4));
    HopfMorphism::new(c4.clone(), c4, map).unwrap().verified().unwrap()
}

#[test]
fn perturbed_s3_to_343() {
    let state = lift(&group(7, Group::symmetric3()), 3, Strategy::Perturbed(2)).unwrap();
    assert_eq!(state.current().ring().characteristic(), 343);
    assert_lift(&state);
    assert!(state.transcript().iter().all(|s| s.obstruction_support > 0));
}

#[test]
fn canonical_lifts_are_unobstructed() {
    for base in [group(7, Group::symmetric3()), group(5, Group::cyclic(2)), group(3, Group::klein())] {
        let state = lift(&base, 4, Strategy::Canonical).unwrap();
        assert_lift(&state);
        assert!(state.transcript().iter().all(|s| s.obstruction_support == 0 && s.correction_support == 0));
        assert_eq!(state.current(), &base.digit_lift(state.current().ring()).unwrap());
    }
}

#[test]
fn corrected_bialgebras_at_precision_two() {
    for base in [group(5, Group::cyclic(2)), group(7, Group::cyclic(3))] {
        let lifter = Lifter::new(&base).unwrap();
        let (m, delta) = lifter.initial_lift(Strategy::Perturbed(4)).unwrap();
        let report = lifter.obstruction(&m, &delta).unwrap();
        assert!(report.cocycle_ok && !report.c.is_zero());
        let fixed = lifter.correct(&m, &delta, &report).unwrap();
        let after = lifter.obstruction(&fixed.bialgebra.m, &fixed.bialgebra.delta).unwrap();
        assert!(after.c.is_zero());
    }
}

#[test]
fn noncocommutative_bases_lift() {
    let base = group(7, Group::symmetric3()).dual();
    let state = lift(&base, 3, Strategy::Perturbed(5)).unwrap();
    assert_lift(&state);
}

#[test]
fn antipode_squares_to_identity_at_every_precision() {
    for base in [group(7, Group::symmetric3()).dual(), group(5, Group::quaternion())] {
        let state = lift(&base, 3, Strategy::Perturbed(9)).unwrap();
        for k in 1..=3 {
            let h = state.at_precision(k).unwrap();
            let s2 = h.antipode().compose(h.antipode()).unwrap();
            assert_eq!(s2, MultiMap::identity(*h.ring(), h.dim(), 1));
        }
    }
}

#[test]
fn reconcile_with_itself_is_the_identity() {
    let state = lift(&group(5, Group::cyclic(2)), 3, Strategy::Perturbed(1)).unwrap();
    let eta = reconcile(&state, &state).unwrap();
    assert_eq!(eta.map(), &MultiMap::identity(*state.current().ring(), 2, 1));
}

fn assert_isomorphism(eta: &HopfMorphism, s1: &LiftState, s2: &LiftState) {
    assert!(eta.report().verified());
    assert_eq!(eta.source(), s1.current());
    assert_eq!(eta.target(), s2.current());
    let f = *s1.base().ring();
    assert_eq!(eta.map().reduce_to(&f).unwrap(), MultiMap::identity(f, s1.base().dim(), 1));
}

#[test]
fn canonical_and_perturbed_lifts_are_isomorphic() {
    let base = group(5, Group::cyclic(2));
    let lifter = Lifter::new(&base).unwrap();
    let s1 = lifter.lift(3, Strategy::Canonical).unwrap();
    let s2 = lifter.lift(3, Strategy::Perturbed(3)).unwrap();
    assert_ne!(s1.current(), s2.current());
    let eta = reconcile(&s1, &s2).unwrap();
    assert_isomorphism(&eta, &s1, &s2);
    let back = reconcile(&s2, &s1).unwrap();
    let round = back.after(&eta).unwrap();
    assert!(round.report().verified());
    assert_eq!(round.map(), &MultiMap::identity(*s1.current().ring(), 2, 1));
}

#[test]
fn two_seeds_are_isomorphic() {
    let lifter = Lifter::new(&group(7, Group::cyclic(3))).unwrap();
    let s1 = lifter.lift(2, Strategy::Perturbed(1)).unwrap();
    let s2 = lifter.lift(2, Strategy::Perturbed(2)).unwrap();
    assert_isomorphism(&reconcile(&s1, &s2).unwrap(), &s1, &s2);
}

#[test]
fn reconcile_rejects_mismatched_states() {
    let lifter = Lifter::new(&group(5, Group::cyclic(2))).unwrap();
    let s2 = lifter.lift(2, Strategy::Canonical).unwrap();
    let s3 = lifter.lift(3, Strategy::Canonical).unwrap();
    assert_eq!(reconcile(&s2, &s3).unwrap_err(), Error::DifferentBaseOrPrecision);
    let other = lift(&group(5, Group::cyclic(3)), 2, Strategy::Canonical).unwrap();
    assert_eq!(reconcile(&s2, &other).unwrap_err(), Error::DifferentBaseOrPrecision);
}

#[test]
fn identity_lifts_to_identity() {
    let base = group(5, Group::cyclic(2));
    let state = lift(&base, 3, Strategy::Canonical).unwrap();
    let lifted = lift_morphism(&HopfMorphism::identity(&base), &state, &state).unwrap();
    assert_eq!(lifted.morphism.map(), &MultiMap::identity(*state.current().ring(), 2, 1));
    assert_eq!(lifted.corrections(), 0);
}

#[test]
fn inclusion_lifts_canonically() {
    let phi = inclusion(5);
    let a = lift(phi.source(), 3, Strategy::Canonical).unwrap();
    let b = lift(phi.target(), 3, Strategy::Canonical).unwrap();
    let lifted = lift_morphism(&phi, &a, &b).unwrap();
    assert_eq!(lifted.morphism.map(), &phi.map().digit_lift(a.current().ring()).unwrap());
    assert!(lifted.steps.iter().all(|s| s.defect_support == 0));
}

#[test]
fn counit_unit_composite_lifts_canonically() {
    let base = group(7, Group::cyclic(3));
    let phi = HopfMorphism::counit_unit(&base, &base).unwrap();
    let state = lift(&base, 2, Strategy::Canonical).unwrap();
    let lifted = lift_morphism(&phi, &state, &state).unwrap();
    assert_eq!(lifted.morphism.map(), &phi.map().digit_lift(state.current().ring()).unwrap());
}

#[test]
fn morphisms_between_perturbed_lifts() {
    let phi = inclusion(5);
    let a = lift(phi.source(), 3, Strategy::Perturbed(11)).unwrap();
    let b = lift(phi.target(), 3, Strategy::Perturbed(12)).unwrap();
    let lifted = lift_morphism(&phi, &a, &b).unwrap();
    assert!(lifted.morphism.report().verified());
    assert_eq!(lifted.morphism.map().reduce_to(phi.source().ring()).unwrap(), *phi.map());
    assert!(lifted.corrections() > 0);
}

#[test]
fn lifting_is_functorial() {
    let phi = inclusion(5);
    let psi = inversion_c4(5);
    let a = lift(phi.source(), 3, Strategy::Perturbed(21)).unwrap();
    let b = lift(phi.target(), 3, Strategy::Perturbed(22)).unwrap();
    let c = lift(psi.target(), 3, Strategy::Perturbed(23)).unwrap();
    let lphi = lift_morphism(&phi, &a, &b).unwrap().morphism;
    let lpsi = lift_morphism(&psi, &b, &c).unwrap().morphism;
    let composite = lift_morphism(&psi.after(&phi).unwrap(), &a, &c).unwrap().morphism;
    assert_eq!(composite.map(), lpsi.after(&lphi).unwrap().map());
}

#[test]
fn trivial_r_matrix_lifts_to_itself() {
    let base = group(5, Group::cyclic(2));
    let r0 = RMatrix::certify(base.clone(), trivial_r(&base).unwrap()).unwrap();
    let state = lift(&base, 2, Strategy::Canonical).unwrap();
    let lifted = lift_rmatrix(&r0, &state).unwrap();
    assert_eq!(lifted.r(), &trivial_r(state.current()).unwrap());
}

#[test]
fn triangular_lift_has_involutive_drinfeld_element() {
    let base = group(5, Group::cyclic(2));
    let f5 = *base.ring();
    let half = f5.from_int(3);
    let r1 = MultiMap::from_vector(f5, 2, 2, &[half, half, half, f5.neg(half)]).unwrap();
    let r1 = RMatrix::certify(base.clone(), r1).unwrap();
    let state = lift(&base, 3, Strategy::Perturbed(5)).unwrap();
    let lifted = lift_rmatrix(&r1, &state).unwrap();
    assert!(lifted.is_triangular());
    assert_eq!(lifted.r().reduce_to(&f5).unwrap(), *r1.r());
    assert!(drinfeld_u(state.current(), lifted.r()).unwrap().squares_to_one);
}

#[test]
fn canonical_r_matrix_of_a_double_lifts() {
    let (double, r) = drinfeld_double(&group(5, Group::cyclic(2))).unwrap();
    let state = lift(&double, 2, Strategy::Perturbed(8)).unwrap();
    let lifted = lift_rmatrix(&r, &state).unwrap();
    assert_eq!(lifted.r().reduce_to(double.ring()).unwrap(), *r.r());
    assert!(!lifted.is_triangular());
}

#[test]
fn double_of_a_lift_is_a_lift_of_the_double() {
    let base = group(5, Group::cyclic(2));
    let (double, _) = drinfeld_double(&base).unwrap();
    let lifted_double = lift(&double, 2, Strategy::Perturbed(6)).unwrap();
    let (double_of_lift, _) = drinfeld_double(lift(&base, 2, Strategy::Perturbed(7)).unwrap().current()).unwrap();
    let ctx = ComplexContext::identity(&double).unwrap();
    let eta = lift_morphism_in(&ctx, lifted_double.current(), &double_of_lift).unwrap().morphism;
    assert!(eta.report().verified());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Changing the digit lift by `p^k r` changes the obstruction by `d r`.
    #[test]
    fn obstruction_class_is_independent_of_the_lift(seed in any::<u64>(), other in any::<u64>()) {
        let base = group(5, Group::cyclic(2));
        let lifter = Lifter::new(&base).unwrap();
        let (m, delta) = lifter.initial_lift(Strategy::Perturbed(seed)).unwrap();
        let (m2, delta2) = lifter.initial_lift(Strategy::Perturbed(other)).unwrap();
        let c1 = lifter.obstruction(&m, &delta).unwrap().c;
        let c2 = lifter.obstruction(&m2, &delta2).unwrap().c;
        let f5 = *base.ring();
        let r_m = m2.sub(&m).unwrap().exact_div_p(1).unwrap().reduce_to(&f5).unwrap();
        let r_delta = delta2.sub(&delta).unwrap().exact_div_p(1).unwrap().reduce_to(&f5).unwrap();
        let ctx = lifter.context();
        let r = TotalCochain::from_components(ctx, 1, vec![r_delta, r_m]).unwrap();
        prop_assert_eq!(c2, c1.add(&ctx.d_total(&r).unwrap()).unwrap());
    }
}
