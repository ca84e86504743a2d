use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use proptest::prelude::*;

use super::*;
use crate::states::{Scenario, SpinFamily};

const TSIRELSON: f64 = 2.0 * SQRT_2;

fn singlet(alpha: f64) -> PureState<f64> {
    Scenario::new(alpha, SpinFamily::singlet(), 0.0).initial_state()
}

fn seen(state: &PureState<f64>, frame: &FrameDescriptor<f64>) -> PureState<f64> {
    frame.observe(state).unwrap()
}

fn dir(v: [f64; 3]) -> Direction<f64> {
    Direction::normalized(Vector3::from(v)).unwrap()
}

fn arb_direction() -> impl Strategy<Value = Direction<f64>> {
    (
        0.0..std::f64::consts::PI,
        -std::f64::consts::PI..std::f64::consts::PI,
    )
        .prop_map(|(t, p)| Direction::from_angles(t, p))
}

fn arb_family() -> impl Strategy<Value = SpinFamily<f64>> {
    prop_oneof![
        (-3.2..3.2f64).prop_map(|beta| SpinFamily::BellPsi { beta }),
        (-3.2..3.2f64, -3.2..3.2f64).prop_map(|(theta, phi)| SpinFamily::Triplet { theta, phi }),
    ]
}

#[test]
fn direction_validation() {
    assert!(Direction::new(Vector3::new(1.0, 0.0, 0.0)).is_ok());
    assert!(matches!(
        Direction::new(Vector3::new(1.0, 1.0, 0.0)),
        Err(Error::InvalidDirection(_))
    ));
    assert!(matches!(
        Direction::normalized(Vector3::<f64>::zeros()),
        Err(Error::SingularDirection(_))
    ));
    let d = Direction::from_angles(0.7f64, -2.1);
    let (t, p) = d.angles();
    assert!((t - 0.7).abs() < 1e-14 && (p + 2.1).abs() < 1e-14);
}

#[test]
fn singlet_correlation_at_rest() {
    let st = singlet(0.3);
    let rest = FrameDescriptor::rest();
    let pairs = [
        ([1.0, 0.0, 0.0], [1.0, 0.0, 0.0]),
        ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
        ([0.3, -0.4, 0.5], [-0.2, 0.9, 0.1]),
        ([0.0, 0.0, 1.0], [0.0, 0.6, 0.8]),
    ];
    for (a, b) in pairs {
        let (a, b) = (dir(a), dir(b));
        let e = correlation(&st, &a, &b, &rest).unwrap();
        assert!((e + a.vector().dot(b.vector())).abs() < 1e-14, "{e}");
    }
}

#[test]
fn planar_optimal_violates_maximally_at_rest() {
    for alpha in [0.0, 0.3, FRAC_1_SQRT_2, 1.2] {
        let r = chsh_report(
            &singlet(alpha),
            &MeasurementSetup::planar_optimal(),
            &FrameDescriptor::rest(),
        )
        .unwrap();
        assert!((r.value - TSIRELSON).abs() < 1e-12);
        assert!((r.e_ab + FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((r.e_ab_prime - FRAC_1_SQRT_2).abs() < 1e-12);
    }
}

#[test]
fn transformed_directions_recover_maximal_violation() {
    let st = singlet(0.4);
    for eta in [0.5, 1.0, 2.0] {
        for xi in [0.5, 1.0, 2.0] {
            let f = FrameDescriptor::new(eta, xi).unwrap();
            let s = chsh(&seen(&st, &f), &MeasurementSetup::planar_optimal(), &f).unwrap();
            assert!((s - TSIRELSON).abs() < 1e-9, "{eta} {xi} {s}");
        }
    }
}

#[test]
fn verbatim_directions_lose_violation() {
    // independent numpy evaluation of the full 16×16 expectation
    let cases = [
        (2.0, 2.0, 1.8388142275308483),
        (1.0, 1.0, 1.068607355287907),
        (0.5, 0.5, 2.654666454616909),
    ];
    for (eta, xi, want) in cases {
        let f = FrameDescriptor::new(eta, xi)
            .unwrap()
            .with_directions(DirectionConvention::Verbatim);
        let s = chsh(
            &seen(&singlet(0.3), &f),
            &MeasurementSetup::planar_optimal(),
            &f,
        )
        .unwrap();
        assert!((s - want).abs() < 1e-12, "{s}");
        assert!(s < TSIRELSON - 1e-3);
    }
}

#[test]
fn verbatim_without_observer_boost_is_rest_like() {
    // ξ = 0 and in-plane directions: the pull-back leaves x̂, ŷ alone
    let f = FrameDescriptor::new(2.0, 0.0)
        .unwrap()
        .with_directions(DirectionConvention::Verbatim);
    let s = chsh(
        &seen(&singlet(0.3), &f),
        &MeasurementSetup::planar_optimal(),
        &f,
    )
    .unwrap();
    assert!((s - TSIRELSON).abs() < 1e-12);
}

#[test]
fn pauli_lubanski_velocity_example() {
    let a = dir([1.0, 0.0, 1.0]);
    let p =
        FourVector::momentum(1.0, Rapidity::from_velocity(0.6).unwrap(), &Vector3::z()).unwrap();
    let n = pauli_lubanski_direction(&a, &p).unwrap();
    let want = Vector3::new(0.8 / 0.82f64.sqrt(), 0.0, 1.0 / 0.82f64.sqrt()) * FRAC_1_SQRT_2;
    assert!((n.vector() - want).amax() < 1e-14);
    assert!((n.vector().x - 0.624695).abs() < 1e-6);
    assert!((n.vector().z - 0.780869).abs() < 1e-6);
    assert!((n.vector().norm() - 1.0).abs() < 1e-14);
}

#[test]
fn rest_particle_keeps_direction() {
    let a = dir([0.2, -0.7, 0.4]);
    let n = pauli_lubanski_direction(&a, &FourVector::rest(2.0)).unwrap();
    assert!((n.vector() - a.vector()).amax() < 1e-15);
    let obs = pauli_lubanski_observable(&a, &FourVector::rest(1.0)).unwrap();
    assert!((obs - rest_spin_observable(&a)).map(|c| c.norm()).max() < 1e-15);
}

#[test]
fn transform_and_normalize_example() {
    let xi = Rapidity::new(1.0).unwrap();
    let a = dir([1.0, 1.0, 0.0]).lift();
    let moved = transform_direction(&boost(xi, &Vector3::x()).unwrap(), &a);
    let n = normalize_spatial(&moved).unwrap();
    let (c, s) = (1.0f64.cosh(), 1.0);
    let want = Vector3::new(c, s, 0.0) / (c * c + 1.0).sqrt();
    assert!((n.vector() - want).amax() < 1e-15);
    assert!((n.vector().x - 0.83918894).abs() < 1e-8);
    assert!((n.vector().y - 0.54383998).abs() < 1e-8);
    assert!(matches!(
        normalize_spatial(&FourVector::new(1.0, 0.0, 0.0, 0.0)),
        Err(Error::SingularDirection(_))
    ));
}

#[test]
fn rejects_non_four_qubit_states() {
    let two = crate::states::momentum_state(0.3f64);
    let err = correlation(
        &two,
        &Direction::x(),
        &Direction::x(),
        &FrameDescriptor::rest(),
    );
    assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
}

#[test]
fn planar_setup_round_trips_through_angles() {
    let s = MeasurementSetup::<f64>::planar_optimal();
    let back = MeasurementSetup::from_angles(&s.angles());
    for (x, y) in [
        (s.a, back.a),
        (s.a_prime, back.a_prime),
        (s.b, back.b),
        (s.b_prime, back.b_prime),
    ] {
        assert!((x.vector() - y.vector()).amax() < 1e-15);
    }
}

#[test]
fn maximize_recovers_tsirelson_and_is_deterministic() {
    let opts = MaximizeOptions {
        seed: 7,
        ..MaximizeOptions::default()
    };
    let f = FrameDescriptor::new(1.0, 2.0)
        .unwrap()
        .with_directions(DirectionConvention::Verbatim);
    let st = seen(&singlet(0.3), &f);
    let (setup, s) = chsh_maximize(&st, &f, &opts).unwrap();
    assert!((TSIRELSON - 1e-6..=TSIRELSON + 1e-9).contains(&s), "{s}");
    assert!((chsh(&st, &setup, &f).unwrap() - s).abs() < 1e-12);
    let (setup2, s2) = chsh_maximize(&st, &f, &opts).unwrap();
    assert_eq!(s, s2);
    assert_eq!(setup, setup2);
}

#[test]
fn maximize_product_spins_stay_local() {
    let opts = MaximizeOptions::default();
    for (eta, xi) in [(0.0, 0.0), (1.0, 1.0), (2.0, 0.5)] {
        let f = FrameDescriptor::new(eta, xi).unwrap();
        let st = seen(
            &Scenario::new(0.5, SpinFamily::up_up(), 0.0).initial_state(),
            &f,
        );
        let (_, s) = chsh_maximize(&st, &f, &opts).unwrap();
        assert!(s <= 2.0 + 1e-6, "{s}");
        assert!(s >= 2.0 - 1e-6, "{s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fast_correlation_matches_full_operator(
        alpha in -3.2..3.2f64,
        family in arb_family(),
        eta in 0.0..3.0f64,
        xi in 0.0..3.0f64,
        a in arb_direction(),
        b in arb_direction(),
    ) {
        let f = FrameDescriptor::new(eta, xi).unwrap().with_directions(DirectionConvention::Verbatim);
        let st = seen(&Scenario::new(alpha, family, 0.0).initial_state(), &f);
        let momenta = f.branch_momenta();
        let oa = joint_observable(&a, &momenta, Side::Alice).unwrap().embed();
        let ob = joint_observable(&b, &momenta, Side::Bob).unwrap().embed();
        let full = st.expectation(&(oa * ob)).unwrap();
        let fast = correlation(&st, &a, &b, &f).unwrap();
        prop_assert!((full.re - fast).abs() < 1e-12);
        prop_assert!(full.im.abs() < 1e-12);
    }

    #[test]
    fn two_pauli_lubanski_forms_agree(
        a in arb_direction(),
        eta in 0.0..4.0f64,
        axis in arb_direction(),
        mass in 0.1..5.0f64,
    ) {
        let p = FourVector::momentum(mass, Rapidity::new(eta).unwrap(), axis.vector()).unwrap();
        let v = pauli_lubanski_direction(&a, &p).unwrap();
        let w = rest_frame_direction(&a.lift(), &p).unwrap();
        prop_assert!((v.vector() - w.vector()).amax() < 1e-10);
    }

    #[test]
    fn correlations_are_frame_independent(
        alpha in -3.2..3.2f64,
        family in arb_family(),
        eta in 0.0..3.0f64,
        xi in 0.0..3.0f64,
        a in arb_direction(),
        b in arb_direction(),
    ) {
        let st = Scenario::new(alpha, family, 0.0).initial_state();
        let source = FrameDescriptor::new(eta, 0.0).unwrap();
        let moving = FrameDescriptor::new(eta, xi).unwrap();
        let e = correlation(&st, &a, &b, &source).unwrap();
        let e2 = correlation(&seen(&st, &moving), &a, &b, &moving).unwrap();
        prop_assert!((e - e2).abs() < 1e-10);
    }

    #[test]
    fn tsirelson_ceiling(
        alpha in -3.2..3.2f64,
        family in arb_family(),
        eta in 0.0..3.0f64,
        xi in 0.0..3.0f64,
        verbatim in any::<bool>(),
        angles in proptest::array::uniform8(-7.0..7.0f64),
    ) {
        let conv = if verbatim { DirectionConvention::Verbatim } else { DirectionConvention::Transformed };
        let f = FrameDescriptor::new(eta, xi).unwrap().with_directions(conv);
        let st = seen(&Scenario::new(alpha, family, 0.0).initial_state(), &f);
        let s = chsh(&st, &MeasurementSetup::from_angles(&angles), &f).unwrap();
        prop_assert!(s <= TSIRELSON + 1e-9);
        prop_assert!(s >= 0.0);
    }
}
