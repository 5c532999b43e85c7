use hbsa_state::{
    equal_up_to_global_phase, make_hyper_bell, Complex64, DelayTag, HyperBellIndex, Label,
    ObservableState, TwoPhotonState,
};
use proptest::prelude::*;

fn state() -> impl Strategy<Value = TwoPhotonState> {
    let labels = Label::enumerate(&[DelayTag::ZERO, DelayTag::T0]);
    let n = labels.len();
    prop::collection::vec((0..n, 0..n, -1.0f64..1.0, -1.0f64..1.0), 1..12).prop_map(move |terms| {
        TwoPhotonState::from_terms(
            terms
                .into_iter()
                .map(|(i, j, re, im)| ((labels[i], labels[j]), Complex64::new(re, im))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normalize_gives_unit_norm(s in state()) {
        prop_assume!(s.norm() > 1e-6);
        prop_assert!((s.normalize().unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn swap_is_an_involution(s in state()) {
        prop_assert_eq!(s.swapped().swapped(), s.clone());
        prop_assert!((s.swapped().norm() - s.norm()).abs() < 1e-12);
    }

    #[test]
    fn inner_product_with_itself_is_norm_squared(s in state()) {
        let ip = s.inner(&s);
        prop_assert!(ip.im.abs() < 1e-12);
        prop_assert!((ip.re - s.norm().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn global_phase_is_ignored(s in state(), theta in 0.0f64..std::f64::consts::TAU) {
        prop_assume!(s.norm() > 1e-6);
        let s = s.normalize().unwrap();
        let t = s.scaled(Complex64::from_polar(1.0, theta));
        prop_assert!(equal_up_to_global_phase(&s, &t, 1e-10));
    }

    #[test]
    fn exchange_symmetrization_is_idempotent(s in state()) {
        let o = ObservableState::from_state(&s).symmetrized();
        let twice = o.symmetrized();
        for (k, c) in o.iter() {
            prop_assert!((twice.amplitude(k) - c).norm() < 1e-12);
        }
    }
}

#[test]
fn hyper_bell_states_are_orthonormal() {
    let all = HyperBellIndex::all();
    for (i, a) in all.iter().enumerate() {
        let sa = make_hyper_bell(*a);
        for (j, b) in all.iter().enumerate() {
            let ip = sa.inner(&make_hyper_bell(*b)).norm();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((ip - want).abs() < 1e-12, "{a} {b}");
        }
    }
}
