use hbsa_elements::{
    apply_map, bs, bs_imbalanced, delay, fbs, fs, fs_leaky, fs_on_x1, hwp, stage2_map, ui,
    ui_as_printed, DelayKind, Element, PhotonMap, SinglePhotonMap, Slot,
};
use hbsa_state::{Arm, Complex64, DelayTag, Label, Pol, TwoPhotonState, XTag};
use proptest::prelude::*;

fn delays() -> Vec<DelayTag> {
    vec![DelayTag::ZERO, DelayTag::T0, DelayTag::T1, DelayTag::T0_T1]
}

fn catalogue() -> Vec<Element> {
    let mut v = vec![
        hwp(22.5),
        hwp(0.0),
        hwp(13.7),
        fbs(),
        fs(),
        fs_on_x1(),
        stage2_map(),
        bs(),
        delay(DelayKind::T0),
        delay(DelayKind::T1),
        fs_leaky(Some(XTag::X1), 0.3).unwrap(),
        fs_leaky(None, 1.0).unwrap(),
        bs_imbalanced(0.2).unwrap(),
        bs_imbalanced(-0.45).unwrap(),
        Element::Stage2 {
            hwp_angle_deg: 24.0,
        },
    ];
    for (m, n) in [(Arm::A1, Arm::B2), (Arm::B1, Arm::A2), (Arm::A2, Arm::A1)] {
        v.push(ui(m, n).unwrap());
        v.push(ui_as_printed(m, n).unwrap());
    }
    v
}

/// Input delays an element is tested on. The as-printed UI only keeps columns
/// orthogonal when every input carries the same delay.
fn input_delays(e: &Element) -> Vec<DelayTag> {
    match e {
        Element::UiAsPrinted { .. } => vec![DelayTag::ZERO],
        _ => delays(),
    }
}

fn domain(e: &Element) -> Vec<Label> {
    SinglePhotonMap::tabulate_domain(e, &Label::enumerate(&input_delays(e)))
        .domain()
        .copied()
        .collect()
}

#[test]
fn every_element_is_an_isometry_on_its_domain() {
    for e in catalogue() {
        let t = SinglePhotonMap::tabulate_domain(&e, &Label::enumerate(&input_delays(&e)));
        assert!(!t.columns.is_empty(), "{e}");
        assert!(t.is_isometry(1e-12), "{e}: defect {}", t.isometry_defect());
    }
}

#[test]
fn as_printed_ui_collides_across_input_delays() {
    let e = ui_as_printed(Arm::A1, Arm::B2).unwrap();
    let t = SinglePhotonMap::tabulate_domain(&e, &Label::enumerate(&delays()));
    assert!(t.isometry_defect() > 0.99);
}

#[test]
fn involutions() {
    let labels = Label::enumerate(&delays());
    for e in [hwp(22.5), fs(), bs()] {
        let t = SinglePhotonMap::tabulate(&e, &labels).unwrap();
        let twice = t.then(&e).unwrap();
        assert!(twice.distance_from_identity() < 1e-12, "{e}");
    }
}

/// Rank of the 4x4 (pol, arm) block of a UI with delays erased.
fn erased_rank(e: &Element, m: Arm, n: Arm) -> usize {
    let basis = [(m, Pol::H), (m, Pol::V), (n, Pol::H), (n, Pol::V)];
    let mut rows: Vec<[f64; 4]> = basis
        .iter()
        .map(|&(arm, pol)| {
            let col = e
                .column(&Label::new(arm, pol, hbsa_state::Freq::W2).with_xtag(XTag::X1))
                .unwrap();
            let mut r = [0.0; 4];
            for (l, c) in col {
                let i = basis.iter().position(|&b| b == (l.arm, l.pol)).unwrap();
                r[i] += c.re;
            }
            r
        })
        .collect();
    let mut rank = 0;
    for c in 0..4 {
        let Some(p) = (rank..4).find(|&r| rows[r][c].abs() > 1e-12) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank {
                let f = row[c] / pivot[c];
                for (x, p) in row.iter_mut().zip(pivot) {
                    *x -= f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn ui_delay_erased_rank() {
    let (m, n) = (Arm::A1, Arm::B2);
    assert_eq!(erased_rank(&ui(m, n).unwrap(), m, n), 4);
    assert_eq!(erased_rank(&ui_as_printed(m, n).unwrap(), m, n), 3);
}

#[test]
fn zero_noise_elements_equal_ideal() {
    let labels = Label::enumerate(&delays());
    let pairs = [
        (fs_leaky(Some(XTag::X1), 0.0).unwrap(), fs_on_x1()),
        (bs_imbalanced(0.0).unwrap(), bs()),
    ];
    for (noisy, ideal) in pairs {
        let a = SinglePhotonMap::tabulate_domain(&noisy, &labels);
        let b = SinglePhotonMap::tabulate_domain(&ideal, &labels);
        assert!(a.distance(&b) <= 1e-15);
    }
}

fn random_state(dom: &[Label], terms: &[(usize, usize, f64, f64)]) -> Option<TwoPhotonState> {
    let s = TwoPhotonState::from_terms(terms.iter().map(|&(i, j, re, im)| {
        (
            (dom[i % dom.len()], dom[j % dom.len()]),
            Complex64::new(re, im),
        )
    }));
    s.normalize().ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lifted_elements_preserve_norm(
        terms in prop::collection::vec((0usize..1000, 0usize..1000, -1.0f64..1.0, -1.0f64..1.0), 1..8),
        slot in prop_oneof![Just(Slot::A), Just(Slot::B), Just(Slot::Both)],
    ) {
        for e in catalogue() {
            let dom = domain(&e);
            let Some(s) = random_state(&dom, &terms) else { continue };
            let out = apply_map(&e, slot, &s).unwrap();
            prop_assert!((out.norm() - 1.0).abs() < 1e-12, "{} on {}: {}", e, slot, out.norm());
        }
    }

    #[test]
    fn lifting_is_linear(
        t1 in prop::collection::vec((0usize..1000, 0usize..1000, -1.0f64..1.0, -1.0f64..1.0), 1..5),
        t2 in prop::collection::vec((0usize..1000, 0usize..1000, -1.0f64..1.0, -1.0f64..1.0), 1..5),
        alpha in -2.0f64..2.0,
        beta in -2.0f64..2.0,
    ) {
        let e = ui(Arm::A1, Arm::B2).unwrap();
        let dom = domain(&e);
        let (Some(s1), Some(s2)) = (random_state(&dom, &t1), random_state(&dom, &t2)) else {
            return Ok(());
        };
        let a = Complex64::new(alpha, 0.3);
        let b = Complex64::new(beta, -0.7);
        let lhs = apply_map(&e, Slot::Both, &s1.scaled(a).plus(&s2.scaled(b))).unwrap();
        let rhs = apply_map(&e, Slot::Both, &s1).unwrap().scaled(a)
            .plus(&apply_map(&e, Slot::Both, &s2).unwrap().scaled(b));
        prop_assert!(lhs.distance(&rhs) < 1e-12);
    }
}
