use hbsa_circuit::{build_hbsa_circuit, run};
use hbsa_elements::SinglePhotonMap;
use hbsa_experiments::{
    confusion_matrix, grid, is_non_increasing, perturbed_circuit, sweep, NoiseParam, NoiseParams,
};
use hbsa_state::{make_hyper_bell, DelayTag, HyperBellIndex, Label};

fn assert_rows_normalized(p: &NoiseParams) {
    let m = confusion_matrix(p).unwrap();
    for i in 0..16 {
        assert!((m.row_sum(i) - 1.0).abs() < 1e-9, "{p:?} row {i}");
    }
}

#[test]
fn zero_noise_gives_identity() {
    let m = confusion_matrix(&NoiseParams::ideal()).unwrap();
    for i in 0..16 {
        for j in 0..16 {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((m.entries[i][j] - want).abs() < 1e-12);
        }
        assert_eq!(m.unclassified[i], 0.0);
    }
}

#[test]
fn zero_noise_steps_equal_ideal_operators() {
    let domain = Label::enumerate(&[DelayTag::ZERO, DelayTag::T0, DelayTag::T1, DelayTag::T0_T1]);
    let ideal = build_hbsa_circuit();
    let noisy = perturbed_circuit(&NoiseParams::ideal()).unwrap();
    for (a, b) in ideal.steps.iter().zip(&noisy.steps) {
        let ma = SinglePhotonMap::tabulate_domain(&a.op.element, &domain);
        let mb = SinglePhotonMap::tabulate_domain(&b.op.element, &domain);
        assert!(ma.distance(&mb) <= 1e-15, "{}", a.name);
    }
}

#[test]
fn perturbed_circuits_preserve_norm() {
    let cases = [
        NoiseParams {
            hwp_jitter: 3.0,
            fs_leakage: 0.2,
            bs_imbalance: -0.1,
        },
        NoiseParams {
            hwp_jitter: -7.5,
            fs_leakage: 1.0,
            bs_imbalance: 0.5,
        },
        NoiseParams {
            hwp_jitter: 0.1,
            fs_leakage: 0.6,
            bs_imbalance: -0.5,
        },
    ];
    for p in cases {
        let c = perturbed_circuit(&p).unwrap();
        for idx in HyperBellIndex::all() {
            let out = run(&c, &make_hyper_bell(idx)).unwrap();
            assert!((out.norm() - 1.0).abs() < 1e-12, "{p:?} {idx}");
        }
        assert_rows_normalized(&p);
    }
}

#[test]
fn jitter_degrades_monotonically() {
    let m = confusion_matrix(&NoiseParams::single(NoiseParam::HwpJitter, 1.0)).unwrap();
    assert!(m.min_diagonal() < 1.0);
    let rows = sweep(
        NoiseParam::HwpJitter,
        &grid(0.0, 5.0, 11).unwrap(),
        &NoiseParams::ideal(),
    )
    .unwrap();
    assert_eq!(rows.len(), 11);
    assert!(is_non_increasing(&rows, 1e-12));
    assert!(rows.last().unwrap().mean_diagonal < rows[0].mean_diagonal);
}

#[test]
fn unflipped_frequency_is_badly_degraded() {
    let m = confusion_matrix(&NoiseParams::single(NoiseParam::FsLeakage, 1.0)).unwrap();
    assert!(m.mean_diagonal() < 0.75, "{}", m.mean_diagonal());
    assert_rows_normalized(&NoiseParams::single(NoiseParam::FsLeakage, 1.0));
}

#[test]
fn small_noise_is_close_to_identity() {
    for param in NoiseParam::ALL {
        let m = confusion_matrix(&NoiseParams::single(param, 1e-6)).unwrap();
        assert!(m.min_diagonal() >= 1.0 - 1e-4, "{}", param.name());
    }
}

#[test]
fn sweep_exports_flat_table() {
    let rows = sweep(
        NoiseParam::BsImbalance,
        &grid(0.0, 0.5, 3).unwrap(),
        &NoiseParams::ideal(),
    )
    .unwrap();
    let csv = hbsa_experiments::sweep::to_csv(&rows).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "param-name,param-value,min-diagonal,mean-diagonal,unclassified-mass"
    );
    assert_eq!(lines.count(), 3);
}
