//! Values frozen from an independent numpy/mpmath computation.

use bellclone_core::claims::correlated_pauli_choi_closed_form;
use bellclone_core::dense::linalg::{hermitian_eigenvalues, max_abs_diff};
use bellclone_core::measures::{
    binary_entropy, ec_sigma1, ed_rho2n, ed_rho_m, ed_sigma1, ed_sigma_n, irreversibility_gap,
};
use bellclone_core::protocols::preparation::{prepare_rho_m, rho_m, smolin};
use bellclone_core::protocols::teleport::{smolin_channel, teleport_choi};
use bellclone_core::{BellEnsemble, BellLabel, BellString, Cut};

fn string(labels: &[usize]) -> BellString {
    BellString::new(
        labels
            .iter()
            .map(|&i| BellLabel::from_bits(i - 1))
            .collect(),
    )
    .unwrap()
}

/// Bilateral C-NOT on `(source, target)` labels, 1-based as B1..B4.
const BXOR_TABLE: [((usize, usize), (usize, usize)); 16] = [
    ((1, 1), (1, 1)),
    ((1, 2), (2, 2)),
    ((1, 3), (1, 3)),
    ((1, 4), (2, 4)),
    ((2, 1), (2, 1)),
    ((2, 2), (1, 2)),
    ((2, 3), (2, 3)),
    ((2, 4), (1, 4)),
    ((3, 1), (3, 3)),
    ((3, 2), (4, 4)),
    ((3, 3), (3, 1)),
    ((3, 4), (4, 2)),
    ((4, 1), (4, 3)),
    ((4, 2), (3, 4)),
    ((4, 3), (4, 1)),
    ((4, 4), (3, 2)),
];

#[test]
fn bxor_table() {
    for ((s, t), (s2, t2)) in BXOR_TABLE {
        let e = BellEnsemble::pure(string(&[s, t]));
        let out = e.bxor(0, 1).unwrap();
        assert_eq!(out.as_pure().unwrap(), &string(&[s2, t2]), "B{s} B{t}");
    }
}

fn alice_bob_ln(e: &BellEnsemble) -> f64 {
    let d = e.to_dense().unwrap();
    d.log_negativity(&Cut::alice_bob(d.labels()).unwrap())
        .unwrap()
}

#[test]
fn log_negativities() {
    let cases: [(BellEnsemble, f64); 6] = [
        (
            BellEnsemble::correlated([0.5, 0.5, 0.0, 0.0], 2).unwrap(),
            1.0,
        ),
        (smolin(), 0.0),
        (rho_m(3).unwrap(), 2.0),
        (rho_m(4).unwrap(), 2.0),
        (rho_m(5).unwrap(), 4.0),
        (
            BellEnsemble::correlated([0.5, 0.0, 0.5, 0.0], 2).unwrap(),
            1.0,
        ),
    ];
    for (e, expected) in cases {
        assert!((alice_bob_ln(&e) - expected).abs() < 1e-9, "{e}");
    }
}

#[test]
fn log_negativity_bounds_distillable_values() {
    for m in 2..=5 {
        assert!(alice_bob_ln(&rho_m(m).unwrap()) >= ed_rho_m(m).unwrap() - 1e-9);
    }
    let rho22 = BellEnsemble::correlated([0.5, 0.0, 0.5, 0.0], 2).unwrap();
    assert!(alice_bob_ln(&rho22) >= ed_rho2n(2).unwrap() - 1e-9);
}

#[test]
fn smolin_single_qubit_cuts() {
    let d = smolin().to_dense().unwrap();
    for q in 0..4 {
        let ln = d.log_negativity(&Cut::new([q], 4).unwrap()).unwrap();
        assert!((ln - 1.0).abs() < 1e-9, "qubit {q}: {ln}");
    }
}

#[test]
fn rho3_spectrum() {
    let rho = rho_m(3)
        .unwrap()
        .to_dense()
        .unwrap()
        .density_matrix()
        .unwrap();
    let values = hermitian_eigenvalues(&rho).unwrap();
    assert_eq!(values.len(), 64);
    for (i, v) in values.iter().enumerate() {
        let expected = if i >= 60 { 0.25 } else { 0.0 };
        assert!((v - expected).abs() < 1e-12);
    }
}

#[test]
fn bell_partial_transpose_minimum() {
    let d = BellEnsemble::single(BellLabel::B1).to_dense().unwrap();
    let pt = d
        .partial_transpose(&Cut::alice_bob(d.labels()).unwrap())
        .unwrap();
    let values = hermitian_eigenvalues(&pt).unwrap();
    assert!((values[0] + 0.5).abs() < 1e-15);
    assert!(values[1..].iter().all(|v| (v - 0.5).abs() < 1e-15));
}

#[test]
fn formula_constants() {
    const H2_QUARTER: f64 = 0.811_278_124_459_132_863_909_695_792_039_137_6;
    const EC_QUARTER: f64 = 0.354_578_902_665_269_884_199_912_180_174_616_7;
    const ED_QUARTER: f64 = 0.188_721_875_540_867_136_090_304_207_960_862_4;
    const EC_0999: f64 = 0.997_115_572_485_068_565_456_909_558_365_173_1;
    const ED_0999: f64 = 0.988_592_242_262_538_864_281_843_699_978_997_9;
    const GAP_0999: f64 = 0.008_523_330_222_529_701_175_065_858_386_175_2;
    assert!((binary_entropy(0.25).unwrap() - H2_QUARTER).abs() < 1e-15);
    assert!((ec_sigma1(0.25).unwrap() - EC_QUARTER).abs() < 1e-14);
    assert!((ed_sigma1(0.25).unwrap() - ED_QUARTER).abs() < 1e-14);
    assert!((ec_sigma1(0.999).unwrap() - EC_0999).abs() < 1e-13);
    assert!((ed_sigma1(0.999).unwrap() - ED_0999).abs() < 1e-13);
    for n in [1, 2, 7] {
        assert!((irreversibility_gap(0.999, n).unwrap() - GAP_0999).abs() < 1e-13);
    }
    assert!((ed_sigma_n(0.25, 5).unwrap() - (5.0 - H2_QUARTER)).abs() < 1e-14);
    assert!(irreversibility_gap(0.5, 3).is_err());
}

#[test]
fn teleport_choi_matches_closed_form() {
    let choi = teleport_choi(&smolin_channel().unwrap()).unwrap();
    let residual = max_abs_diff(&choi, &correlated_pauli_choi_closed_form()).unwrap();
    assert!(residual < 1e-12, "{residual:e}");
}

#[test]
fn preparation_matches_parity_rule_up_to_64() {
    for m in 2..=64 {
        let (e, ledger) = prepare_rho_m(m).unwrap();
        assert_eq!(e, rho_m(m).unwrap());
        assert_eq!(ledger.ebits_consumed, ed_rho_m(m).unwrap());
    }
}
