use bellclone_core::dense::linalg::{hermitian_eigenvalues, max_abs_diff, trace_distance};
use bellclone_core::protocols::cloning::clone_pair_mixture;
use bellclone_core::protocols::ops::{inverse_of, run_dense, run_symbolic, LoccOp};
use bellclone_core::protocols::runner::agreement;
use bellclone_core::{BellEnsemble, BellLabel, BellString, Cut, Party};
use proptest::prelude::*;

fn label() -> impl Strategy<Value = BellLabel> {
    (0usize..4).prop_map(BellLabel::from_bits)
}

/// Ensembles on `n` pairs with up to four strings and positive weights.
fn ensemble(n: usize) -> impl Strategy<Value = BellEnsemble> {
    prop::collection::vec((prop::collection::vec(label(), n), 1u32..100), 1..=4).prop_map(
        |entries| {
            let total: u32 = entries.iter().map(|(_, w)| w).sum();
            BellEnsemble::from_entries(
                entries
                    .into_iter()
                    .map(|(ls, w)| (BellString::new(ls).unwrap(), w as f64 / total as f64)),
            )
            .unwrap()
        },
    )
}

fn unitary_op(n: usize) -> impl Strategy<Value = LoccOp> {
    let side = prop_oneof![Just(Party::Alice), Just(Party::Bob)];
    prop_oneof![
        (0..n, 0..n)
            .prop_filter("distinct pairs", |(s, t)| s != t)
            .prop_map(|(source, target)| LoccOp::Bxor { source, target }),
        (0..n).prop_map(|pair| LoccOp::BilateralHadamard { pair }),
        (0..n).prop_map(|pair| LoccOp::BilateralPhase { pair }),
        (0..n, 1usize..4, side).prop_map(|(pair, pauli, side)| LoccOp::Pauli { pair, pauli, side }),
    ]
}

fn circuit() -> impl Strategy<Value = (BellEnsemble, Vec<LoccOp>)> {
    (2usize..=3).prop_flat_map(|n| (ensemble(n), prop::collection::vec(unitary_op(n), 0..8)))
}

fn sorted_weights(e: &BellEnsemble) -> Vec<f64> {
    let mut w: Vec<f64> = e.iter().map(|(_, p)| p).collect();
    w.sort_by(f64::total_cmp);
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symbolic_matches_dense_on_random_circuits((e, ops) in circuit()) {
        let symbolic = run_symbolic(&ops, &e).unwrap();
        let dense = run_dense(&ops, &e.to_dense().unwrap()).unwrap();
        prop_assert!(agreement(&symbolic, &dense).unwrap() < 1e-10);
    }

    #[test]
    fn unitary_ops_permute_strings((e, ops) in circuit()) {
        let out = run_symbolic(&ops, &e).unwrap();
        prop_assert_eq!(sorted_weights(&out), sorted_weights(&e));
    }

    #[test]
    fn inverse_circuit_round_trips((e, ops) in circuit()) {
        let out = run_symbolic(&ops, &e).unwrap();
        let back = run_symbolic(&inverse_of(&ops).unwrap(), &out).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn involutions(e in ensemble(2), s in 0usize..2) {
        let t = 1 - s;
        prop_assert_eq!(e.bxor(s, t).unwrap().bxor(s, t).unwrap(), e.clone());
        prop_assert_eq!(e.bilateral_hadamard(s).unwrap().bilateral_hadamard(s).unwrap(), e.clone());
        prop_assert_eq!(e.bilateral_phase(s).unwrap().bilateral_phase(s).unwrap(), e.clone());
        for pauli in 1..4 {
            let twice = e.one_sided_pauli(s, pauli, Party::Bob).unwrap().one_sided_pauli(s, pauli, Party::Bob).unwrap();
            prop_assert_eq!(twice, e.clone());
        }
    }

    #[test]
    fn alice_and_bob_paulis_agree_on_labels(e in ensemble(2), pair in 0usize..2, pauli in 1usize..4) {
        // σ_i ⊗ 1 and 1 ⊗ σ_i map each Bell state to the same one up to phase.
        prop_assert_eq!(
            e.one_sided_pauli(pair, pauli, Party::Alice).unwrap(),
            e.one_sided_pauli(pair, pauli, Party::Bob).unwrap()
        );
    }

    #[test]
    fn text_format_round_trips(e in (1usize..=4).prop_flat_map(ensemble)) {
        prop_assert_eq!(BellEnsemble::from_text(&e.to_text()).unwrap(), e);
    }

    #[test]
    fn dense_readout_round_trips(e in ensemble(2)) {
        let back = BellEnsemble::from_dense(&e.to_dense().unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&e) < 1e-12);
    }

    #[test]
    fn bell_diagonal_spectrum_is_the_weights(w in prop::array::uniform4(0u32..50)) {
        prop_assume!(w.iter().sum::<u32>() > 0);
        let total = w.iter().sum::<u32>() as f64;
        let p = w.map(|x| x as f64 / total);
        let rho = BellEnsemble::bell_diagonal(p).unwrap().to_dense().unwrap().density_matrix().unwrap();
        let mut expected = p.to_vec();
        expected.sort_by(f64::total_cmp);
        let values = hermitian_eigenvalues(&rho).unwrap();
        for (v, x) in values.iter().zip(&expected) {
            prop_assert!((v - x).abs() < 1e-12);
        }
    }

    #[test]
    fn ppt_iff_largest_weight_at_most_half(w in prop::array::uniform4(0u32..50)) {
        prop_assume!(w.iter().sum::<u32>() > 0);
        let total = w.iter().sum::<u32>() as f64;
        let p = w.map(|x| x as f64 / total);
        let d = BellEnsemble::bell_diagonal(p).unwrap().to_dense().unwrap();
        let ln = d.log_negativity(&Cut::alice_bob(d.labels()).unwrap()).unwrap();
        let max = p.iter().cloned().fold(0.0, f64::max);
        // Closed form for Bell-diagonal states: log₂(2 max p) when entangled.
        let expected = if max > 0.5 { (2.0 * max).log2() } else { 0.0 };
        prop_assert!((ln - expected).abs() < 1e-9, "{ln} vs {expected}");
    }

    #[test]
    fn nested_partial_traces_compose(e in ensemble(3), drop_first in 0usize..6, drop_second in 0usize..5) {
        let d = e.to_dense().unwrap();
        let keep1: Vec<usize> = (0..6).filter(|&q| q != drop_first).collect();
        let keep2: Vec<usize> = (0..5).filter(|&q| q != drop_second).collect();
        let nested = d.partial_trace(&keep1).unwrap().partial_trace(&keep2).unwrap();
        let direct: Vec<usize> = keep2.iter().map(|&i| keep1[i]).collect();
        let once = d.partial_trace(&direct).unwrap();
        let diff = max_abs_diff(&nested.density_matrix().unwrap(), &once.density_matrix().unwrap()).unwrap();
        prop_assert!(diff < 1e-14);
    }

    #[test]
    fn two_state_cloning_costs_n_minus_one(x in label(), y in label(), pick in any::<bool>(), n in 1usize..40) {
        prop_assume!(x != y);
        let input = if pick { x } else { y };
        let (out, ledger) = clone_pair_mixture(&input.into(), [x, y], n).unwrap();
        prop_assert_eq!(out.as_pure().unwrap(), &BellString::uniform(input, n).unwrap());
        prop_assert_eq!(ledger.ebits_consumed, (n - 1) as f64);
        prop_assert!(ledger.audit().is_ok());
    }

    #[test]
    fn cloning_is_linear_on_pair_mixtures(x in label(), y in label(), w in 1u32..99) {
        prop_assume!(x != y);
        let q = w as f64 / 100.0;
        let input = BellEnsemble::mix(&[(&x.into(), q), (&y.into(), 1.0 - q)]).unwrap();
        let (out, _) = clone_pair_mixture(&input, [x, y], 3).unwrap();
        prop_assert!((out.probability(&BellString::uniform(x, 3).unwrap()) - q).abs() < 1e-15);
        prop_assert!((out.probability(&BellString::uniform(y, 3).unwrap()) - (1.0 - q)).abs() < 1e-15);
    }
}

#[test]
fn bell_projectors_sum_to_identity() {
    for n in 1..=2 {
        let dim = 1usize << (2 * n);
        let uniform = BellEnsemble::from_entries((0..dim).map(|i| {
            let labels = (0..n)
                .map(|k| BellLabel::from_bits((i >> (2 * k)) & 3))
                .collect();
            (BellString::new(labels).unwrap(), 1.0 / dim as f64)
        }))
        .unwrap();
        let rho = uniform.to_dense().unwrap().density_matrix().unwrap();
        let identity = bellclone_core::dense::gates::identity(dim)
            / bellclone_core::dense::C64::new(dim as f64, 0.0);
        assert!(trace_distance(&rho, &identity).unwrap() < 1e-14);
    }
}
