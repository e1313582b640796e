mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinstat::exact::{int, ratio, ExactMatrix, Scalar};
use spinstat::flavor::{diagonalize_flavor, kirchoff_check};
use spinstat::fock::{
    adjoint, hermitian_inertia, normal_order, normal_order_with, vacuum_expectation, ModeExpansion, OperatorWord,
};
use spinstat::su2::SpinLabel;
use spinstat::theory::{parse_theory, serialize_theory, FieldSpec, StatisticsChoice, TheorySpec};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| Scalar::new(ratio(a, b), ratio(c, d)))
}

fn antisymmetric(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |v| {
        let mut m = ExactMatrix::zeros(n, n);
        let mut it = v.into_iter();
        for r in 0..n {
            for c in r + 1..n {
                let x = it.next().unwrap();
                m.set(r, c, Scalar::from_int(x));
                m.set(c, r, Scalar::from_int(-x));
            }
        }
        m
    })
}

fn two_modes() -> impl Strategy<Value = common::TwoModes> {
    (any::<bool>(), prop::sample::select(vec![1i64, -1]), prop::sample::select(vec![1i64, -1]))
        .prop_map(|(fermionic, v1, v2)| common::TwoModes { fermionic, values: [v1, v2] })
}

fn word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 0..=7)
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn inertia_is_congruence_invariant(
        diag in prop::collection::vec(-1i64..=1, 1..=5),
        upper in prop::collection::vec((-3i64..=3, -3i64..=3), 10),
    ) {
        let n = diag.len();
        let d = ExactMatrix::diagonal(&diag.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>());
        let mut p = ExactMatrix::identity(n);
        let mut it = upper.into_iter();
        for r in 0..n {
            for c in r + 1..n {
                let (re, im) = it.next().unwrap();
                p.set(r, c, Scalar::gauss(re, im));
            }
        }
        let h = &(&p.adjoint() * &d) * &p;
        let s = hermitian_inertia(&h).unwrap();
        prop_assert_eq!(s.positives, diag.iter().filter(|&&x| x > 0).count());
        prop_assert_eq!(s.negatives, diag.iter().filter(|&&x| x < 0).count());
        prop_assert_eq!(s.zeros, diag.iter().filter(|&&x| x == 0).count());
    }

    #[test]
    fn normal_order_is_confluent(modes in two_modes(), w in word(), seed in any::<u64>()) {
        let table = modes.table();
        let word = OperatorWord::parse(&common::word_text(&w));
        let reference = normal_order(&word, &table).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut choose = |positions: &[usize]| rng.gen_range(0..positions.len());
        let other = normal_order_with(&word, &table, &mut choose).unwrap();
        prop_assert_eq!(reference, other);
    }

    #[test]
    fn vacuum_expectation_matches_oracle(modes in two_modes(), w in word()) {
        let got = vacuum_expectation(&OperatorWord::parse(&common::word_text(&w)), &modes.table()).unwrap();
        prop_assert_eq!(got, Scalar::from_int(common::oracle_vev(&common::realize(modes), &w)));
    }

    #[test]
    fn adjoint_conjugates_expectations(modes in two_modes(), w in word()) {
        let table = modes.table();
        let word = OperatorWord::parse(&common::word_text(&w)).scaled(&Scalar::gauss(2, 3));
        let lhs = vacuum_expectation(&adjoint(&word, &table).unwrap(), &table).unwrap();
        prop_assert_eq!(lhs, vacuum_expectation(&word, &table).unwrap().conj());
    }

    #[test]
    fn flavor_diagonalization_is_consistent(m in (2usize..=5).prop_flat_map(antisymmetric)) {
        prop_assume!(!m.is_zero());
        let d = diagonalize_flavor(&m).unwrap();
        let plus = d.eigenvalues.iter().filter(|e| e.sign > 0).count();
        let minus = d.eigenvalues.iter().filter(|e| e.sign < 0).count();
        prop_assert_eq!(plus, minus);
        prop_assert_eq!(d.eigenvalues.len(), m.rows());
        if let Some(e) = &d.exact {
            prop_assert!(e.verify(&m));
            prop_assert!(e.diagonal.is_diagonal());
        }
        if let Some(n) = &d.numeric {
            prop_assert!(n.residual < 1e-9);
        }
        prop_assert!(d.exact.is_some() || d.numeric.is_some());
    }

    #[test]
    fn kirchoff_ignores_labels(field in "[a-z]{1,6}", modes in prop::collection::btree_map("[a-z][0-9]?", 1i64..=9, 1..=4)) {
        let modes: Vec<(&str, _)> = modes.iter().map(|(l, w)| (l.as_str(), int(*w))).collect();
        let full = ModeExpansion::hermitian(&field, &modes);
        prop_assert!(kirchoff_check(&full).is_compliant());
        let mut half = full.clone();
        half.terms.remove(0);
        prop_assert!(!kirchoff_check(&half).is_compliant());
    }

    #[test]
    fn theory_text_round_trips(
        spins in prop::collection::vec((0u32..=8, 1usize..=2, 1usize..=2, 0usize..3), 1..=3),
    ) {
        let fields = spins
            .iter()
            .enumerate()
            .map(|(i, &(two_j, flavors, copies, stats))| {
                let choice = [StatisticsChoice::Auto, StatisticsChoice::Bose, StatisticsChoice::Fermi][stats];
                FieldSpec::new(format!("f{i}"), SpinLabel::from_two_j(two_j))
                    .with_flavors(flavors)
                    .with_copies(copies)
                    .with_statistics(choice)
            })
            .collect();
        let spec = TheorySpec::new("roundtrip", fields);
        let text = serialize_theory(&spec);
        prop_assert_eq!(parse_theory(&text).unwrap(), spec);
    }
}

#[test]
fn oracle_separates_tables() {
    // the oracle must notice a wrong sign on the second mode
    let plus = common::TwoModes { fermionic: true, values: [1, 1] };
    let minus = common::TwoModes { fermionic: true, values: [1, -1] };
    let w = [2usize, 3];
    let ops_plus = common::realize(plus);
    let ops_minus = common::realize(minus);
    assert_eq!(common::oracle_vev(&ops_plus, &w), 1);
    assert_eq!(common::oracle_vev(&ops_minus, &w), -1);
    let boson = common::realize(common::TwoModes { fermionic: false, values: [1, 1] });
    // a a a bdag bdag bdag |0> = 3! |0>
    assert_eq!(common::oracle_vev(&boson, &[0, 0, 0, 1, 1, 1]), 6);
    assert_eq!(vacuum_expectation(&OperatorWord::parse("a a a bdag bdag bdag"), &plus.table()).unwrap(), Scalar::zero());
}
