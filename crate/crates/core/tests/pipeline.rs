use nakajima_core::dual_cone::elimination_plan_from;
use nakajima_core::oracle::{
    full_report, hilbert_brute, parametric_vanishing, random_admissible,
    semigroup_generation_check, BoundStrategy, HilbertOutcome, Level, Outcome,
};
use nakajima_core::{
    basic_cones, dual_generators, elimination_plan, full_presentation, is_admissible, render,
    Error, Format, FreeParamMatrix, InputDocument,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sample(seed: u64, d: usize, lo: i64, hi: i64) -> FreeParamMatrix {
    random_admissible(&mut ChaCha8Rng::seed_from_u64(seed), d, lo, hi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minimal_count_matches_hilbert(seed in any::<u64>(), d in 2usize..=6) {
        let m = sample(seed, d, -3, 3);
        let p = full_presentation(&m).unwrap();
        let plan = elimination_plan(&m);
        prop_assert_eq!(p.generators.len(), d - 1);
        prop_assert_eq!(p.minimal_generators().unwrap().len(), plan.hilbert.len() - d);
        prop_assert!(p.generators.iter().all(|g| g.has_disjoint_supports()));
        prop_assert_eq!(parametric_vanishing(&m, &p, 3, seed), Outcome::Pass);
    }

    #[test]
    fn cones_are_unimodular(seed in any::<u64>(), d in 2usize..=6) {
        let m = sample(seed, d, -3, 3);
        prop_assert_eq!(basic_cones(&m).unwrap().len(), 1 << (d - 1));
    }

    #[test]
    fn brute_force_ignores_subset_choice(seed in any::<u64>(), d in 2usize..=4) {
        let m = sample(seed, d, -2, 3);
        let a = hilbert_brute(&m, BoundStrategy::Subset(0)).unwrap();
        let b = hilbert_brute(&m, BoundStrategy::default()).unwrap();
        if let (HilbertOutcome::Basis(_), HilbertOutcome::Basis(_)) = (&a, &b) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn generators_generate(seed in any::<u64>(), d in 2usize..=3) {
        let m = sample(seed, d, -2, 3);
        let gens = dual_generators(&m).gens;
        let outcome = semigroup_generation_check(&m, &gens, None);
        prop_assert!(!outcome.is_fail(), "{outcome:?}");
    }

    #[test]
    fn document_round_trip(seed in any::<u64>(), d in 2usize..=7) {
        let m = sample(seed, d, -3, 3);
        let doc = InputDocument::from_json(&m.to_document().to_json()).unwrap();
        prop_assert_eq!(doc.into_params().unwrap(), m);
    }
}

#[test]
fn printed_range_breaks_count_identity() {
    // With m_1 = e_1 only the full row range keeps #Hilb - d binomials.
    let m = FreeParamMatrix::from_i64_rows(&[vec![1], vec![0, 1]]).unwrap();
    let p = full_presentation(&m).unwrap();
    assert_eq!(p.minimal_generators().unwrap().len(), 0);
    assert_eq!(elimination_plan_from(&m, 2).hilbert.len() - 3, 1);
}

#[test]
fn huge_entries_survive_json() {
    let text = r#"{"d":3,"rows":[[123456789012345678901234567890],[1,0]]}"#;
    let m = InputDocument::from_json(text)
        .unwrap()
        .into_params()
        .unwrap();
    assert!(is_admissible(&m).is_admissible());
    let p = full_presentation(&m).unwrap();
    assert_eq!(
        render(&p, Format::Text, false),
        "z1^123456789012345678901234567890 - z2*z4\nz1 - z3*z5"
    );
    assert_eq!(m.to_document().to_json(), text);
}

#[test]
fn fractions_are_rejected() {
    assert!(InputDocument::from_json(r#"{"d":2,"rows":[[1.5]]}"#).is_err());
    assert!(InputDocument::from_json(r#"{"d":2,"rows":[[1]],"extra":0}"#).is_err());
}

#[test]
fn inadmissible_input_is_refused() {
    let m = FreeParamMatrix::from_i64_rows(&[vec![1], vec![0, -1]]).unwrap();
    match full_presentation(&m) {
        Err(Error::Inadmissible { level, .. }) => assert_eq!(level, 3),
        other => panic!("expected inadmissible, got {other:?}"),
    }
}

#[test]
fn random_reports_pass() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 0..12 {
        let m = random_admissible(&mut rng, 2 + n % 4, -2, 3);
        let r = full_report(&m.to_document(), Level::Exhaustive, n as u64);
        assert!(r.all_passed(), "{}", r.to_json());
    }
}
