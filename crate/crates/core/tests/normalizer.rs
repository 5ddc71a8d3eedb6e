use finprop_core::graph::GraphTerm;
use finprop_core::normal::{compose_weighted, normalize, normalize_with, MSElement, Strategy};
use finprop_core::oracle::band_normal_form;
use finprop_core::random::{random_s_term, random_weighted, TermShape};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_terms_agree_with_band_tracing_and_shuffled_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..500 {
        let g = random_s_term(&mut rng, &TermShape::default());
        let expected = band_normal_form(&g).unwrap();
        let got = normalize(&g).unwrap_or_else(|e| panic!("case {case}: {e}\n{g}"));
        assert_eq!(got, expected, "case {case}: {g}");
        for seed in 0..2 {
            let (shuffled, _) = normalize_with(&g, Strategy::Shuffled { seed: case * 2 + seed }).unwrap();
            assert_eq!(shuffled, expected, "case {case} seed {seed}: {g}");
        }
    }
}

#[test]
fn rectangle_refinement_matches_rewriting() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..300 {
        let (n, k, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let top = random_weighted(&mut rng, n, k, 3);
        let bottom = random_weighted(&mut rng, k, m, 3);
        let glued = GraphTerm::vertical_compose(&top.to_graph(), &bottom.to_graph()).unwrap();
        let expected = normalize(&glued).unwrap();
        let got = compose_weighted(&MSElement::Surjection(top.clone()), &MSElement::Surjection(bottom.clone())).unwrap();
        assert_eq!(got, expected, "case {case}: {top:?} then {bottom:?}");
        assert_eq!(band_normal_form(&glued).unwrap(), expected, "case {case}");
    }
}
