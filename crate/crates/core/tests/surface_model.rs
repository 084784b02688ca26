use pants_core::surface::{
    build_pants_graph, curve_length, fn_to_group, FNCoordinates, GraphShape,
};
use pants_core::{Tolerances, Word};
use proptest::prelude::*;

fn group(g: u32, shape: GraphShape, lengths: Vec<f64>, twists: Vec<f64>) -> pants_core::surface::FuchsianGroup {
    let pg = build_pants_graph(g, shape).unwrap();
    fn_to_group(&pg, &FNCoordinates::new(lengths, twists).unwrap(), &Tolerances::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn genus_two_edge_lengths_round_trip(
        lengths in proptest::collection::vec(0.5f64..5.0, 3),
        twists in proptest::collection::vec(-3.0f64..3.0, 3),
        ring in any::<bool>(),
    ) {
        let shape = if ring { GraphShape::Ring } else { GraphShape::Linear };
        let grp = group(2, shape, lengths.clone(), twists);
        prop_assert!(grp.relation_residual <= 1e-8);
        for (w, l) in grp.edge_words.iter().zip(&lengths) {
            prop_assert!((curve_length(&grp, w).unwrap() - l).abs() < 1e-6);
        }
    }

    #[test]
    fn genus_three_edge_lengths_round_trip(
        lengths in proptest::collection::vec(1.0f64..4.5, 6),
        twists in proptest::collection::vec(-4.0f64..4.0, 6),
        ring in any::<bool>(),
    ) {
        let shape = if ring { GraphShape::Ring } else { GraphShape::Linear };
        let grp = group(3, shape, lengths.clone(), twists);
        prop_assert!(grp.relation_residual <= 1e-8);
        for (w, l) in grp.edge_words.iter().zip(&lengths) {
            prop_assert!((curve_length(&grp, w).unwrap() - l).abs() < 1e-6);
        }
    }

    #[test]
    fn length_is_a_class_function(letters in proptest::collection::vec(prop_oneof![1i32..=4, -4i32..=-1], 1..8), k in 0usize..8) {
        let grp = group(2, GraphShape::Ring, vec![2.0, 2.5, 3.0], vec![0.4, 0.0, 1.0]);
        let w = Word::new(letters);
        prop_assume!(!w.cyclically_reduced().is_empty());
        if let Ok(l) = curve_length(&grp, &w) {
            let rot = w.cyclically_reduced().rotated(k);
            prop_assert!((curve_length(&grp, &rot).unwrap() - l).abs() < 1e-10 * l.max(1.0));
            prop_assert!((curve_length(&grp, &w.inverse()).unwrap() - l).abs() < 1e-10 * l.max(1.0));
            let c = Word::new(vec![3, -1]);
            let conj = c.concat(&w).concat(&c.inverse());
            prop_assert!((curve_length(&grp, &conj).unwrap() - l).abs() < 1e-9 * l.max(1.0));
        }
    }
}

#[test]
fn full_twist_preserves_edge_lengths() {
    let lengths = vec![2.2, 3.1, 2.7];
    let base = group(2, GraphShape::Linear, lengths.clone(), vec![0.3, 0.5, 0.1]);
    let twisted = group(2, GraphShape::Linear, lengths.clone(), vec![0.3 + 2.2, 0.5, 0.1 + 2.7]);
    for (w, l) in twisted.edge_words.iter().zip(&lengths) {
        assert!((curve_length(&twisted, w).unwrap() - l).abs() < 1e-8);
    }
    assert_eq!(base.edge_words.len(), twisted.edge_words.len());
}

#[test]
fn generators_are_hyperbolic() {
    let grp = group(3, GraphShape::Linear, vec![3.0; 6], vec![0.0; 6]);
    for g in &grp.generators {
        assert!(g.translation_length().is_ok());
    }
}

#[test]
fn uniform_three_lengths() {
    let grp = group(2, GraphShape::Linear, vec![3.0; 3], vec![0.0; 3]);
    for w in &grp.edge_words {
        let l = curve_length(&grp, w).unwrap();
        assert!((l - 3.0).abs() < 1e-6);
    }
}
