use ladr::gadgets::{
    assignment_to_hitting_set, build_gadget, build_gadget_with, expected_point_count, first_span_overlap,
    hitting_set_to_assignment, random_five_occurrence, validate_formula, Assignment, Formula,
};
use ladr::hitting::is_separating;
use ladr::scalar::ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

/// A five-occurrence formula together with an assignment that satisfies it.
fn satisfiable(n: usize, seed: u64) -> (Formula, Assignment) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let base = random_five_occurrence(n, &mut rng).unwrap();
    let assignment = Assignment::new((0..n).map(|_| rng.gen()).collect());
    let raw: Vec<Vec<i64>> = base
        .clauses
        .iter()
        .map(|clause| {
            let mut lits: Vec<i64> = clause.iter().map(|l| l.to_dimacs()).collect();
            if !clause.iter().any(|l| l.is_satisfied(&assignment)) {
                lits[2] = -lits[2];
            }
            lits
        })
        .collect();
    (validate_formula(n, &raw, false).unwrap(), assignment)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn point_count_matches_closed_form(n in (1usize..4).prop_map(|k| 3 * k), seed in any::<u64>()) {
        let f = random_five_occurrence(n, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let g = build_gadget(&f);
        prop_assert_eq!(g.points.len(), expected_point_count(n, f.m()));
        prop_assert_eq!(g.k, 5 * n + 8 * f.m() - 4);
    }

    #[test]
    fn satisfying_assignment_round_trips(n in (1usize..3).prop_map(|k| 3 * k), seed in any::<u64>()) {
        let (f, a) = satisfiable(n, seed);
        prop_assert!(f.is_satisfied_by(&a));
        let g = build_gadget(&f);
        let lines = assignment_to_hitting_set(&g, &a).unwrap();
        prop_assert_eq!(lines.len(), g.k);
        prop_assert!(is_separating(&lines, &g.points).unwrap());
        prop_assert_eq!(hitting_set_to_assignment(&g, &lines).unwrap(), a);
    }

    #[test]
    fn spans_disjoint_over_epsilon_range(seed in any::<u64>(), scale in 10i64..=1000) {
        let f = random_five_occurrence(6, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let eps = ratio(1, scale * f.m() as i64);
        let g = build_gadget_with(&f, &eps);
        prop_assert_eq!(first_span_overlap(&g), None);
        let (sat, a) = satisfiable(6, seed);
        let g = build_gadget_with(&sat, &eps);
        let lines = assignment_to_hitting_set(&g, &a).unwrap();
        prop_assert!(is_separating(&lines, &g.points).unwrap());
    }
}
