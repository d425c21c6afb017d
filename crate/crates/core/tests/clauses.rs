use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use synthprove_core::oracle::{theta_subsumes_exhaustive, Vocabulary};
use synthprove_core::subsume::is_variant;
use synthprove_core::{
    clause_features, order_subsumes, problem_features, theta_subsumes, theta_subsumes_with, Clause,
    ClauseOrigin, Inclusion, Term, Var, INPUT_DIM,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Same literals with the variables permuted and shifted, listed in a shuffled order.
fn scrambled(c: &Clause, seed: u64) -> Clause {
    let mut r = rng(seed);
    let mut perm: Vec<u32> = (0..8).collect();
    perm.shuffle(&mut r);
    let renamed = c.map_vars(&mut |v| Term::Var(Var(perm[v.0 as usize % 8] + 100 * (v.0 / 8 + 1))));
    let mut lits = renamed.literals().to_vec();
    lits.shuffle(&mut r);
    Clause::new(lits)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 512, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn structure_is_invariant_under_renaming_and_reordering(seed in any::<u64>()) {
        let v = Vocabulary::with_functions(2);
        let c = v.random_clause(&mut rng(seed), 0, 4, 3, 2);
        let d = scrambled(&c, seed ^ 1);
        prop_assert_eq!(c.weight(), d.weight());
        prop_assert_eq!(c.is_tautology(), d.is_tautology());
        prop_assert_eq!(clause_features(&c), clause_features(&d));
        prop_assert_eq!(c.normalized().weight(), d.normalized().weight());
        prop_assert!(is_variant(&c, &d));
        let init = [c.clone()];
        prop_assert_eq!(
            problem_features(&c, ClauseOrigin::default(), &init).unwrap(),
            problem_features(&d, ClauseOrigin::default(), &init).unwrap()
        );
    }

    #[test]
    fn features_have_fixed_length_and_consistent_aggregates(seed in any::<u64>(), birth in 0u32..1000, premises in 0u8..3) {
        let v = Vocabulary::with_functions(2);
        let mut r = rng(seed);
        let c = v.random_clause(&mut r, 0, 5, 3, 3);
        let initial: Vec<Clause> = (0..1 + seed % 6).map(|_| v.random_clause(&mut r, 0, 4, 3, 2)).collect();
        let f = problem_features(&c, ClauseOrigin { birth_step: birth, premise_count: premises }, &initial).unwrap();
        prop_assert_eq!(f.0.len(), INPUT_DIM);
        for k in 0..7 {
            prop_assert!(f.0[28 + k] <= f.0[14 + k] + 1e-12 && f.0[14 + k] <= f.0[21 + k] + 1e-12);
        }
        let own = clause_features(&c);
        prop_assert!(own.total_variables() >= own.distinct_variables());
        prop_assert_eq!(&f.0[35..], &[birth as f64, premises as f64, initial.len() as f64][..]);
    }

    #[test]
    fn rename_apart_avoids_reserved_and_keeps_shape(seed in any::<u64>()) {
        let v = Vocabulary::with_functions(1);
        let mut r = rng(seed);
        let c = v.random_clause(&mut r, 1, 4, 4, 2);
        let reserved: BTreeSet<Var> = c.variables().0;
        let d = c.rename_apart(&reserved);
        prop_assert!(d.variables().0.is_disjoint(&reserved));
        prop_assert!(is_variant(&c, &d));
        prop_assert_eq!(c.weight(), d.weight());
    }

    #[test]
    fn subsumption_agrees_with_exhaustive_search(seed in any::<u64>()) {
        let v = Vocabulary::function_free(2);
        let mut r = rng(seed);
        let c1 = v.random_clause(&mut r, 0, 3, 2, 0);
        let c2 = v.random_clause(&mut r, 0, 3, 2, 0).shift_vars(2);
        prop_assert_eq!(theta_subsumes(&c1, &c2), theta_subsumes_exhaustive(&c1, &c2));
    }

    #[test]
    fn subsumption_with_functions_agrees_with_exhaustive_search(seed in any::<u64>()) {
        let v = Vocabulary::with_functions(1);
        let mut r = rng(seed);
        let c1 = v.random_clause(&mut r, 0, 3, 2, 1);
        let c2 = v.random_clause(&mut r, 0, 3, 2, 2);
        prop_assert_eq!(theta_subsumes(&c1, &c2), theta_subsumes_exhaustive(&c1, &c2));
    }

    #[test]
    fn subsuming_an_instance_always_holds(seed in any::<u64>()) {
        let v = Vocabulary::with_functions(2);
        let mut r = rng(seed);
        let c = v.random_clause(&mut r, 0, 3, 3, 1);
        let images: Vec<Term> = (0..3).map(|_| v.random_term(&mut r, 2, 1)).collect();
        let instance = c.map_vars(&mut |x| images[x.0 as usize].clone());
        let extra = v.random_clause(&mut r, 0, 2, 2, 1);
        let bigger = Clause::new(instance.literals().iter().chain(extra.literals()).cloned().collect());
        prop_assert!(theta_subsumes(&c, &instance));
        prop_assert!(theta_subsumes(&c, &bigger));
    }

    #[test]
    fn subsumption_is_a_preorder(seed in any::<u64>()) {
        let v = Vocabulary::function_free(2);
        let mut r = rng(seed);
        let cs: Vec<Clause> = (0..3).map(|_| v.random_clause(&mut r, 0, 2, 2, 0)).collect();
        prop_assert!(theta_subsumes(&cs[0], &cs[0]));
        if theta_subsumes(&cs[0], &cs[1]) && theta_subsumes(&cs[1], &cs[2]) {
            prop_assert!(theta_subsumes(&cs[0], &cs[2]));
        }
        if order_subsumes(&cs[0], &cs[1]) {
            prop_assert!(theta_subsumes(&cs[0], &cs[1]) && cs[0].len() <= cs[1].len());
        }
        if theta_subsumes_with(&cs[0], &cs[1], Inclusion::Multiset) {
            prop_assert!(theta_subsumes(&cs[0], &cs[1]));
        }
    }
}
