mod common;

use common::*;
use museum_pass::axioms::{audit, check_ivd, check_opd, opd_violation};
use museum_pass::enumerate::{problems, Domain, EnumerationConfig};
use museum_pass::lab::{
    bound_witness, decompose, impossibility_certificate, synthesize, tau_beta_bound, tu_shapley_oracle,
    AdditiveRuleTable, Synthesis,
};
use museum_pass::{Axiom, Base, Problem, Rational, Rule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid() -> Vec<Rational> {
    vec![Rational::zero(), r(1, 4), r(1, 2), r(3, 4), Rational::one()]
}

#[test]
fn oracle_matches_rule_on_every_small_reduced_problem() {
    for p in problems(&EnumerationConfig::new(4, 3, Domain::Reduced)) {
        assert_eq!(tu_shapley_oracle(&p).unwrap(), Rule::Shapley.allocate(&p).unwrap(), "{p}");
    }
}

#[test]
fn oracle_agrees_with_permutation_average() {
    for p in problems(&EnumerationConfig::new(3, 2, Domain::Enlarged)) {
        assert_eq!(tu_shapley_oracle(&p).unwrap(), permutation_shapley(&p), "{p}");
    }
}

#[test]
fn decompose_recovers_profiles() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let m = rng.gen_range(2..=4);
        let museums: Vec<u32> = (1..=m as u32).collect();
        let profile = random_profile(&mut rng, m);
        for (base, domain) in [(Base::Shapley, Domain::Reduced), (Base::EqualAttribution, Domain::Enlarged)] {
            let rule = Rule::BetaFamily { profile: profile.clone(), base };
            let table = AdditiveRuleTable::from_rule(&rule, &museums, &r(3, 2), domain).unwrap();
            let d = decompose(&table, base).unwrap();
            assert!(d.all_in_unit_interval());
            for b in d.patterns.iter().filter(|b| b.determined) {
                assert_eq!(&b.beta, profile.coefficient(1, &b.pattern), "{:?}", b.pattern);
            }
            // rebuilding from the recovered coefficients gives the same table
            let rebuilt = Rule::BetaFamily { profile: d.to_profile().unwrap(), base };
            assert_eq!(AdditiveRuleTable::from_rule(&rebuilt, &museums, &r(3, 2), domain).unwrap(), table);
        }
    }
}

#[test]
fn unit_interval_flag_matches_opd_on_single_holders() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let museums = [1, 2, 3];
    let price = Rational::one();
    let Synthesis::Family { constraints } = synthesize(&[Axiom::Ete], &museums, &price, Domain::Reduced).unwrap() else {
        panic!("ete alone leaves a family")
    };
    let mut outside = 0;
    for _ in 0..40 {
        let table = constraints
            .table_with(|lo, hi| {
                let k = rng.gen_range(0..=6);
                lo + &((hi - lo) * Rational::new(k, 6))
            })
            .unwrap();
        match decompose(&table, Base::Shapley) {
            Ok(d) => {
                for b in &d.patterns {
                    let single = Problem::new(
                        museums.to_vec(),
                        vec![1],
                        price.clone(),
                        vec![museums.iter().map(|i| b.pattern.contains(i)).collect()],
                    )
                    .unwrap();
                    let a = table.extend(&single).unwrap();
                    let failed = opd_violation(&single, &a, &Rational::one()).is_some();
                    assert_eq!(failed, !b.in_unit_interval, "{:?}", b.pattern);
                    outside += usize::from(failed);
                }
            }
            Err(e) => assert!(matches!(e, museum_pass::Error::OpdViolation { .. })),
        }
    }
    assert!(outside > 0, "sampling never left the unit interval");
}

#[test]
fn bound_is_monotone() {
    for n in 1..=5 {
        for w in grid().windows(2) {
            assert!(tau_beta_bound(&w[0], n).unwrap() <= tau_beta_bound(&w[1], n).unwrap());
        }
    }
    for tau in grid() {
        for n in 1..5 {
            assert!(tau_beta_bound(&tau, n + 1).unwrap() <= tau_beta_bound(&tau, n).unwrap());
        }
    }
}

#[test]
fn bound_witnesses_at_and_above_the_frontier() {
    for tau in grid().into_iter().filter(|t| *t < Rational::one()) {
        let bound = tau_beta_bound(&tau, 2).unwrap();
        for m in [2, 3] {
            for beta in [Rational::zero(), &bound / Rational::from_int(2), bound.clone()] {
                assert!(bound_witness(&tau, 2, m, &beta).unwrap().is_none(), "tau {tau}, beta {beta}");
            }
            let beta = &bound + r(1, 100);
            let w = bound_witness(&tau, 2, m, &beta).unwrap().expect("above the bound");
            assert!(w.gap.is_positive());
            let rule = Rule::ScalarConvex { beta, base: Base::Shapley };
            assert!(!check_opd(&rule, &w.problem, &tau).unwrap().passed());
        }
    }
}

#[test]
fn bound_holds_on_the_enumeration() {
    for tau in [r(1, 4), r(1, 2), r(3, 4)] {
        let beta = tau_beta_bound(&tau, 2).unwrap();
        let rule = Rule::ScalarConvex { beta, base: Base::Shapley };
        let cfg = EnumerationConfig::new(4, 2, Domain::Reduced);
        assert!(audit(&rule, &Axiom::TauOpd(tau), &cfg).unwrap().passed());
    }
}

#[test]
fn certificates_recheck() {
    for tau in grid() {
        let Some(c) = impossibility_certificate(&tau).unwrap() else {
            assert_eq!(tau, Rational::one());
            continue;
        };
        assert!(c.verify());
        assert_eq!(c.gap, Rational::one() - Rational::from_int(2) * &tau / (Rational::one() + &tau));
        let [p0, p1, p2] = c.problems.as_slice() else { panic!() };
        // uniform meets both equalities, so the inequalities are what fail
        assert!(check_ivd(&Rule::Uniform, p0, p1).unwrap().passed());
        assert!(check_ivd(&Rule::Uniform, p0, p2).unwrap().passed());
        assert!(!check_opd(&Rule::Uniform, p1, &tau).unwrap().passed());
        // the largest shares the inequalities allow still fall short of the revenue
        let cap = &tau / (Rational::one() + &tau);
        assert_eq!(&cap + &cap + &c.gap, p0.revenue());
        for rule in sample_rules().into_iter().filter(|r| !r.reduced_only()) {
            assert!(c.refute(&rule).unwrap().is_some(), "{rule}");
        }
    }
}

#[test]
fn synthesized_opd_tables_decompose_into_unit_interval() {
    for m in 2..=4u32 {
        let museums: Vec<u32> = (1..=m).collect();
        for (domain, base) in [(Domain::Reduced, Base::Shapley), (Domain::Enlarged, Base::EqualAttribution)] {
            let s = synthesize(&[Axiom::Ete, Axiom::Opd], &museums, &r(1, 2), domain).unwrap();
            let Synthesis::Family { constraints } = s else { panic!("{s:?}") };
            for table in [constraints.lower_table(), constraints.midpoint_table(), constraints.upper_table()] {
                let d = decompose(&table.unwrap(), base).unwrap();
                assert!(d.all_in_unit_interval());
                assert!(d.patterns.iter().all(|b| b.beta.in_unit_interval()));
            }
        }
    }
}
