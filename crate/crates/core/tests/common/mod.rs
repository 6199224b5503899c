#![allow(dead_code)]

use std::collections::BTreeMap;

use itertools::Itertools;
use museum_pass::{Allocation, Base, BetaProfile, Label, MuseumSet, Problem, Rational, Rule};
use proptest::prelude::*;
use rand::Rng;

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// Shapley value as the average marginal contribution over all museum
/// orderings. Independent of the subset formula; exponential in m!.
pub fn permutation_shapley(p: &Problem) -> Allocation {
    let m = p.m();
    assert!(m <= 6, "permutation oracle is limited to 6 museums");
    let worth = |coalition: &[bool]| -> usize {
        p.entrance().iter().filter(|row| row.iter().zip(coalition).any(|(&v, &c)| v && c)).count()
    };
    let mut totals = vec![0usize; m];
    let mut orders = 0usize;
    for order in (0..m).permutations(m) {
        let mut coalition = vec![false; m];
        let mut before = 0;
        for i in order {
            coalition[i] = true;
            let after = worth(&coalition);
            totals[i] += after - before;
            before = after;
        }
        orders += 1;
    }
    Allocation::new(totals.into_iter().map(|t| Rational::new(t as i64, orders as i64) * p.price()).collect())
}

/// Rules exercised by sweeps that need a concrete list, with small fixed
/// parameters for the parameterized ones.
pub fn sample_rules() -> Vec<Rule> {
    let mut rules = Rule::named();
    for base in [Base::Shapley, Base::EqualAttribution] {
        rules.push(Rule::ScalarConvex { beta: r(1, 3), base });
        let profile = BetaProfile::constant(r(1, 5))
            .unwrap()
            .with_holder(2, r(3, 4))
            .unwrap()
            .with_pattern([1].into(), Rational::one())
            .unwrap();
        rules.push(Rule::BetaFamily { profile, base });
    }
    rules.push(Rule::REpsilon(r(1, 4)));
    rules.push(r3_rule());
    rules.push(r4_rule());
    rules
}

pub fn r3_rule() -> Rule {
    Rule::R3(BTreeMap::from([(1, Rational::zero()), (2, Rational::one())]))
}

pub fn r4_rule() -> Rule {
    Rule::R4(BTreeMap::from([(MuseumSet::from([1]), Rational::one())]))
}

/// A coefficient in [0, 1] with denominator at most 12.
pub fn random_unit(rng: &mut impl Rng) -> Rational {
    let q = rng.gen_range(1..=12);
    Rational::new(rng.gen_range(0..=q), q)
}

/// Random profile over holders 1..=4 and patterns over museums 1..=m.
pub fn random_profile(rng: &mut impl Rng, m: usize) -> BetaProfile {
    let mut profile = BetaProfile::constant(random_unit(rng)).unwrap();
    for holder in 1..=4 {
        if rng.gen_bool(0.5) {
            profile = profile.with_holder(holder, random_unit(rng)).unwrap();
        }
    }
    for mask in 1u32..(1 << m) {
        if rng.gen_bool(0.3) {
            let pattern: MuseumSet = (0..m as u32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            if rng.gen_bool(0.5) {
                profile = profile.with_pattern(pattern, random_unit(rng)).unwrap();
            } else {
                let holder = rng.gen_range(1..=4);
                profile = profile.with_override(holder, pattern, random_unit(rng)).unwrap();
            }
        }
    }
    profile
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q))
}

pub fn price() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q))
}

fn distinct_labels(count: usize) -> impl Strategy<Value = Vec<Label>> {
    proptest::collection::btree_set(1u32..40, count).prop_map(|s| s.into_iter().collect::<Vec<_>>()).prop_shuffle()
}

/// Problems with up to `m_max` museums and `n_max` holders, arbitrary
/// labels in arbitrary order.
pub fn problem(m_max: usize, n_max: usize, reduced: bool) -> impl Strategy<Value = Problem> {
    (1..=m_max, 1..=n_max)
        .prop_flat_map(move |(m, n)| {
            let row = proptest::collection::vec(any::<bool>(), m)
                .prop_filter("reduced rows visit a museum", move |r| !reduced || r.contains(&true));
            (distinct_labels(m), distinct_labels(n), price(), proptest::collection::vec(row, n))
        })
        .prop_map(|(museums, holders, price, entrance)| Problem::new(museums, holders, price, entrance).unwrap())
}
