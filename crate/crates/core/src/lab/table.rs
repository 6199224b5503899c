use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::enumerate::Domain;
use crate::error::{Error, Result};
use crate::problem::{Allocation, Label, MuseumSet, Problem};
use crate::rational::Rational;
use crate::rules::{Base, BetaProfile, Rule};

/// Allocation of a single holder's pass for every visit pattern.
///
/// Together with additivity over holders the table is a complete rule:
/// [`AdditiveRuleTable::extend`] sums the entries of each holder's pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveRuleTable {
    museums: Vec<Label>,
    price: Rational,
    domain: Domain,
    entries: BTreeMap<MuseumSet, Allocation>,
}

/// Every visit pattern over `museums`, the empty one only on the enlarged
/// domain.
pub(crate) fn patterns(museums: &[Label], domain: Domain) -> Vec<MuseumSet> {
    let m = museums.len();
    let start = match domain {
        Domain::Reduced => 1u64,
        Domain::Enlarged => 0,
    };
    let mut out: Vec<MuseumSet> = (start..1u64 << m)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).map(|i| museums[i]).collect())
        .collect();
    out.sort();
    out
}

pub(crate) fn single_holder(museums: &[Label], price: &Rational, pattern: &MuseumSet) -> Result<Problem> {
    let row = museums.iter().map(|i| pattern.contains(i)).collect();
    Problem::new(museums.to_vec(), vec![1], price.clone(), vec![row])
}

impl AdditiveRuleTable {
    /// Tabulates `rule` on the single-holder problems of the frame.
    pub fn from_rule(rule: &Rule, museums: &[Label], price: &Rational, domain: Domain) -> Result<Self> {
        let entries = patterns(museums, domain)
            .into_iter()
            .map(|pattern| {
                let a = rule.allocate(&single_holder(museums, price, &pattern)?)?;
                Ok((pattern, a))
            })
            .collect::<Result<_>>()?;
        Self::from_entries(museums.to_vec(), price.clone(), domain, entries)
    }

    /// Checks that every pattern of the domain has an entry of the right
    /// length, with non-negative shares summing to the price.
    pub fn from_entries(
        museums: Vec<Label>,
        price: Rational,
        domain: Domain,
        entries: BTreeMap<MuseumSet, Allocation>,
    ) -> Result<Self> {
        single_holder(&museums, &price, &MuseumSet::new())?;
        let expected = patterns(&museums, domain);
        if entries.keys().ne(expected.iter()) {
            return Err(Error::InvalidProblem(format!(
                "a {domain} table over {} museums needs exactly the {} patterns of that domain",
                museums.len(),
                expected.len()
            )));
        }
        for (pattern, a) in &entries {
            if a.len() != museums.len() || a.shares().iter().any(Rational::is_negative) || a.total() != price {
                return Err(Error::InvalidProblem(format!(
                    "entry for pattern {pattern:?} must be {} non-negative shares summing to {price}",
                    museums.len()
                )));
            }
        }
        Ok(AdditiveRuleTable { museums, price, domain, entries })
    }

    pub fn museums(&self) -> &[Label] {
        &self.museums
    }

    pub fn price(&self) -> &Rational {
        &self.price
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn entries(&self) -> &BTreeMap<MuseumSet, Allocation> {
        &self.entries
    }

    pub fn entry(&self, pattern: &MuseumSet) -> Option<&Allocation> {
        self.entries.get(pattern)
    }

    /// Allocation of `p` under the additive rule the table defines.
    pub fn extend(&self, p: &Problem) -> Result<Allocation> {
        if p.museums() != self.museums.as_slice() || p.price() != &self.price {
            return Err(Error::FrameMismatch("problem frame differs from the table frame".into()));
        }
        let mut total = Allocation::zeros(p.m());
        let mut missing = std::collections::BTreeSet::new();
        for (row, &holder) in p.holders().iter().enumerate() {
            match self.entries.get(&p.visited(row)) {
                Some(a) => total.add_assign(a),
                None => {
                    missing.insert(holder);
                }
            }
        }
        if missing.is_empty() {
            Ok(total)
        } else {
            Err(Error::Domain { rule: "table".into(), holders: missing })
        }
    }
}

#[derive(Serialize)]
struct TableEntry<'a> {
    pattern: &'a MuseumSet,
    allocation: &'a Allocation,
}

impl Serialize for AdditiveRuleTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            museums: &'a [Label],
            price: &'a Rational,
            domain: Domain,
            entries: Vec<TableEntry<'a>>,
        }
        Doc {
            museums: &self.museums,
            price: &self.price,
            domain: self.domain,
            entries: self
                .entries
                .iter()
                .map(|(pattern, allocation)| TableEntry { pattern, allocation })
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Convex coefficient of one pattern: the entry equals
/// `beta * uniform + (1 - beta) * base` on the single-holder problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternBeta {
    pub pattern: MuseumSet,
    /// Share of each unvisited museum; absent when every museum is visited.
    pub unvisited: Option<Rational>,
    /// Share of each visited museum; absent for the empty pattern.
    pub visited: Option<Rational>,
    pub alpha: Rational,
    pub beta: Rational,
    pub in_unit_interval: bool,
    /// `false` when uniform and base coincide on the pattern, so every
    /// coefficient reconstructs the entry and `beta` is set to 1.
    pub determined: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaDecomposition {
    pub base: Base,
    pub patterns: Vec<PatternBeta>,
}

impl BetaDecomposition {
    pub fn get(&self, pattern: &MuseumSet) -> Option<&PatternBeta> {
        self.patterns.iter().find(|b| &b.pattern == pattern)
    }

    pub fn all_in_unit_interval(&self) -> bool {
        self.patterns.iter().all(|b| b.in_unit_interval)
    }

    /// Per-pattern coefficients as a profile for the beta family.
    pub fn to_profile(&self) -> Result<BetaProfile> {
        let mut profile = BetaProfile::constant(Rational::one())?;
        for b in &self.patterns {
            profile = profile.with_pattern(b.pattern.clone(), b.beta.clone())?;
        }
        Ok(profile)
    }
}

/// Reads off `beta` for every pattern of an equal-treatment-shaped table.
///
/// With `x` the unvisited share and `y` the visited share, `alpha = x / y`
/// and `beta = m alpha / (alpha (m - e) + e)`; the reconstruction identity is
/// checked exactly for every pattern.
pub fn decompose(table: &AdditiveRuleTable, base: Base) -> Result<BetaDecomposition> {
    let m = table.museums.len();
    let mr = Rational::from(m);
    let mut out = Vec::with_capacity(table.entries.len());
    for (pattern, entry) in &table.entries {
        let e = pattern.len();
        let (mut unvisited, mut visited) = (None::<Rational>, None::<Rational>);
        for (label, share) in table.museums.iter().zip(entry.shares()) {
            let slot = if pattern.contains(label) { &mut visited } else { &mut unvisited };
            match slot {
                Some(v) if v != share => return Err(Error::NotEteShaped(pattern.clone())),
                Some(_) => {}
                None => *slot = Some(share.clone()),
            }
        }
        if e == 0 && base == Base::Shapley {
            return Err(Error::Domain { rule: "shapley".into(), holders: [1].into() });
        }

        let (alpha, beta, determined) = match (&unvisited, &visited) {
            (Some(x), Some(y)) => {
                if y.is_zero() {
                    return Err(Error::OpdViolation { pattern: pattern.clone(), unvisited: x.to_string() });
                }
                let alpha = x / y;
                let er = Rational::from(e);
                let beta = &mr * &alpha / (&alpha * (&mr - &er) + er);
                (alpha, beta, true)
            }
            _ => (Rational::one(), Rational::one(), false),
        };

        let problem = single_holder(&table.museums, &table.price, pattern)?;
        let rebuilt = Rule::Uniform.allocate(&problem)?.blend(&beta, &base.allocate(&problem)?);
        if &rebuilt != entry {
            return Err(Error::NotEteShaped(pattern.clone()));
        }

        let in_unit_interval = match (&unvisited, &visited) {
            (Some(x), Some(y)) => x <= y,
            _ => true,
        };
        out.push(PatternBeta {
            pattern: pattern.clone(),
            unvisited,
            visited,
            alpha,
            beta,
            in_unit_interval,
            determined,
        });
    }
    Ok(BetaDecomposition { base, patterns: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::alloc;

    fn frame(m: u32) -> Vec<Label> {
        (1..=m).collect()
    }

    fn set(labels: &[Label]) -> MuseumSet {
        labels.iter().copied().collect()
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(patterns(&frame(3), Domain::Reduced).len(), 7);
        assert_eq!(patterns(&frame(3), Domain::Enlarged).len(), 8);
    }

    #[test]
    fn shapley_table_decomposes_to_zero() {
        let t = AdditiveRuleTable::from_rule(&Rule::Shapley, &frame(3), &Rational::one(), Domain::Reduced).unwrap();
        let d = decompose(&t, Base::Shapley).unwrap();
        for b in d.patterns.iter().filter(|b| b.determined) {
            assert!(b.beta.is_zero(), "{:?}", b.pattern);
        }
        assert!(!d.get(&set(&[1, 2, 3])).unwrap().determined);
    }

    #[test]
    fn uniform_table_decomposes_to_one() {
        let t = AdditiveRuleTable::from_rule(&Rule::Uniform, &frame(3), &Rational::one(), Domain::Enlarged).unwrap();
        let d = decompose(&t, Base::EqualAttribution).unwrap();
        assert!(d.patterns.iter().all(|b| b.beta == Rational::one() && b.in_unit_interval));
        assert!(decompose(&t, Base::Shapley).unwrap_err().is_domain());
    }

    #[test]
    fn hand_solved_pattern() {
        let shapley =
            AdditiveRuleTable::from_rule(&Rule::Shapley, &frame(3), &Rational::one(), Domain::Reduced).unwrap();
        let mut entries = shapley.entries().clone();
        entries.insert(set(&[1]), alloc(&[(3, 5), (1, 5), (1, 5)]));
        let t = AdditiveRuleTable::from_entries(frame(3), Rational::one(), Domain::Reduced, entries).unwrap();
        let b = decompose(&t, Base::Shapley).unwrap().get(&set(&[1])).unwrap().clone();
        assert_eq!(b.alpha, Rational::new(1, 3));
        assert_eq!(b.beta, Rational::new(3, 5));
        assert!(b.in_unit_interval);
    }

    #[test]
    fn decompose_errors() {
        let shapley =
            AdditiveRuleTable::from_rule(&Rule::Shapley, &frame(3), &Rational::one(), Domain::Reduced).unwrap();
        let mut lopsided = shapley.entries().clone();
        lopsided.insert(set(&[1]), alloc(&[(1, 2), (1, 2), (0, 1)]));
        let t = AdditiveRuleTable::from_entries(frame(3), Rational::one(), Domain::Reduced, lopsided).unwrap();
        assert!(matches!(decompose(&t, Base::Shapley), Err(Error::NotEteShaped(_))));

        let mut inverted = shapley.entries().clone();
        inverted.insert(set(&[1]), alloc(&[(0, 1), (1, 2), (1, 2)]));
        let t = AdditiveRuleTable::from_entries(frame(3), Rational::one(), Domain::Reduced, inverted).unwrap();
        assert!(matches!(decompose(&t, Base::Shapley), Err(Error::OpdViolation { .. })));
    }

    #[test]
    fn outside_unit_interval_is_flagged() {
        let shapley =
            AdditiveRuleTable::from_rule(&Rule::Shapley, &frame(3), &Rational::one(), Domain::Reduced).unwrap();
        let mut entries = shapley.entries().clone();
        entries.insert(set(&[1]), alloc(&[(1, 5), (2, 5), (2, 5)]));
        let t = AdditiveRuleTable::from_entries(frame(3), Rational::one(), Domain::Reduced, entries).unwrap();
        let b = decompose(&t, Base::Shapley).unwrap().get(&set(&[1])).unwrap().clone();
        assert!(!b.in_unit_interval);
        assert!(b.beta > Rational::one());
    }

    #[test]
    fn extend_matches_additive_rules() {
        let p = Problem::from_rows(Rational::one(), &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0], &[0, 1, 0], &[0, 0, 0]])
            .unwrap();
        for rule in [Rule::Uniform, Rule::EqualAttribution, Rule::R5] {
            let t = AdditiveRuleTable::from_rule(&rule, &frame(3), &Rational::one(), Domain::Enlarged).unwrap();
            assert_eq!(t.extend(&p).unwrap(), rule.allocate(&p).unwrap(), "{rule}");
        }
        let t = AdditiveRuleTable::from_rule(&Rule::Shapley, &frame(3), &Rational::one(), Domain::Reduced).unwrap();
        assert!(t.extend(&p).unwrap_err().is_domain());
    }

    #[test]
    fn from_entries_validation() {
        let t = AdditiveRuleTable::from_rule(&Rule::Uniform, &frame(2), &Rational::one(), Domain::Reduced).unwrap();
        let mut entries = t.entries().clone();
        entries.insert(MuseumSet::new(), alloc(&[(1, 2), (1, 2)]));
        assert!(AdditiveRuleTable::from_entries(frame(2), Rational::one(), Domain::Reduced, entries).is_err());
        let mut entries = t.entries().clone();
        entries.insert(set(&[1]), alloc(&[(1, 1), (1, 1)]));
        assert!(AdditiveRuleTable::from_entries(frame(2), Rational::one(), Domain::Reduced, entries).is_err());
    }
}
