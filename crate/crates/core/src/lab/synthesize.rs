use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::table::{patterns, AdditiveRuleTable};
use crate::axioms::Axiom;
use crate::enumerate::Domain;
use crate::error::{Error, Result};
use crate::problem::{Allocation, Label, MuseumSet};
use crate::rational::Rational;

/// Feasible unvisited shares `lo <= x <= hi` for one pattern. Patterns with
/// the same `class` must take the same `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternConstraint {
    pub pattern: MuseumSet,
    pub lo: Rational,
    pub hi: Rational,
    pub class: usize,
}

/// The solution set when the axioms leave some pattern free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyConstraints {
    pub museums: Vec<Label>,
    pub price: Rational,
    pub domain: Domain,
    pub patterns: Vec<PatternConstraint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfeasibleWitness {
    pub pattern: MuseumSet,
    pub reason: String,
}

impl fmt::Display for InfeasibleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pattern.is_empty() {
            write!(f, "pattern E=0: {}", self.reason)
        } else {
            let labels: Vec<String> = self.pattern.iter().map(Label::to_string).collect();
            write!(f, "pattern {{{}}}: {}", labels.join(","), self.reason)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Synthesis {
    Unique { table: AdditiveRuleTable },
    Family { constraints: FamilyConstraints },
    Infeasible { witness: InfeasibleWitness },
}

/// Entry for `pattern` whose unvisited museums get `x` each.
fn entry(museums: &[Label], price: &Rational, pattern: &MuseumSet, x: &Rational) -> Allocation {
    let e = pattern.len();
    if e == 0 {
        return Allocation::new(vec![price / Rational::from(museums.len()); museums.len()]);
    }
    let y = (price - Rational::from(museums.len() - e) * x) / Rational::from(e);
    Allocation::new(
        museums
            .iter()
            .map(|i| if pattern.contains(i) { y.clone() } else { x.clone() })
            .collect(),
    )
}

impl FamilyConstraints {
    /// Table with `x` chosen per class by `pick(lo, hi)`; the choice must lie
    /// in the class interval.
    pub fn table_with(&self, mut pick: impl FnMut(&Rational, &Rational) -> Rational) -> Result<AdditiveRuleTable> {
        let mut chosen: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut entries = BTreeMap::new();
        for c in &self.patterns {
            let x = chosen.entry(c.class).or_insert_with(|| pick(&c.lo, &c.hi)).clone();
            if x < c.lo || x > c.hi {
                return Err(Error::OutOfRange(format!(
                    "x = {x} outside [{}, {}] for pattern {:?}",
                    c.lo, c.hi, c.pattern
                )));
            }
            entries.insert(c.pattern.clone(), entry(&self.museums, &self.price, &c.pattern, &x));
        }
        AdditiveRuleTable::from_entries(self.museums.clone(), self.price.clone(), self.domain, entries)
    }

    pub fn lower_table(&self) -> Result<AdditiveRuleTable> {
        self.table_with(|lo, _| lo.clone())
    }

    pub fn upper_table(&self) -> Result<AdditiveRuleTable> {
        self.table_with(|_, hi| hi.clone())
    }

    pub fn midpoint_table(&self) -> Result<AdditiveRuleTable> {
        self.table_with(|lo, hi| (lo + hi) / Rational::from_int(2))
    }

    /// Whether `table` satisfies every constraint of the family.
    pub fn contains(&self, table: &AdditiveRuleTable) -> bool {
        if table.museums() != self.museums.as_slice() || table.price() != &self.price || table.domain() != self.domain
        {
            return false;
        }
        let mut seen: BTreeMap<usize, Rational> = BTreeMap::new();
        self.patterns.iter().all(|c| {
            let Some(a) = table.entry(&c.pattern) else { return false };
            let x = match self.museums.iter().position(|i| !c.pattern.contains(i)) {
                Some(k) => a.shares()[k].clone(),
                None => a.shares()[0].clone(),
            };
            let shaped = *a == entry(&self.museums, &self.price, &c.pattern, &x);
            let consistent = seen.entry(c.class).or_insert_with(|| x.clone()) == &x;
            shaped && consistent && c.lo <= x && x <= c.hi
        })
    }
}

fn find(parent: &mut [usize], k: usize) -> usize {
    let mut root = k;
    while parent[root] != root {
        root = parent[root];
    }
    parent[k] = root;
    root
}

/// Solves the conditions `axioms` impose on single-holder tables over the
/// frame.
///
/// Each pattern with `e` visited museums has one unknown, the unvisited
/// share `x`, with visited museums splitting the rest of the price. Equal
/// treatment is required since it is what reduces an entry to `x`;
/// additivity and holder anonymity hold for every table extension and add
/// no condition. Dummy forces `x = 0`, order preservation caps `x`, and
/// independence of visits distribution ties `x` across patterns whose union
/// leaves a museum unvisited. When every museum is visited the entry is
/// `price / m` regardless of `x`, and the empty pattern gives `x = price / m`.
pub fn synthesize(axioms: &[Axiom], museums: &[Label], price: &Rational, domain: Domain) -> Result<Synthesis> {
    super::table::single_holder(museums, price, &MuseumSet::new())?;
    if !axioms.contains(&Axiom::Ete) {
        return Err(Error::UnsupportedAxioms("synthesis needs ete to reduce each entry to one unknown".into()));
    }
    if let Some(a) = axioms.iter().find(|a| matches!(a, Axiom::Iev)) {
        return Err(Error::UnsupportedAxioms(format!("{a} does not reduce to single-holder conditions")));
    }
    let dummy = axioms.contains(&Axiom::Dummy);
    let ivd = axioms.contains(&Axiom::Ivd);
    let mut tau: Option<Rational> = None;
    for a in axioms {
        let t = match a {
            Axiom::Opd => Rational::one(),
            Axiom::TauOpd(t) => t.clone(),
            _ => continue,
        };
        if !t.in_unit_interval() {
            return Err(Error::OutOfRange(format!("tau = {t} must lie in [0, 1]")));
        }
        tau = Some(match tau {
            Some(prev) if prev < t => prev,
            _ => t,
        });
    }

    let m = museums.len();
    let mr = Rational::from(m);
    let share = price / &mr;
    let pats = patterns(museums, domain);

    let mut bounds = Vec::with_capacity(pats.len());
    for pattern in &pats {
        let e = pattern.len();
        let (lo, mut hi) = if e == 0 || e == m {
            (share.clone(), share.clone())
        } else {
            (Rational::zero(), price / Rational::from(m - e))
        };
        let mut reason = String::new();
        if dummy && e < m {
            hi = hi.min(Rational::zero());
            reason = "dummy forces unvisited museums to 0".into();
        }
        if let Some(t) = &tau {
            if e > 0 && e < m {
                let er = Rational::from(e);
                let cap = t * price / (&er + t * (&mr - &er));
                if cap < hi {
                    hi = cap;
                    reason = format!("order preservation with tau = {t} caps unvisited shares");
                }
            }
        }
        if lo > hi {
            return Ok(Synthesis::Infeasible {
                witness: InfeasibleWitness {
                    pattern: pattern.clone(),
                    reason: format!("{reason}, yet the entry must be {lo} per museum to sum to the price"),
                },
            });
        }
        bounds.push((lo, hi));
    }

    let mut parent: Vec<usize> = (0..pats.len()).collect();
    if ivd {
        for a in 0..pats.len() {
            for b in a + 1..pats.len() {
                if pats[a].union(&pats[b]).count() < m {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }

    let mut class_bounds: BTreeMap<usize, (Rational, Rational, usize)> = BTreeMap::new();
    for (k, (lo, hi)) in bounds.iter().enumerate() {
        let root = find(&mut parent, k);
        class_bounds
            .entry(root)
            .and_modify(|(clo, chi, _)| {
                *clo = clo.clone().max(lo.clone());
                *chi = chi.clone().min(hi.clone());
            })
            .or_insert((lo.clone(), hi.clone(), k));
    }
    for (lo, hi, first) in class_bounds.values() {
        if lo > hi {
            return Ok(Synthesis::Infeasible {
                witness: InfeasibleWitness {
                    pattern: pats[*first].clone(),
                    reason: format!(
                        "independence of visits distribution ties this pattern to others whose bounds [{lo}, {hi}] are empty"
                    ),
                },
            });
        }
    }

    let constraints = FamilyConstraints {
        museums: museums.to_vec(),
        price: price.clone(),
        domain,
        patterns: (0..pats.len())
            .map(|k| {
                let root = find(&mut parent, k);
                let (lo, hi, _) = &class_bounds[&root];
                PatternConstraint { pattern: pats[k].clone(), lo: lo.clone(), hi: hi.clone(), class: root }
            })
            .collect(),
    };
    if constraints.patterns.iter().all(|c| c.lo == c.hi) {
        Ok(Synthesis::Unique { table: constraints.lower_table()? })
    } else {
        Ok(Synthesis::Family { constraints })
    }
}
