//! Axioms as decidable checks.
//!
//! Each `check_*` function decides one axiom on concrete problems and, on
//! failure, returns a [`Witness`]: the problems involved, the museums whose
//! shares break the axiom, and both sides of the violated relation.
//! [`audit`] runs a check over every instance of an exhaustive enumeration
//! and stops at the first failure, so witnesses are reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::enumerate::{self, EnumerationConfig};
use crate::error::{Error, Result};
use crate::problem::{Allocation, Label, Problem};
use crate::rational::Rational;
use crate::rules::Rule;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Museums with identical columns get equal shares.
    Ete,
    /// Pooling disjoint holder populations adds the allocations.
    RevenueAdditivity,
    /// Dummy museums get nothing.
    Dummy,
    /// A dummy museum never gets more than a non-dummy one.
    Opd,
    /// A dummy museum gets at most `tau` times any non-dummy share.
    TauOpd(Rational),
    /// Relabeling holders leaves the allocation unchanged.
    HolderAnonymity,
    /// A museum that is dummy under two matrices gets the same share under
    /// both.
    Ivd,
    /// A newcomer who skips a museum does not change that museum's share.
    Iev,
}

impl Axiom {
    /// The single-instance axioms plus the ones audited over pairs or
    /// permutations, without the parameterized `TauOpd`.
    pub fn all_plain() -> Vec<Axiom> {
        vec![
            Axiom::Ete,
            Axiom::RevenueAdditivity,
            Axiom::Dummy,
            Axiom::Opd,
            Axiom::HolderAnonymity,
            Axiom::Ivd,
            Axiom::Iev,
        ]
    }

    /// `true` for axioms audited over pairs of problems.
    pub fn is_pairwise(&self) -> bool {
        matches!(self, Axiom::RevenueAdditivity | Axiom::Ivd)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Ete => f.write_str("ete"),
            Axiom::RevenueAdditivity => f.write_str("additivity"),
            Axiom::Dummy => f.write_str("dummy"),
            Axiom::Opd => f.write_str("opd"),
            Axiom::TauOpd(tau) => write!(f, "tau-opd:{tau}"),
            Axiom::HolderAnonymity => f.write_str("anonymity"),
            Axiom::Ivd => f.write_str("ivd"),
            Axiom::Iev => f.write_str("iev"),
        }
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim().to_ascii_lowercase();
        let axiom = match text.as_str() {
            "ete" => Axiom::Ete,
            "additivity" | "revenue-additivity" | "ra" => Axiom::RevenueAdditivity,
            "dummy" => Axiom::Dummy,
            "opd" => Axiom::Opd,
            "anonymity" | "holder-anonymity" => Axiom::HolderAnonymity,
            "ivd" => Axiom::Ivd,
            "iev" => Axiom::Iev,
            _ => match text.split_once(':') {
                Some(("tau-opd", tau)) => {
                    let tau: Rational = tau.parse()?;
                    check_tau(&tau)?;
                    Axiom::TauOpd(tau)
                }
                _ => return Err(Error::Parse(format!("unknown axiom `{s}`"))),
            },
        };
        Ok(axiom)
    }
}

fn check_tau(tau: &Rational) -> Result<()> {
    if tau.in_unit_interval() {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("tau = {tau} must lie in [0, 1]")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The relation an axiom demands between `lhs` and `rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = "<=")]
    AtMost,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Equal => lhs == rhs,
            Relation::AtMost => lhs <= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "=",
            Relation::AtMost => "<=",
        })
    }
}

/// A concrete violation: `lhs relation rhs` is required but fails.
///
/// Problem layout per axiom: single-instance axioms carry `[p]`;
/// additivity `[p, q, stack(p, q)]`; anonymity `[p, relabeled p]`;
/// independence of visits distribution `[p, q]`; independence of external
/// visitors `[p, p with newcomer]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub problems: Vec<Problem>,
    pub museums: Vec<Label>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
    pub detail: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.detail)?;
        for (k, p) in self.problems.iter().enumerate() {
            writeln!(f, "  problem {}: {p}", k + 1)?;
        }
        write!(
            f,
            "  museums {:?}: required {} {} {}, violated",
            self.museums, self.lhs, self.relation, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub instances_checked: u64,
}

impl Verdict {
    pub fn pass(instances_checked: u64) -> Self {
        Verdict { status: Status::Pass, witness: None, instances_checked }
    }

    pub fn fail(witness: Witness, instances_checked: u64) -> Self {
        Verdict { status: Status::Fail, witness: Some(witness), instances_checked }
    }

    fn from_option(witness: Option<Witness>) -> Self {
        match witness {
            Some(w) => Verdict::fail(w, 1),
            None => Verdict::pass(1),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Machine-readable audit outcome.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub rule: String,
    pub axiom: String,
    pub config: EnumerationConfig,
    pub status: Status,
    pub witness: Option<Witness>,
    pub instances_checked: u64,
}

impl AuditReport {
    pub fn new(rule: &Rule, axiom: &Axiom, config: &EnumerationConfig, verdict: Verdict) -> Self {
        AuditReport {
            rule: rule.to_string(),
            axiom: axiom.to_string(),
            config: config.clone(),
            status: verdict.status,
            witness: verdict.witness,
            instances_checked: verdict.instances_checked,
        }
    }
}

fn identical_columns(p: &Problem, i: usize, j: usize) -> bool {
    p.entrance().iter().all(|row| row[i] == row[j])
}

fn dummies(p: &Problem) -> Vec<bool> {
    p.visit_counts().per_museum.iter().map(|&e| e == 0).collect()
}

/// Equal-treatment failure of a precomputed allocation of `p`, if any.
pub fn ete_violation(p: &Problem, a: &Allocation) -> Option<Witness> {
    let shares = a.shares();
    for (i, j) in (0..p.m()).tuple_combinations() {
        if identical_columns(p, i, j) && shares[i] != shares[j] {
            return Some(Witness {
                problems: vec![p.clone()],
                museums: vec![p.museums()[i], p.museums()[j]],
                lhs: shares[i].clone(),
                rhs: shares[j].clone(),
                relation: Relation::Equal,
                detail: "museums with identical visitors receive different shares".into(),
            });
        }
    }
    None
}

/// Dummy failure of a precomputed allocation of `p`, if any.
pub fn dummy_violation(p: &Problem, a: &Allocation) -> Option<Witness> {
    let shares = a.shares();
    let dummy = dummies(p);
    (0..p.m())
        .filter(|&i| dummy[i])
        .find(|&i| !shares[i].is_zero())
        .map(|i| Witness {
            problems: vec![p.clone()],
            museums: vec![p.museums()[i]],
            lhs: shares[i].clone(),
            rhs: Rational::zero(),
            relation: Relation::Equal,
            detail: "dummy museum receives a positive share".into(),
        })
}

/// `tau`-order preservation failure of a precomputed allocation of `p`.
pub fn opd_violation(p: &Problem, a: &Allocation, tau: &Rational) -> Option<Witness> {
    let shares = a.shares();
    let dummy = dummies(p);
    for i in (0..p.m()).filter(|&i| dummy[i]) {
        for j in (0..p.m()).filter(|&j| !dummy[j]) {
            let bound = tau * &shares[j];
            if shares[i] > bound {
                return Some(Witness {
                    problems: vec![p.clone()],
                    museums: vec![p.museums()[i], p.museums()[j]],
                    lhs: shares[i].clone(),
                    rhs: bound,
                    relation: Relation::AtMost,
                    detail: format!("dummy museum exceeds {tau} times a visited museum's share"),
                });
            }
        }
    }
    None
}

fn pointwise_violation(
    problems: Vec<Problem>,
    lhs: &Allocation,
    rhs: &Allocation,
    museums_checked: impl Iterator<Item = usize>,
    museum_labels: &[Label],
    detail: &str,
) -> Option<Witness> {
    for i in museums_checked {
        if lhs.shares()[i] != rhs.shares()[i] {
            return Some(Witness {
                problems,
                museums: vec![museum_labels[i]],
                lhs: lhs.shares()[i].clone(),
                rhs: rhs.shares()[i].clone(),
                relation: Relation::Equal,
                detail: detail.to_string(),
            });
        }
    }
    None
}

fn additivity_violation(
    p: &Problem,
    q: &Problem,
    stacked: &Problem,
    ap: &Allocation,
    aq: &Allocation,
    astack: &Allocation,
) -> Option<Witness> {
    let sum = ap + aq;
    pointwise_violation(
        vec![p.clone(), q.clone(), stacked.clone()],
        astack,
        &sum,
        0..p.m(),
        p.museums(),
        "allocation of the pooled problem differs from the sum of the parts",
    )
}

fn ivd_violation(p: &Problem, q: &Problem, ap: &Allocation, aq: &Allocation) -> Option<Witness> {
    let dp = dummies(p);
    let dq = dummies(q);
    pointwise_violation(
        vec![p.clone(), q.clone()],
        ap,
        aq,
        (0..p.m()).filter(|&i| dp[i] && dq[i]),
        p.museums(),
        "museum dummy under both matrices receives different shares",
    )
}

fn anonymity_violation(p: &Problem, relabeled: &Problem, ap: &Allocation, ar: &Allocation) -> Option<Witness> {
    pointwise_violation(
        vec![p.clone(), relabeled.clone()],
        ar,
        ap,
        0..p.m(),
        p.museums(),
        "relabeling pass holders changes the allocation",
    )
}

fn iev_violation(
    p: &Problem,
    grown: &Problem,
    newcomer: &[bool],
    ap: &Allocation,
    ag: &Allocation,
) -> Option<Witness> {
    pointwise_violation(
        vec![p.clone(), grown.clone()],
        ag,
        ap,
        (0..p.m()).filter(|&i| !newcomer[i]),
        p.museums(),
        "a newcomer who skipped the museum changed its share",
    )
}

fn with_newcomer(p: &Problem, row: &[bool]) -> Result<Problem> {
    if row.len() != p.m() {
        return Err(Error::FrameMismatch(format!(
            "newcomer row has {} entries for {} museums",
            row.len(),
            p.m()
        )));
    }
    let fresh = p.holders().iter().max().copied().unwrap_or(0) + 1;
    let newcomer = Problem::new(p.museums().to_vec(), vec![fresh], p.price().clone(), vec![row.to_vec()])?;
    p.stack(&newcomer)
}

pub fn check_ete(rule: &Rule, p: &Problem) -> Result<Verdict> {
    let a = rule.allocate(p)?;
    Ok(Verdict::from_option(ete_violation(p, &a)))
}

pub fn check_additivity(rule: &Rule, p: &Problem, q: &Problem) -> Result<Verdict> {
    let stacked = p.stack(q)?;
    let (ap, aq, astack) = (rule.allocate(p)?, rule.allocate(q)?, rule.allocate(&stacked)?);
    Ok(Verdict::from_option(additivity_violation(p, q, &stacked, &ap, &aq, &astack)))
}

pub fn check_dummy(rule: &Rule, p: &Problem) -> Result<Verdict> {
    let a = rule.allocate(p)?;
    Ok(Verdict::from_option(dummy_violation(p, &a)))
}

/// `tau`-order preservation with dummies; `tau = 1` is plain order
/// preservation.
pub fn check_opd(rule: &Rule, p: &Problem, tau: &Rational) -> Result<Verdict> {
    check_tau(tau)?;
    let a = rule.allocate(p)?;
    Ok(Verdict::from_option(opd_violation(p, &a, tau)))
}

/// `sigma` maps each holder label of `p` to its new label.
pub fn check_anonymity(rule: &Rule, p: &Problem, sigma: &BTreeMap<Label, Label>) -> Result<Verdict> {
    let relabeled = p.relabel_holders(sigma)?;
    let (ap, ar) = (rule.allocate(p)?, rule.allocate(&relabeled)?);
    Ok(Verdict::from_option(anonymity_violation(p, &relabeled, &ap, &ar)))
}

/// Both problems must share museums, holders and price. Identical matrices
/// pass trivially.
pub fn check_ivd(rule: &Rule, p: &Problem, q: &Problem) -> Result<Verdict> {
    if !p.same_frame(q) {
        return Err(Error::FrameMismatch(
            "independence of visits distribution compares problems with the same museums, holders and price".into(),
        ));
    }
    if p == q {
        return Ok(Verdict::pass(1));
    }
    let (ap, aq) = (rule.allocate(p)?, rule.allocate(q)?);
    Ok(Verdict::from_option(ivd_violation(p, q, &ap, &aq)))
}

/// Adds a holder with a fresh label and the given row.
pub fn check_iev(rule: &Rule, p: &Problem, newcomer_row: &[bool]) -> Result<Verdict> {
    let grown = with_newcomer(p, newcomer_row)?;
    let (ap, ag) = (rule.allocate(p)?, rule.allocate(&grown)?);
    Ok(Verdict::from_option(iev_violation(p, &grown, newcomer_row, &ap, &ag)))
}

/// Checks one axiom that needs only a single problem.
pub fn check_single(rule: &Rule, axiom: &Axiom, p: &Problem) -> Result<Verdict> {
    match axiom {
        Axiom::Ete => check_ete(rule, p),
        Axiom::Dummy => check_dummy(rule, p),
        Axiom::Opd => check_opd(rule, p, &Rational::one()),
        Axiom::TauOpd(tau) => check_opd(rule, p, tau),
        other => Err(Error::UnsupportedAxioms(format!("{other} is not a single-problem axiom"))),
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Instances `audit` visits for this axiom and configuration.
pub fn instance_count(axiom: &Axiom, cfg: &EnumerationConfig) -> u128 {
    let prices = cfg.prices.len() as u128;
    let per_price: u128 = match axiom {
        Axiom::Ete | Axiom::Dummy | Axiom::Opd | Axiom::TauOpd(_) => return cfg.problem_count(),
        Axiom::RevenueAdditivity => (1..=cfg.m_max)
            .map(|m| {
                let side: u128 = (1..=cfg.n_max).map(|n| enumerate::matrix_count(n, m, cfg.domain)).sum();
                side * side
            })
            .sum(),
        Axiom::Ivd => (1..=cfg.m_max)
            .flat_map(|m| (1..=cfg.n_max).map(move |n| (m, n)))
            .map(|(m, n)| {
                let k = enumerate::matrix_count(n, m, cfg.domain);
                k * k.saturating_sub(1) / 2
            })
            .sum(),
        Axiom::HolderAnonymity => (1..=cfg.m_max)
            .flat_map(|m| (1..=cfg.n_max).map(move |n| (m, n)))
            .map(|(m, n)| enumerate::matrix_count(n, m, cfg.domain) * (factorial(n) - 1))
            .sum(),
        Axiom::Iev => (1..=cfg.m_max)
            .flat_map(|m| (1..=cfg.n_max).map(move |n| (m, n)))
            .map(|(m, n)| enumerate::matrix_count(n, m, cfg.domain) * enumerate::matrix_count(1, m, cfg.domain))
            .sum(),
    };
    per_price * prices
}

/// Runs the axiom's check over every instance generated by `cfg`:
/// single problems, ordered pairs of disjoint populations (additivity),
/// unordered pairs of distinct same-frame matrices (visits distribution),
/// non-identity holder permutations (anonymity), or every newcomer row
/// (external visitors). Returns the first failure in sweep order.
pub fn audit(rule: &Rule, axiom: &Axiom, cfg: &EnumerationConfig) -> Result<Verdict> {
    cfg.validate()?;
    if let Axiom::TauOpd(tau) = axiom {
        check_tau(tau)?;
    }
    let needed = instance_count(axiom, cfg);
    if needed > cfg.budget {
        return Err(Error::BudgetExceeded { needed, budget: cfg.budget });
    }

    let mut checked = 0u64;
    macro_rules! found {
        ($w:expr) => {
            checked += 1;
            if let Some(w) = $w {
                return Ok(Verdict::fail(w, checked));
            }
        };
    }

    match axiom {
        Axiom::Ete | Axiom::Dummy | Axiom::Opd | Axiom::TauOpd(_) => {
            let one = Rational::one();
            for p in enumerate::problems(cfg) {
                let a = rule.allocate(&p)?;
                found!(match axiom {
                    Axiom::Ete => ete_violation(&p, &a),
                    Axiom::Dummy => dummy_violation(&p, &a),
                    Axiom::Opd => opd_violation(&p, &a, &one),
                    Axiom::TauOpd(tau) => opd_violation(&p, &a, tau),
                    _ => unreachable!(),
                });
            }
        }
        Axiom::RevenueAdditivity => {
            for price in &cfg.prices {
                for m in 1..=cfg.m_max {
                    for n_p in 1..=cfg.n_max {
                        let left = allocated(rule, enumerate::problems_of_size(price, m, n_p, cfg.domain, 1))?;
                        for n_q in 1..=cfg.n_max {
                            let first = n_p as Label + 1;
                            let right =
                                allocated(rule, enumerate::problems_of_size(price, m, n_q, cfg.domain, first))?;
                            for (p, ap) in &left {
                                for (q, aq) in &right {
                                    let stacked = p.stack(q)?;
                                    let astack = rule.allocate(&stacked)?;
                                    found!(additivity_violation(p, q, &stacked, ap, aq, &astack));
                                }
                            }
                        }
                    }
                }
            }
        }
        Axiom::Ivd => {
            for price in &cfg.prices {
                for m in 1..=cfg.m_max {
                    for n in 1..=cfg.n_max {
                        let group = allocated(rule, enumerate::problems_of_size(price, m, n, cfg.domain, 1))?;
                        for ((p, ap), (q, aq)) in group.iter().tuple_combinations() {
                            found!(ivd_violation(p, q, ap, aq));
                        }
                    }
                }
            }
        }
        Axiom::HolderAnonymity => {
            for p in enumerate::problems(cfg) {
                let ap = rule.allocate(&p)?;
                for image in p.holders().iter().copied().permutations(p.n()) {
                    if image == p.holders() {
                        continue;
                    }
                    let sigma: BTreeMap<Label, Label> = p.holders().iter().copied().zip(image).collect();
                    let relabeled = p.relabel_holders(&sigma)?;
                    let ar = rule.allocate(&relabeled)?;
                    found!(anonymity_violation(&p, &relabeled, &ap, &ar));
                }
            }
        }
        Axiom::Iev => {
            for p in enumerate::problems(cfg) {
                let ap = rule.allocate(&p)?;
                for row in enumerate::rows(p.m(), cfg.domain) {
                    let grown = with_newcomer(&p, &row)?;
                    let ag = rule.allocate(&grown)?;
                    found!(iev_violation(&p, &grown, &row, &ap, &ag));
                }
            }
        }
    }
    Ok(Verdict::pass(checked))
}

fn allocated(rule: &Rule, problems: Vec<Problem>) -> Result<Vec<(Problem, Allocation)>> {
    problems
        .into_iter()
        .map(|p| {
            let a = rule.allocate(&p)?;
            Ok((p, a))
        })
        .collect()
}

/// Re-evaluates `rule` on the witness problems from scratch and confirms the
/// witness is a genuine violation of `axiom`: the axiom applies to the
/// recorded museums, the recorded sides match the fresh evaluation, and the
/// required relation fails.
pub fn recheck(rule: &Rule, axiom: &Axiom, w: &Witness) -> Result<bool> {
    let malformed = || Error::InvalidProblem(format!("witness does not fit axiom {axiom}"));
    let index = |p: &Problem, k: usize| -> Result<usize> {
        let label = *w.museums.get(k).ok_or_else(malformed)?;
        p.museum_index(label).ok_or(Error::UnknownMuseum(label))
    };
    let (lhs, rhs, applies) = match axiom {
        Axiom::Ete => {
            let p = w.problems.first().ok_or_else(malformed)?;
            let (i, j) = (index(p, 0)?, index(p, 1)?);
            let a = rule.allocate(p)?;
            (a.shares()[i].clone(), a.shares()[j].clone(), i != j && identical_columns(p, i, j))
        }
        Axiom::Dummy => {
            let p = w.problems.first().ok_or_else(malformed)?;
            let i = index(p, 0)?;
            let a = rule.allocate(p)?;
            (a.shares()[i].clone(), Rational::zero(), dummies(p)[i])
        }
        Axiom::Opd | Axiom::TauOpd(_) => {
            let tau = match axiom {
                Axiom::TauOpd(t) => t.clone(),
                _ => Rational::one(),
            };
            let p = w.problems.first().ok_or_else(malformed)?;
            let (i, j) = (index(p, 0)?, index(p, 1)?);
            let a = rule.allocate(p)?;
            let d = dummies(p);
            (a.shares()[i].clone(), &tau * &a.shares()[j], d[i] && !d[j])
        }
        Axiom::RevenueAdditivity => {
            let [p, q, s] = w.problems.as_slice() else { return Err(malformed()) };
            let i = index(s, 0)?;
            let sum = &rule.allocate(p)? + &rule.allocate(q)?;
            (rule.allocate(s)?.shares()[i].clone(), sum.shares()[i].clone(), p.stack(q)? == *s)
        }
        Axiom::HolderAnonymity => {
            let [p, r] = w.problems.as_slice() else { return Err(malformed()) };
            let i = index(p, 0)?;
            let mut rows_p = p.entrance().to_vec();
            let mut rows_r = r.entrance().to_vec();
            rows_p.sort();
            rows_r.sort();
            let is_relabeling = p.museums() == r.museums()
                && p.price() == r.price()
                && p.holders() == r.holders()
                && rows_p == rows_r;
            (
                rule.allocate(r)?.shares()[i].clone(),
                rule.allocate(p)?.shares()[i].clone(),
                is_relabeling,
            )
        }
        Axiom::Ivd => {
            let [p, q] = w.problems.as_slice() else { return Err(malformed()) };
            let i = index(p, 0)?;
            let applies = p.same_frame(q) && p != q && dummies(p)[i] && dummies(q)[i];
            (rule.allocate(p)?.shares()[i].clone(), rule.allocate(q)?.shares()[i].clone(), applies)
        }
        Axiom::Iev => {
            let [p, g] = w.problems.as_slice() else { return Err(malformed()) };
            let i = index(p, 0)?;
            let applies = g.n() == p.n() + 1
                && p.holders().iter().all(|&h| g.holder_index(h).is_some())
                && {
                    let fresh = g.holders().iter().find(|h| p.holder_index(**h).is_none());
                    match fresh {
                        Some(&h) => {
                            let row = &g.entrance()[g.holder_index(h).expect("present")];
                            with_newcomer(p, row).map(|x| x == *g).unwrap_or(false) && !row[i]
                        }
                        None => false,
                    }
                };
            (rule.allocate(g)?.shares()[i].clone(), rule.allocate(p)?.shares()[i].clone(), applies)
        }
    };
    Ok(applies && lhs == w.lhs && rhs == w.rhs && !w.relation.holds(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::Domain;
    use crate::rules::Base;

    fn one() -> Rational {
        Rational::one()
    }

    fn example1() -> Problem {
        Problem::from_rows(one(), &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0], &[0, 1, 0], &[0, 0, 0]]).unwrap()
    }

    fn example1_reduced() -> Problem {
        Problem::from_rows(one(), &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0], &[0, 1, 0]]).unwrap()
    }

    fn single(holder: Label, row: &[u8]) -> Problem {
        Problem::new(
            (1..=row.len() as Label).collect(),
            vec![holder],
            one(),
            vec![row.iter().map(|&b| b != 0).collect()],
        )
        .unwrap()
    }

    #[test]
    fn ete_examples() {
        assert!(check_ete(&Rule::Uniform, &example1()).unwrap().passed());
        let both = Problem::from_rows(one(), &[&[1, 1]]).unwrap();
        let v = check_ete(&Rule::R1, &both).unwrap();
        assert_eq!(v.status, Status::Fail);
        let w = v.witness.unwrap();
        assert_eq!(w.museums, vec![1, 2]);
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (one(), Rational::zero()));
        assert!(recheck(&Rule::R1, &Axiom::Ete, &w).unwrap());
    }

    #[test]
    fn additivity_examples() {
        let p = single(1, &[1, 0]);
        let q = single(2, &[1, 1]);
        let v = check_additivity(&Rule::Proportional, &p, &q).unwrap();
        let w = v.witness.expect("proportional is not additive");
        assert_eq!(w.museums, vec![1]);
        assert_eq!(w.lhs, Rational::new(4, 3));
        assert_eq!(w.rhs, Rational::new(3, 2));
        assert!(recheck(&Rule::Proportional, &Axiom::RevenueAdditivity, &w).unwrap());
        assert!(check_additivity(&Rule::Shapley, &p, &q).unwrap().passed());
        assert!(matches!(check_additivity(&Rule::Shapley, &p, &p), Err(Error::Stack(_))));
    }

    #[test]
    fn dummy_examples() {
        let p = example1_reduced();
        assert!(check_dummy(&Rule::Shapley, &p).unwrap().passed());
        let w = check_dummy(&Rule::Uniform, &p).unwrap().witness.unwrap();
        assert_eq!((w.museums.clone(), w.lhs.clone()), (vec![3], Rational::new(4, 3)));
        let w = check_dummy(&Rule::EqualAttribution, &example1()).unwrap().witness.unwrap();
        assert_eq!((w.museums.clone(), w.lhs.clone()), (vec![3], Rational::new(1, 3)));
    }

    #[test]
    fn opd_examples() {
        assert!(check_opd(&Rule::Uniform, &example1(), &one()).unwrap().passed());
        let p = single(1, &[1, 0, 0]);
        let w = check_opd(&Rule::REpsilon(Rational::new(1, 4)), &p, &one()).unwrap().witness.unwrap();
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (Rational::new(5, 12), Rational::new(1, 6)));
        let convex = Rule::ScalarConvex { beta: Rational::new(1, 5), base: Base::Shapley };
        assert!(!check_opd(&convex, &p, &Rational::zero()).unwrap().passed());
        assert!(check_opd(&convex, &p, &Rational::new(3, 2)).is_err());
    }

    #[test]
    fn anonymity_examples() {
        let p = Problem::from_rows(one(), &[&[1, 0], &[0, 1]]).unwrap();
        let identity = BTreeMap::from([(1, 1), (2, 2)]);
        let swap = BTreeMap::from([(1, 2), (2, 1)]);
        for rule in Rule::named() {
            assert!(check_anonymity(&rule, &p, &identity).unwrap().passed(), "{rule}");
        }
        let r3 = Rule::R3(BTreeMap::from([(1, Rational::zero()), (2, one())]));
        let w = check_anonymity(&r3, &p, &swap).unwrap().witness.unwrap();
        assert!(recheck(&r3, &Axiom::HolderAnonymity, &w).unwrap());
        assert!(check_anonymity(&r3, &p, &BTreeMap::from([(1, 2), (2, 2)])).is_err());
    }

    #[test]
    fn ivd_examples() {
        let half = Rational::new(1, 2);
        let zero = Problem::from_rows(half.clone(), &[&[0, 0], &[0, 0]]).unwrap();
        let col1 = Problem::from_rows(half.clone(), &[&[1, 0], &[1, 0]]).unwrap();
        assert!(check_ivd(&Rule::Uniform, &zero, &col1).unwrap().passed());
        assert!(check_ivd(&Rule::R5, &zero, &col1).unwrap().passed());
        let w = check_ivd(&Rule::EqualAttribution, &zero, &col1).unwrap().witness.unwrap();
        assert_eq!(w.museums, vec![2]);
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (half.clone(), Rational::zero()));
        assert!(recheck(&Rule::EqualAttribution, &Axiom::Ivd, &w).unwrap());
        let other = Problem::from_rows(one(), &[&[1, 0], &[1, 0]]).unwrap();
        assert!(matches!(check_ivd(&Rule::Uniform, &zero, &other), Err(Error::FrameMismatch(_))));
    }

    #[test]
    fn iev_examples() {
        assert!(check_iev(&Rule::Shapley, &example1_reduced(), &[true, false, false]).unwrap().passed());
        let p = single(1, &[1, 0]);
        let w = check_iev(&Rule::Uniform, &p, &[true, false]).unwrap().witness.unwrap();
        assert_eq!(w.museums, vec![2]);
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (one(), half()));
        let w = check_iev(&Rule::EqualAttribution, &example1_reduced(), &[false, false, false])
            .unwrap()
            .witness
            .unwrap();
        assert_eq!((w.museums.clone(), w.lhs.clone(), w.rhs.clone()), (vec![1], Rational::new(11, 6), Rational::new(3, 2)));
        assert!(recheck(&Rule::EqualAttribution, &Axiom::Iev, &w).unwrap());
        assert!(matches!(check_iev(&Rule::Uniform, &p, &[true]), Err(Error::FrameMismatch(_))));
    }

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn audit_examples() {
        let reduced = |m, n| EnumerationConfig::new(m, n, Domain::Reduced);
        assert!(audit(&Rule::Shapley, &Axiom::Dummy, &reduced(3, 3)).unwrap().passed());
        let v = audit(&Rule::R2, &Axiom::Opd, &reduced(3, 2)).unwrap();
        assert!(recheck(&Rule::R2, &Axiom::Opd, v.witness.as_ref().unwrap()).unwrap());
        let convex = Rule::ScalarConvex { beta: Rational::new(1, 3), base: Base::EqualAttribution };
        assert!(audit(&convex, &Axiom::Ete, &EnumerationConfig::new(3, 2, Domain::Enlarged)).unwrap().passed());
    }

    #[test]
    fn audit_budget_and_domain_errors() {
        let cfg = EnumerationConfig::new(3, 3, Domain::Reduced).with_budget(10);
        assert!(matches!(audit(&Rule::Uniform, &Axiom::Ete, &cfg), Err(Error::BudgetExceeded { .. })));
        let enlarged = EnumerationConfig::new(2, 1, Domain::Enlarged);
        assert!(audit(&Rule::Shapley, &Axiom::Ete, &enlarged).unwrap_err().is_domain());
    }

    #[test]
    fn instance_counts_match_sweeps() {
        let cfg = EnumerationConfig::new(2, 2, Domain::Enlarged);
        for axiom in Axiom::all_plain() {
            let v = audit(&Rule::Uniform, &axiom, &cfg).unwrap();
            assert!(v.passed() || axiom == Axiom::Dummy || axiom == Axiom::Iev, "{axiom}");
            if v.passed() {
                assert_eq!(v.instances_checked as u128, instance_count(&axiom, &cfg), "{axiom}");
            }
        }
    }

    #[test]
    fn axiom_strings() {
        for axiom in Axiom::all_plain() {
            assert_eq!(axiom.to_string().parse::<Axiom>().unwrap(), axiom);
        }
        assert_eq!("tau-opd:2/4".parse::<Axiom>().unwrap(), Axiom::TauOpd(half()));
        assert!("tau-opd:2".parse::<Axiom>().is_err());
        assert!("fairness".parse::<Axiom>().is_err());
    }
}
