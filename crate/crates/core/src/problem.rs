//! Museum pass problems, their classification, and allocations.
//!
//! A problem fixes the museums, the pass holders, the pass price and the 0/1
//! entrance matrix (row `a` lists the museums holder `a` entered). Labels are
//! positive integers and a constructed [`Problem`] always keeps museums and
//! holders in ascending label order, permuting matrix columns and rows along
//! with them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Label = u32;

/// A set of museum labels, e.g. the museums one holder visited.
pub type MuseumSet = BTreeSet<Label>;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ProblemDoc", into = "ProblemDoc")]
pub struct Problem {
    museums: Vec<Label>,
    holders: Vec<Label>,
    price: Rational,
    entrance: Vec<Vec<bool>>,
}

/// JSON document form of a [`Problem`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemDoc {
    pub museums: Vec<Label>,
    pub holders: Vec<Label>,
    pub price: Rational,
    pub entrance: Vec<Vec<u8>>,
}

impl TryFrom<ProblemDoc> for Problem {
    type Error = Error;

    fn try_from(doc: ProblemDoc) -> Result<Self> {
        let mut entrance = Vec::with_capacity(doc.entrance.len());
        for (a, row) in doc.entrance.iter().enumerate() {
            let mut bits = Vec::with_capacity(row.len());
            for (i, &bit) in row.iter().enumerate() {
                match bit {
                    0 => bits.push(false),
                    1 => bits.push(true),
                    other => {
                        return Err(Error::InvalidProblem(format!(
                            "entrance[{a}][{i}] = {other}, expected 0 or 1"
                        )))
                    }
                }
            }
            entrance.push(bits);
        }
        Problem::new(doc.museums, doc.holders, doc.price, entrance)
    }
}

impl From<Problem> for ProblemDoc {
    fn from(p: Problem) -> Self {
        ProblemDoc {
            entrance: p
                .entrance
                .iter()
                .map(|row| row.iter().map(|&b| u8::from(b)).collect())
                .collect(),
            museums: p.museums,
            holders: p.holders,
            price: p.price,
        }
    }
}

impl Problem {
    /// Validates and canonicalizes a problem.
    pub fn new(
        museums: Vec<Label>,
        holders: Vec<Label>,
        price: Rational,
        entrance: Vec<Vec<bool>>,
    ) -> Result<Self> {
        if museums.is_empty() {
            return Err(Error::InvalidProblem("at least one museum is required".into()));
        }
        if holders.is_empty() {
            return Err(Error::InvalidProblem("at least one pass holder is required".into()));
        }
        if !price.is_positive() {
            return Err(Error::InvalidProblem(format!("pass price must be positive, got {price}")));
        }
        check_labels("museum", &museums)?;
        check_labels("holder", &holders)?;
        if entrance.len() != holders.len() {
            return Err(Error::InvalidProblem(format!(
                "entrance matrix has {} rows for {} holders",
                entrance.len(),
                holders.len()
            )));
        }
        if let Some((a, row)) = entrance.iter().enumerate().find(|(_, r)| r.len() != museums.len()) {
            return Err(Error::InvalidProblem(format!(
                "entrance row {a} has {} entries for {} museums",
                row.len(),
                museums.len()
            )));
        }

        let mut col_order: Vec<usize> = (0..museums.len()).collect();
        col_order.sort_by_key(|&i| museums[i]);
        let mut row_order: Vec<usize> = (0..holders.len()).collect();
        row_order.sort_by_key(|&a| holders[a]);

        Ok(Problem {
            museums: col_order.iter().map(|&i| museums[i]).collect(),
            holders: row_order.iter().map(|&a| holders[a]).collect(),
            price,
            entrance: row_order
                .iter()
                .map(|&a| col_order.iter().map(|&i| entrance[a][i]).collect())
                .collect(),
        })
    }

    /// Problem with museums `1..=m` and holders `1..=n` taken from 0/1 rows.
    pub fn from_rows(price: Rational, rows: &[&[u8]]) -> Result<Self> {
        let m = rows.first().map_or(0, |r| r.len());
        let entrance = rows
            .iter()
            .map(|r| r.iter().map(|&b| b != 0).collect())
            .collect();
        Problem::new(
            (1..=m as Label).collect(),
            (1..=rows.len() as Label).collect(),
            price,
            entrance,
        )
    }

    pub fn museums(&self) -> &[Label] {
        &self.museums
    }

    pub fn holders(&self) -> &[Label] {
        &self.holders
    }

    pub fn price(&self) -> &Rational {
        &self.price
    }

    pub fn entrance(&self) -> &[Vec<bool>] {
        &self.entrance
    }

    pub fn m(&self) -> usize {
        self.museums.len()
    }

    pub fn n(&self) -> usize {
        self.holders.len()
    }

    /// Total revenue `n * price`.
    pub fn revenue(&self) -> Rational {
        Rational::from(self.n()) * &self.price
    }

    pub fn holder_index(&self, label: Label) -> Option<usize> {
        self.holders.binary_search(&label).ok()
    }

    pub fn museum_index(&self, label: Label) -> Option<usize> {
        self.museums.binary_search(&label).ok()
    }

    /// Museums visited by the holder in row `row`.
    pub fn visited(&self, row: usize) -> MuseumSet {
        self.entrance[row]
            .iter()
            .zip(&self.museums)
            .filter(|(&bit, _)| bit)
            .map(|(_, &label)| label)
            .collect()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entrance.iter().all(|row| row.iter().all(|&b| !b))
    }

    pub fn visit_counts(&self) -> VisitCounts {
        let mut per_museum = vec![0usize; self.m()];
        let mut per_holder = vec![0usize; self.n()];
        for (a, row) in self.entrance.iter().enumerate() {
            for (i, &bit) in row.iter().enumerate() {
                if bit {
                    per_museum[i] += 1;
                    per_holder[a] += 1;
                }
            }
        }
        VisitCounts { per_museum, per_holder }
    }

    /// Visit counts, domain membership, dummy museums and null holders.
    pub fn classify(&self) -> Classification {
        let counts = self.visit_counts();
        let dummy_museums: BTreeSet<Label> = counts
            .per_museum
            .iter()
            .zip(&self.museums)
            .filter(|(&e, _)| e == 0)
            .map(|(_, &l)| l)
            .collect();
        let null_holders: BTreeSet<Label> = counts
            .per_holder
            .iter()
            .zip(&self.holders)
            .filter(|(&e, _)| e == 0)
            .map(|(_, &l)| l)
            .collect();
        let tag = if null_holders.is_empty() {
            DomainTag::Reduced
        } else {
            DomainTag::EnlargedOnly
        };
        Classification { counts, tag, dummy_museums, null_holders }
    }

    /// Single-holder problem made of holder `holder`'s row.
    pub fn restrict_to_holder(&self, holder: Label) -> Result<Problem> {
        let a = self.holder_index(holder).ok_or(Error::UnknownHolder(holder))?;
        Ok(Problem {
            museums: self.museums.clone(),
            holders: vec![holder],
            price: self.price.clone(),
            entrance: vec![self.entrance[a].clone()],
        })
    }

    /// Pools two disjoint holder populations over the same museums and price,
    /// rows of `self` above rows of `other`.
    pub fn stack(&self, other: &Problem) -> Result<Problem> {
        if self.museums != other.museums {
            return Err(Error::Stack(format!(
                "museums {:?} vs {:?}",
                self.museums, other.museums
            )));
        }
        if self.price != other.price {
            return Err(Error::Stack(format!("prices {} vs {}", self.price, other.price)));
        }
        if let Some(label) = self.holders.iter().find(|l| other.holder_index(**l).is_some()) {
            return Err(Error::Stack(format!("holder label {label} appears in both problems")));
        }
        let holders = self.holders.iter().chain(&other.holders).copied().collect();
        let entrance = self.entrance.iter().chain(&other.entrance).cloned().collect();
        Problem::new(self.museums.clone(), holders, self.price.clone(), entrance)
    }

    /// Applies a holder relabeling: the holder labelled `a` becomes
    /// `sigma[a]`, carrying its row along.
    pub fn relabel_holders(&self, sigma: &BTreeMap<Label, Label>) -> Result<Problem> {
        let image: BTreeSet<Label> = sigma.values().copied().collect();
        let domain: BTreeSet<Label> = sigma.keys().copied().collect();
        let own: BTreeSet<Label> = self.holders.iter().copied().collect();
        if domain != own || image != own {
            return Err(Error::OutOfRange(format!(
                "holder relabeling {sigma:?} is not a permutation of {:?}",
                self.holders
            )));
        }
        let holders = self.holders.iter().map(|a| sigma[a]).collect();
        Problem::new(self.museums.clone(), holders, self.price.clone(), self.entrance.clone())
    }

    /// Same frame with another entrance matrix.
    pub fn with_entrance(&self, entrance: Vec<Vec<bool>>) -> Result<Problem> {
        Problem::new(self.museums.clone(), self.holders.clone(), self.price.clone(), entrance)
    }

    /// `true` when both problems share museums, holders and price.
    pub fn same_frame(&self, other: &Problem) -> bool {
        self.museums == other.museums && self.holders == other.holders && self.price == other.price
    }
}

fn check_labels(kind: &str, labels: &[Label]) -> Result<()> {
    if labels.contains(&0) {
        return Err(Error::InvalidProblem(format!("{kind} labels must be positive")));
    }
    let distinct: BTreeSet<_> = labels.iter().collect();
    if distinct.len() != labels.len() {
        return Err(Error::InvalidProblem(format!("duplicate {kind} labels in {labels:?}")));
    }
    Ok(())
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Problem(M={:?}, N={:?}, price={}, E=[", self.museums, self.holders, self.price)?;
        for (a, row) in self.entrance.iter().enumerate() {
            if a > 0 {
                f.write_str(" ")?;
            }
            for &bit in row {
                f.write_str(if bit { "1" } else { "0" })?;
            }
        }
        f.write_str("])")
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Column sums `e_i` and row sums `e^a` of the entrance matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisitCounts {
    pub per_museum: Vec<usize>,
    pub per_holder: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DomainTag {
    /// Every holder visited at least one museum.
    Reduced,
    /// Some holder visited nothing.
    EnlargedOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub counts: VisitCounts,
    pub tag: DomainTag,
    pub dummy_museums: BTreeSet<Label>,
    pub null_holders: BTreeSet<Label>,
}

/// Per-museum shares of the revenue, in the problem's museum order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation(Vec<Rational>);

impl Allocation {
    pub fn new(shares: Vec<Rational>) -> Self {
        Allocation(shares)
    }

    pub fn zeros(m: usize) -> Self {
        Allocation(vec![Rational::zero(); m])
    }

    pub fn shares(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_shares(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn scale(&self, factor: &Rational) -> Allocation {
        Allocation(self.0.iter().map(|x| x * factor).collect())
    }

    /// `weight * self + (1 - weight) * other`.
    pub fn blend(&self, weight: &Rational, other: &Allocation) -> Allocation {
        let rest = Rational::one() - weight;
        Allocation(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| x * weight + y * &rest)
                .collect(),
        )
    }

    pub(crate) fn add_assign(&mut self, other: &Allocation) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            *x += y;
        }
    }

    /// Checks the rule invariants against `p`: one non-negative share per
    /// museum, summing exactly to the revenue.
    pub fn validate(&self, p: &Problem) -> Result<()> {
        if self.0.len() != p.m() {
            return Err(Error::InvalidProblem(format!(
                "allocation has {} shares for {} museums",
                self.0.len(),
                p.m()
            )));
        }
        if let Some(x) = self.0.iter().find(|x| x.is_negative()) {
            return Err(Error::OutOfRange(format!("negative share {x}")));
        }
        let total = self.total();
        if total != p.revenue() {
            return Err(Error::OutOfRange(format!(
                "shares sum to {total}, revenue is {}",
                p.revenue()
            )));
        }
        Ok(())
    }
}

impl Add<&Allocation> for &Allocation {
    type Output = Allocation;

    fn add(self, rhs: &Allocation) -> Allocation {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Shorthand for building allocations in tests and examples:
/// `alloc(&[(5, 3), (5, 3), (5, 3)])`.
pub fn alloc(shares: &[(i64, i64)]) -> Allocation {
    Allocation(shares.iter().map(|&(p, q)| Rational::new(p, q)).collect())
}
