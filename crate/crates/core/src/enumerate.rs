//! Exhaustive enumeration of small problems.
//!
//! Matrices of a given size come out in row-major lexicographic order
//! (the all-zero matrix first), museums are labelled `1..=m` and holders
//! `first..first+n`. Sizes are swept price-major, then by `m`, then by `n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{Label, Problem};
use crate::rational::Rational;

/// Which problems an enumeration produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// Only problems without null holders.
    Reduced,
    /// All problems.
    Enlarged,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Reduced => "reduced",
            Domain::Enlarged => "enlarged",
        })
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reduced" => Ok(Domain::Reduced),
            "enlarged" => Ok(Domain::Enlarged),
            other => Err(Error::Parse(format!("unknown domain `{other}` (expected reduced or enlarged)"))),
        }
    }
}

pub const DEFAULT_BUDGET: u128 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub m_max: usize,
    pub n_max: usize,
    pub prices: Vec<Rational>,
    pub domain: Domain,
    /// Upper bound on the number of instances an audit may visit.
    pub budget: u128,
}

impl EnumerationConfig {
    /// Sweeps prices `1` and `1/2` under the default budget.
    pub fn new(m_max: usize, n_max: usize, domain: Domain) -> Self {
        EnumerationConfig {
            m_max,
            n_max,
            prices: vec![Rational::one(), Rational::new(1, 2)],
            domain,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_prices(mut self, prices: Vec<Rational>) -> Self {
        self.prices = prices;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_max == 0 || self.n_max == 0 {
            return Err(Error::OutOfRange("m_max and n_max must be at least 1".into()));
        }
        if self.prices.is_empty() {
            return Err(Error::OutOfRange("at least one price is required".into()));
        }
        if let Some(p) = self.prices.iter().find(|p| !p.is_positive()) {
            return Err(Error::OutOfRange(format!("price {p} must be positive")));
        }
        // keeps shifts in `matrix_count` and `matrices` in range
        if self.m_max * self.n_max > 40 {
            return Err(Error::TooLarge(format!(
                "{}x{} matrices are beyond exhaustive enumeration",
                self.n_max, self.m_max
            )));
        }
        Ok(())
    }

    /// Number of problems [`problems`] yields.
    pub fn problem_count(&self) -> u128 {
        let mut total = 0u128;
        for m in 1..=self.m_max {
            for n in 1..=self.n_max {
                total += matrix_count(n, m, self.domain);
            }
        }
        total * self.prices.len() as u128
    }
}

/// Number of `n x m` matrices in the domain.
pub fn matrix_count(n: usize, m: usize, domain: Domain) -> u128 {
    match domain {
        Domain::Enlarged => 1u128 << (n * m),
        Domain::Reduced => ((1u128 << m) - 1).pow(n as u32),
    }
}

/// All 0/1 rows of length `m`, ascending as binary numbers (first museum is
/// the most significant bit).
pub fn rows(m: usize, domain: Domain) -> impl Iterator<Item = Vec<bool>> {
    let start = match domain {
        Domain::Reduced => 1u64,
        Domain::Enlarged => 0,
    };
    (start..(1u64 << m)).map(move |mask| (0..m).map(|i| mask >> (m - 1 - i) & 1 == 1).collect())
}

/// All `n x m` matrices of the domain in row-major lexicographic order.
pub fn matrices(n: usize, m: usize, domain: Domain) -> impl Iterator<Item = Vec<Vec<bool>>> {
    let cells = n * m;
    (0..(1u64 << cells))
        .map(move |mask| {
            (0..n)
                .map(|a| (0..m).map(|i| mask >> (cells - 1 - (a * m + i)) & 1 == 1).collect())
                .collect::<Vec<Vec<bool>>>()
        })
        .filter(move |rows: &Vec<Vec<bool>>| domain == Domain::Enlarged || rows.iter().all(|r| r.contains(&true)))
}

/// Every problem of one size, holders labelled from `first_holder`.
pub fn problems_of_size(
    price: &Rational,
    m: usize,
    n: usize,
    domain: Domain,
    first_holder: Label,
) -> Vec<Problem> {
    let museums: Vec<Label> = (1..=m as Label).collect();
    let holders: Vec<Label> = (first_holder..first_holder + n as Label).collect();
    matrices(n, m, domain)
        .map(|entrance| {
            Problem::new(museums.clone(), holders.clone(), price.clone(), entrance)
                .expect("enumerated problems are well formed")
        })
        .collect()
}

/// Every problem under `cfg`, in the canonical sweep order.
pub fn problems(cfg: &EnumerationConfig) -> impl Iterator<Item = Problem> + '_ {
    cfg.prices.iter().flat_map(move |price| {
        (1..=cfg.m_max).flat_map(move |m| {
            (1..=cfg.n_max).flat_map(move |n| problems_of_size(price, m, n, cfg.domain, 1))
        })
    })
}
