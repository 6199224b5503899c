//! Allocation rules.
//!
//! Every rule maps a [`Problem`] to an [`Allocation`]: non-negative shares
//! summing to `n * price`. Rules that only make sense when every holder
//! visited something (the Shapley rule and the families built on it) return
//! [`Error::Domain`] on problems with null holders.
//!
//! The free functions are the rules themselves; [`Rule`] names a rule (with
//! its parameters) so it can be passed around, parsed from a CLI string and
//! audited.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::{Allocation, DomainTag, Label, MuseumSet, Problem};
use crate::rational::Rational;

/// The rule a convex family blends with the uniform rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Base {
    #[serde(rename = "sh")]
    Shapley,
    #[serde(rename = "ea")]
    EqualAttribution,
}

impl Base {
    pub fn allocate(self, p: &Problem) -> Result<Allocation> {
        match self {
            Base::Shapley => shapley(p),
            Base::EqualAttribution => Ok(equal_attribution(p)),
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Base::Shapley => "sh",
            Base::EqualAttribution => "ea",
        }
    }
}

impl FromStr for Base {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sh" | "shapley" => Ok(Base::Shapley),
            "ea" | "equal-attribution" => Ok(Base::EqualAttribution),
            other => Err(Error::Parse(format!("unknown base rule `{other}` (expected `sh` or `ea`)"))),
        }
    }
}

/// Per-holder, per-visit-pattern blending coefficients.
///
/// Lookup order for holder `a` with visit pattern `S`: an explicit
/// `(a, S)` override, then a per-holder constant, then a per-pattern value,
/// then the default.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BetaProfile {
    default: Rational,
    per_holder: BTreeMap<Label, Rational>,
    per_pattern: BTreeMap<MuseumSet, Rational>,
    overrides: BTreeMap<(Label, MuseumSet), Rational>,
}

fn unit(beta: &Rational, what: &str) -> Result<()> {
    if beta.in_unit_interval() {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("{what} = {beta} must lie in [0, 1]")))
    }
}

impl BetaProfile {
    pub fn constant(beta: Rational) -> Result<Self> {
        unit(&beta, "beta")?;
        Ok(BetaProfile {
            default: beta,
            per_holder: BTreeMap::new(),
            per_pattern: BTreeMap::new(),
            overrides: BTreeMap::new(),
        })
    }

    pub fn with_holder(mut self, holder: Label, beta: Rational) -> Result<Self> {
        unit(&beta, "beta")?;
        self.per_holder.insert(holder, beta);
        Ok(self)
    }

    pub fn with_pattern(mut self, pattern: MuseumSet, beta: Rational) -> Result<Self> {
        unit(&beta, "beta")?;
        self.per_pattern.insert(pattern, beta);
        Ok(self)
    }

    pub fn with_override(mut self, holder: Label, pattern: MuseumSet, beta: Rational) -> Result<Self> {
        unit(&beta, "beta")?;
        self.overrides.insert((holder, pattern), beta);
        Ok(self)
    }

    pub fn coefficient(&self, holder: Label, pattern: &MuseumSet) -> &Rational {
        self.overrides
            .get(&(holder, pattern.clone()))
            .or_else(|| self.per_holder.get(&holder))
            .or_else(|| self.per_pattern.get(pattern))
            .unwrap_or(&self.default)
    }

    pub fn default_coefficient(&self) -> &Rational {
        &self.default
    }

    /// `true` when no holder or pattern deviates from the default.
    pub fn is_constant(&self) -> bool {
        self.per_holder.values().all(|b| *b == self.default)
            && self.per_pattern.values().all(|b| *b == self.default)
            && self.overrides.values().all(|b| *b == self.default)
    }
}

/// A rule together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Uniform,
    Proportional,
    Shapley,
    EqualAttribution,
    ConditionalEqualAttribution,
    ProportionalAttribution,
    /// Holder-by-holder blend of uniform and `base` with coefficients from
    /// the profile.
    BetaFamily { profile: BetaProfile, base: Base },
    /// `beta * uniform + (1 - beta) * base`.
    ScalarConvex { beta: Rational, base: Base },
    /// Each pass goes to the lowest-labelled museum its holder visited.
    R1,
    /// Each pass is split over the museums its holder did not visit.
    R2,
    /// Every pass goes to the lowest-labelled museum overall.
    R5,
    /// Extra `epsilon` weight on unvisited museums.
    REpsilon(Rational),
    /// Holder-specific constant coefficients over the Shapley rule (default 0).
    R3(BTreeMap<Label, Rational>),
    /// Pattern-dependent coefficients over the Shapley rule (default 0).
    R4(BTreeMap<MuseumSet, Rational>),
}

impl Rule {
    pub fn allocate(&self, p: &Problem) -> Result<Allocation> {
        match self {
            Rule::Uniform => Ok(uniform(p)),
            Rule::Proportional => Ok(proportional(p)),
            Rule::Shapley => shapley(p),
            Rule::EqualAttribution => Ok(equal_attribution(p)),
            Rule::ConditionalEqualAttribution => Ok(conditional_equal_attribution(p)),
            Rule::ProportionalAttribution => Ok(proportional_attribution(p)),
            Rule::BetaFamily { profile, base } => beta_family(p, profile, *base),
            Rule::ScalarConvex { beta, base } => scalar_convex(p, beta, *base),
            Rule::R1 => Ok(r1(p)),
            Rule::R2 => Ok(r2(p)),
            Rule::R5 => Ok(r5(p)),
            Rule::REpsilon(eps) => r_epsilon(p, eps),
            Rule::R3(constants) => r3(p, constants),
            Rule::R4(mapping) => r4(p, mapping),
        }
    }

    /// `true` when the rule rejects problems with null holders.
    pub fn reduced_only(&self) -> bool {
        match self {
            Rule::Shapley | Rule::REpsilon(_) | Rule::R3(_) | Rule::R4(_) => true,
            Rule::BetaFamily { base, .. } | Rule::ScalarConvex { base, .. } => *base == Base::Shapley,
            _ => false,
        }
    }

    /// The rules with no parameters, in the order reports list them.
    pub fn named() -> Vec<Rule> {
        vec![
            Rule::Uniform,
            Rule::Proportional,
            Rule::Shapley,
            Rule::EqualAttribution,
            Rule::ConditionalEqualAttribution,
            Rule::ProportionalAttribution,
            Rule::R1,
            Rule::R2,
            Rule::R5,
        ]
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Uniform => f.write_str("uniform"),
            Rule::Proportional => f.write_str("proportional"),
            Rule::Shapley => f.write_str("shapley"),
            Rule::EqualAttribution => f.write_str("ea"),
            Rule::ConditionalEqualAttribution => f.write_str("cea"),
            Rule::ProportionalAttribution => f.write_str("pa"),
            Rule::BetaFamily { profile, base } if profile.is_constant() => {
                write!(f, "beta-family:{}:{}", profile.default, base.token())
            }
            Rule::BetaFamily { base, .. } => write!(f, "beta-family:<profile>:{}", base.token()),
            Rule::ScalarConvex { beta, base } => write!(f, "convex:{beta}:{}", base.token()),
            Rule::R1 => f.write_str("r1"),
            Rule::R2 => f.write_str("r2"),
            Rule::R5 => f.write_str("r5"),
            Rule::REpsilon(eps) => write!(f, "reps:{eps}"),
            Rule::R3(constants) => {
                f.write_str("r3:")?;
                let parts: Vec<String> = constants.iter().map(|(a, b)| format!("{a}={b}")).collect();
                f.write_str(&parts.join(","))
            }
            Rule::R4(mapping) => {
                f.write_str("r4:")?;
                let parts: Vec<String> = mapping
                    .iter()
                    .map(|(set, b)| {
                        let labels: Vec<String> = set.iter().map(|l| l.to_string()).collect();
                        format!("{}={b}", labels.join("+"))
                    })
                    .collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for Rule {
    type Err = Error;

    /// Parses `uniform`, `proportional`, `shapley`, `ea`, `cea`, `pa`,
    /// `convex:<beta>:<sh|ea>`, `r1`, `r2`, `r5`, `reps:<eps>`,
    /// `r3:<holder>=<beta>,...` and `r4:<m1+m2+...>=<beta>,...`.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let lower = text.to_ascii_lowercase();
        let rule = match lower.as_str() {
            "uniform" | "u" => Rule::Uniform,
            "proportional" | "p" => Rule::Proportional,
            "shapley" | "sh" => Rule::Shapley,
            "ea" => Rule::EqualAttribution,
            "cea" => Rule::ConditionalEqualAttribution,
            "pa" => Rule::ProportionalAttribution,
            "r1" => Rule::R1,
            "r2" => Rule::R2,
            "r5" => Rule::R5,
            _ => {
                let (head, rest) = lower
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("unknown rule `{text}`")))?;
                match head {
                    "convex" => {
                        let (beta, base) = rest.rsplit_once(':').ok_or_else(|| {
                            Error::Parse(format!("`{text}`: expected convex:<beta>:<sh|ea>"))
                        })?;
                        let beta: Rational = beta.parse()?;
                        unit(&beta, "beta")?;
                        Rule::ScalarConvex { beta, base: base.parse()? }
                    }
                    "reps" => {
                        let eps: Rational = rest.parse()?;
                        if !eps.is_positive() {
                            return Err(Error::OutOfRange(format!("epsilon = {eps} must be positive")));
                        }
                        Rule::REpsilon(eps)
                    }
                    "r3" => {
                        let mut constants = BTreeMap::new();
                        for (key, beta) in assignments(rest)? {
                            let holder: Label = key
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad holder label `{key}`")))?;
                            constants.insert(holder, beta);
                        }
                        Rule::R3(constants)
                    }
                    "r4" => {
                        let mut mapping = BTreeMap::new();
                        for (key, beta) in assignments(rest)? {
                            let set = key
                                .split('+')
                                .map(|l| {
                                    l.trim()
                                        .parse::<Label>()
                                        .map_err(|_| Error::Parse(format!("bad museum label `{l}`")))
                                })
                                .collect::<Result<MuseumSet>>()?;
                            mapping.insert(set, beta);
                        }
                        Rule::R4(mapping)
                    }
                    _ => return Err(Error::Parse(format!("unknown rule `{text}`"))),
                }
            }
        };
        Ok(rule)
    }
}

fn assignments(list: &str) -> Result<Vec<(String, Rational)>> {
    list.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
            let beta: Rational = value.parse()?;
            unit(&beta, "beta")?;
            Ok((key.trim().to_string(), beta))
        })
        .collect()
}

fn require_reduced(p: &Problem, rule: &str) -> Result<()> {
    let c = p.classify();
    match c.tag {
        DomainTag::Reduced => Ok(()),
        DomainTag::EnlargedOnly => Err(Error::Domain {
            rule: rule.to_string(),
            holders: c.null_holders,
        }),
    }
}

/// Splits one pass price equally over the museums its holder visited.
/// The row must contain at least one visit.
fn split_over_visited(row: &[bool], price: &Rational) -> Vec<Rational> {
    let visits = row.iter().filter(|&&b| b).count();
    let share = price / Rational::from(visits);
    row.iter()
        .map(|&b| if b { share.clone() } else { Rational::zero() })
        .collect()
}

fn split_evenly(m: usize, amount: &Rational) -> Vec<Rational> {
    vec![amount / Rational::from(m); m]
}

/// Splits `amount` proportionally to `weights` (which must not all be zero).
fn split_by_weights(weights: &[usize], amount: &Rational) -> Vec<Rational> {
    let total: usize = weights.iter().sum();
    weights
        .iter()
        .map(|&w| amount * Rational::from(w) / Rational::from(total))
        .collect()
}

fn sum_rows(p: &Problem, mut per_row: impl FnMut(&[bool]) -> Vec<Rational>) -> Allocation {
    let mut total = Allocation::zeros(p.m());
    for row in p.entrance() {
        total.add_assign(&Allocation::new(per_row(row)));
    }
    total
}

/// Every museum gets `n * price / m`.
pub fn uniform(p: &Problem) -> Allocation {
    Allocation::new(split_evenly(p.m(), &p.revenue()))
}

/// Revenue split in proportion to museum visit counts; uniform when nobody
/// visited anything.
pub fn proportional(p: &Problem) -> Allocation {
    if p.is_zero_matrix() {
        return uniform(p);
    }
    Allocation::new(split_by_weights(&p.visit_counts().per_museum, &p.revenue()))
}

/// Each pass price split equally over the museums its holder visited.
/// Defined only on the reduced domain.
pub fn shapley(p: &Problem) -> Result<Allocation> {
    require_reduced(p, "shapley")?;
    Ok(sum_rows(p, |row| split_over_visited(row, p.price())))
}

/// Shapley split for visiting holders, equal split over all museums for
/// null holders.
pub fn equal_attribution(p: &Problem) -> Allocation {
    let m = p.m();
    sum_rows(p, |row| {
        if row.contains(&true) {
            split_over_visited(row, p.price())
        } else {
            split_evenly(m, p.price())
        }
    })
}

/// Like [`equal_attribution`] but null holders' passes go to the non-dummy
/// museums only.
pub fn conditional_equal_attribution(p: &Problem) -> Allocation {
    if p.is_zero_matrix() {
        return uniform(p);
    }
    let counts = p.visit_counts();
    let non_dummy: Vec<bool> = counts.per_museum.iter().map(|&e| e > 0).collect();
    sum_rows(p, |row| {
        if row.contains(&true) {
            split_over_visited(row, p.price())
        } else {
            split_over_visited(&non_dummy, p.price())
        }
    })
}

/// Like [`equal_attribution`] but null holders' passes follow the museums'
/// visit counts.
pub fn proportional_attribution(p: &Problem) -> Allocation {
    if p.is_zero_matrix() {
        return uniform(p);
    }
    let counts = p.visit_counts();
    sum_rows(p, |row| {
        if row.contains(&true) {
            split_over_visited(row, p.price())
        } else {
            split_by_weights(&counts.per_museum, p.price())
        }
    })
}

/// Sum over holders of `beta_a(M_a) * uniform + (1 - beta_a(M_a)) * base`,
/// each term evaluated on the holder's single-row problem.
pub fn beta_family(p: &Problem, profile: &BetaProfile, base: Base) -> Result<Allocation> {
    if base == Base::Shapley {
        require_reduced(p, "beta-family:sh")?;
    }
    // single-holder Shapley and EA coincide: split over visited museums
    let even = Allocation::new(split_evenly(p.m(), p.price()));
    let mut total = Allocation::zeros(p.m());
    for (a, &holder) in p.holders().iter().enumerate() {
        let row = &p.entrance()[a];
        let beta = profile.coefficient(holder, &p.visited(a));
        let base_term = if row.contains(&true) {
            Allocation::new(split_over_visited(row, p.price()))
        } else {
            even.clone()
        };
        total.add_assign(&even.blend(beta, &base_term));
    }
    Ok(total)
}

/// `beta * uniform + (1 - beta) * base`.
pub fn scalar_convex(p: &Problem, beta: &Rational, base: Base) -> Result<Allocation> {
    unit(beta, "beta")?;
    let base_alloc = base.allocate(p)?;
    Ok(uniform(p).blend(beta, &base_alloc))
}

/// Each holder's pass goes to the lowest-labelled museum they visited; a
/// null holder's pass is split uniformly.
pub fn r1(p: &Problem) -> Allocation {
    let m = p.m();
    sum_rows(p, |row| match row.iter().position(|&b| b) {
        Some(first) => {
            let mut shares = vec![Rational::zero(); m];
            shares[first] = p.price().clone();
            shares
        }
        None => split_evenly(m, p.price()),
    })
}

/// Each holder's pass is split over the museums they did not visit; split
/// over all museums when they visited all or none.
pub fn r2(p: &Problem) -> Allocation {
    let m = p.m();
    sum_rows(p, |row| {
        let visits = row.iter().filter(|&&b| b).count();
        if visits == 0 || visits == m {
            split_evenly(m, p.price())
        } else {
            let unvisited: Vec<bool> = row.iter().map(|&b| !b).collect();
            split_over_visited(&unvisited, p.price())
        }
    })
}

/// All revenue to the lowest-labelled museum.
pub fn r5(p: &Problem) -> Allocation {
    let mut shares = vec![Rational::zero(); p.m()];
    shares[0] = p.revenue();
    Allocation::new(shares)
}

/// Per holder: each unvisited museum gets `(1 + eps) * price / m`, each
/// visited one `(m - (m - e) (1 + eps)) * price / (m e)`. Needs
/// `0 < eps < 1/(m - 1)` and no null holders.
pub fn r_epsilon(p: &Problem, eps: &Rational) -> Result<Allocation> {
    if !eps.is_positive() {
        return Err(Error::OutOfRange(format!("epsilon = {eps} must be positive")));
    }
    let m = p.m();
    if m > 1 && *eps >= Rational::new(1, m as i64 - 1) {
        return Err(Error::OutOfRange(format!(
            "epsilon = {eps} must be below 1/(m-1) = 1/{} for m = {m}",
            m - 1
        )));
    }
    require_reduced(p, &format!("reps:{eps}"))?;
    let m_r = Rational::from(m);
    let lifted = Rational::one() + eps;
    let unvisited_share = &lifted / &m_r * p.price();
    Ok(sum_rows(p, |row| {
        let e = row.iter().filter(|&&b| b).count();
        let visited_share = (&m_r - Rational::from(m - e) * &lifted) / (&m_r * Rational::from(e)) * p.price();
        row.iter()
            .map(|&b| if b { visited_share.clone() } else { unvisited_share.clone() })
            .collect()
    }))
}

/// Holder-specific constants over the Shapley rule; unlisted holders use 0.
pub fn r3(p: &Problem, constants: &BTreeMap<Label, Rational>) -> Result<Allocation> {
    let mut profile = BetaProfile::constant(Rational::zero())?;
    for (&holder, beta) in constants {
        profile = profile.with_holder(holder, beta.clone())?;
    }
    require_reduced(p, "r3")?;
    beta_family(p, &profile, Base::Shapley)
}

/// Visit-pattern coefficients over the Shapley rule; unlisted patterns use 0.
pub fn r4(p: &Problem, mapping: &BTreeMap<MuseumSet, Rational>) -> Result<Allocation> {
    let mut profile = BetaProfile::constant(Rational::zero())?;
    for (pattern, beta) in mapping {
        profile = profile.with_pattern(pattern.clone(), beta.clone())?;
    }
    require_reduced(p, "r4")?;
    beta_family(p, &profile, Base::Shapley)
}
