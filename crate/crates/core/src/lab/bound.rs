use num_traits::ToPrimitive;
use serde::Serialize;

use crate::axioms::{audit, Axiom};
use crate::enumerate::{Domain, EnumerationConfig};
use crate::error::{Error, Result};
use crate::problem::{Label, Problem};
use crate::rational::Rational;
use crate::rules::{Base, Rule};

/// Largest extremal instance [`bound_witness`] will build.
pub const MAX_EXTREMAL_MUSEUMS: usize = 10_000;

fn check_unit(name: &str, value: &Rational) -> Result<()> {
    if value.in_unit_interval() {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("{name} = {value} must lie in [0, 1]")))
    }
}

/// Largest `beta` for which the scalar convex blend of uniform and Shapley
/// satisfies `tau`-order preservation on every problem with `n` holders:
/// `tau / (n + tau (1 - n))`.
pub fn tau_beta_bound(tau: &Rational, n: usize) -> Result<Rational> {
    check_unit("tau", tau)?;
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let nr = Rational::from(n);
    Ok(tau / (&nr + tau * (Rational::one() - &nr)))
}

/// A problem on which the scalar convex rule breaks `tau`-order
/// preservation: `dummy` gets `lhs`, more than `rhs = tau * R_museum`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundWitness {
    pub rule: String,
    pub problem: Problem,
    pub dummy: Label,
    pub museum: Label,
    pub lhs: Rational,
    pub rhs: Rational,
    pub gap: Rational,
    /// `true` when exhaustive search over small problems found it, `false`
    /// when it is the extremal instance built for the given `beta`.
    pub from_search: bool,
}

/// Extremal instance over `k` museums: holder 1 visits museums `1..k-1`,
/// the other holders visit museum 2 only, museum `k` is a dummy. Museum 1
/// has the smallest Shapley share a visited museum can have next to a dummy.
fn extremal(n: usize, k: usize) -> Result<Problem> {
    let mut rows = vec![(0..k).map(|i| i + 1 < k).collect::<Vec<bool>>()];
    rows.extend((1..n).map(|_| (0..k).map(|i| i == 1).collect()));
    Problem::new((1..=k as Label).collect(), (1..=n as Label).collect(), Rational::one(), rows)
}

/// Looks for a problem with `n` holders on which
/// `scalar_convex(beta, shapley)` violates `tau`-order preservation.
///
/// Reduced problems with up to `m` museums are searched exhaustively first.
/// If none violates and `beta` exceeds [`tau_beta_bound`], the extremal
/// instance with the fewest museums (at least `m`) that still violates is
/// built and checked. Returns `None` when `beta` is within the bound.
pub fn bound_witness(tau: &Rational, n: usize, m: usize, beta: &Rational) -> Result<Option<BoundWitness>> {
    check_unit("beta", beta)?;
    let bound = tau_beta_bound(tau, n)?;
    if m < 2 {
        return Err(Error::OutOfRange("m must be at least 2".into()));
    }
    let rule = Rule::ScalarConvex { beta: beta.clone(), base: Base::Shapley };
    let cfg = EnumerationConfig::new(m, n, Domain::Reduced).with_prices(vec![Rational::one()]);
    let verdict = audit(&rule, &Axiom::TauOpd(tau.clone()), &cfg)?;
    if let Some(w) = verdict.witness {
        let gap = &w.lhs - &w.rhs;
        return Ok(Some(BoundWitness {
            rule: rule.to_string(),
            problem: w.problems[0].clone(),
            dummy: w.museums[0],
            museum: w.museums[1],
            lhs: w.lhs,
            rhs: w.rhs,
            gap,
            from_search: true,
        }));
    }
    if beta <= &bound {
        return Ok(None);
    }

    // Violation on the extremal instance with k museums iff k * d > b n (1 - tau).
    let one = Rational::one();
    let lead = beta * Rational::from(n) * (&one - tau);
    let d = &lead - tau * (&one - beta);
    let threshold = (&lead / &d).numer().clone() / (&lead / &d).denom().clone();
    let k_star = threshold
        .to_usize()
        .and_then(|t| t.checked_add(1))
        .filter(|&k| k <= MAX_EXTREMAL_MUSEUMS)
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "beta = {beta} exceeds the bound {bound} by too little; the violating instance needs more than {MAX_EXTREMAL_MUSEUMS} museums"
            ))
        })?;
    let k = m.max(k_star).max(if n >= 2 { 3 } else { 2 });
    let problem = extremal(n, k)?;
    let a = rule.allocate(&problem)?;
    let (lhs, rhs) = (a.shares()[k - 1].clone(), tau * &a.shares()[0]);
    if lhs <= rhs {
        return Err(Error::InvalidProblem(format!(
            "extremal instance with {k} museums does not separate beta = {beta}"
        )));
    }
    Ok(Some(BoundWitness {
        rule: rule.to_string(),
        dummy: k as Label,
        museum: 1,
        gap: &lhs - &rhs,
        lhs,
        rhs,
        problem,
        from_search: false,
    }))
}
