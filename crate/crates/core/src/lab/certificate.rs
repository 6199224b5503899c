use serde::Serialize;

use crate::axioms::{check_ivd, check_opd, Axiom, Verdict};
use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::rational::Rational;
use crate::rules::Rule;

/// Proof that no rule satisfies both `tau`-order preservation with dummies
/// and independence of visits distribution when `tau < 1`.
///
/// Two holders, two museums, price 1/2. `P0` has no visits, `P1` has both
/// holders at museum 1, `P2` both at museum 2. Write `(x1, x2)`, `(y1, y2)`
/// and `(z1, z2)` for the three allocations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfeasibilityCertificate {
    pub tau: Rational,
    pub problems: Vec<Problem>,
    pub equalities: Vec<String>,
    pub inequalities: Vec<String>,
    pub gap: Rational,
}

fn problems() -> Result<Vec<Problem>> {
    let half = Rational::new(1, 2);
    Ok(vec![
        Problem::from_rows(half.clone(), &[&[0, 0], &[0, 0]])?,
        Problem::from_rows(half.clone(), &[&[1, 0], &[1, 0]])?,
        Problem::from_rows(half, &[&[0, 1], &[0, 1]])?,
    ])
}

fn gap(tau: &Rational) -> Rational {
    Rational::one() - Rational::from_int(2) * tau / (Rational::one() + tau)
}

/// The certificate for `tau < 1`; `None` at `tau = 1`, where the uniform
/// rule satisfies both axioms.
pub fn impossibility_certificate(tau: &Rational) -> Result<Option<InfeasibilityCertificate>> {
    if !tau.in_unit_interval() {
        return Err(Error::OutOfRange(format!("tau = {tau} must lie in [0, 1]")));
    }
    if *tau == Rational::one() {
        return Ok(None);
    }
    let cap = tau / (Rational::one() + tau);
    let sum = Rational::from_int(2) * &cap;
    Ok(Some(InfeasibilityCertificate {
        tau: tau.clone(),
        problems: problems()?,
        equalities: vec![
            "x1 + x2 = 1, y1 + y2 = 1, z1 + z2 = 1 (each allocation sums to 2 * 1/2)".into(),
            "y2 = x2 (museum 2 is a dummy in P0 and P1)".into(),
            "z1 = x1 (museum 1 is a dummy in P0 and P2)".into(),
        ],
        inequalities: vec![
            format!("y2 <= {tau} * y1, so x2 <= {tau} * (1 - x2) and x2 <= {cap}"),
            format!("z1 <= {tau} * z2, so x1 <= {tau} * (1 - x1) and x1 <= {cap}"),
            format!("x1 + x2 <= {sum} < 1"),
        ],
        gap: gap(tau),
    }))
}

impl InfeasibilityCertificate {
    /// Re-derives the certificate's facts: the problem shapes, the dummies
    /// the equalities rely on, and the gap.
    pub fn verify(&self) -> bool {
        let Ok(expected) = problems() else { return false };
        let dummies = |p: &Problem| p.classify().dummy_museums;
        self.problems == expected
            && dummies(&self.problems[0]) == [1, 2].into()
            && dummies(&self.problems[1]) == [2].into()
            && dummies(&self.problems[2]) == [1].into()
            && self.tau.in_unit_interval()
            && self.gap == gap(&self.tau)
            && self.gap.is_positive()
    }

    /// Runs the four checks the proof uses and returns the first that
    /// `rule` fails. Any rule defined on the three problems fails one.
    pub fn refute(&self, rule: &Rule) -> Result<Option<(Axiom, Verdict)>> {
        let [p0, p1, p2] = self.problems.as_slice() else {
            return Err(Error::InvalidProblem("certificate needs three problems".into()));
        };
        let checks = [
            (Axiom::Ivd, check_ivd(rule, p0, p1)?),
            (Axiom::Ivd, check_ivd(rule, p0, p2)?),
            (Axiom::TauOpd(self.tau.clone()), check_opd(rule, p1, &self.tau)?),
            (Axiom::TauOpd(self.tau.clone()), check_opd(rule, p2, &self.tau)?),
        ];
        Ok(checks.into_iter().find(|(_, v)| !v.passed()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaps() {
        let c = impossibility_certificate(&Rational::new(1, 2)).unwrap().unwrap();
        assert_eq!(c.gap, Rational::new(1, 3));
        assert!(c.verify());
        let c = impossibility_certificate(&Rational::zero()).unwrap().unwrap();
        assert_eq!(c.gap, Rational::one());
        assert!(impossibility_certificate(&Rational::one()).unwrap().is_none());
        assert!(impossibility_certificate(&Rational::new(2, 1)).is_err());
    }

    #[test]
    fn every_rule_is_refuted() {
        let c = impossibility_certificate(&Rational::new(3, 4)).unwrap().unwrap();
        for rule in [Rule::Uniform, Rule::EqualAttribution, Rule::R5, Rule::ConditionalEqualAttribution] {
            assert!(c.refute(&rule).unwrap().is_some(), "{rule}");
        }
        let (axiom, _) = c.refute(&Rule::Uniform).unwrap().unwrap();
        assert_eq!(axiom, Axiom::TauOpd(Rational::new(3, 4)));
        let (axiom, _) = c.refute(&Rule::EqualAttribution).unwrap().unwrap();
        assert_eq!(axiom, Axiom::Ivd);
    }

    #[test]
    fn json_shape() {
        let c = impossibility_certificate(&Rational::new(1, 2)).unwrap().unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["tau"], "1/2");
        assert_eq!(v["gap"], "1/3");
        assert_eq!(v["problems"].as_array().unwrap().len(), 3);
    }
}
