//! Recover per-pattern convex coefficients from a rule's single-holder table.

use museum_pass::lab::{decompose, AdditiveRuleTable};
use museum_pass::{Base, BetaProfile, Domain, Rational, Rule};

fn main() -> museum_pass::Result<()> {
    let museums = [1, 2, 3];
    let profile = BetaProfile::constant(Rational::new(1, 4))?
        .with_pattern([1].into(), Rational::new(3, 5))?
        .with_pattern([2, 3].into(), Rational::one())?;
    let rule = Rule::BetaFamily { profile, base: Base::Shapley };

    let table = AdditiveRuleTable::from_rule(&rule, &museums, &Rational::one(), Domain::Reduced)?;
    for b in decompose(&table, Base::Shapley)?.patterns {
        let x = b.unvisited.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
        let y = b.visited.map(|y| y.to_string()).unwrap_or_else(|| "-".into());
        let note = if b.determined { "" } else { " (any beta fits)" };
        println!("{:<10} x = {x:<5} y = {y:<5} beta = {}{note}", format!("{:?}", b.pattern), b.beta);
    }

    // R2 sends passes to unvisited museums, so its coefficients exceed 1.
    let r2 = AdditiveRuleTable::from_rule(&Rule::R2, &museums, &Rational::one(), Domain::Reduced)?;
    let d = decompose(&r2, Base::Shapley);
    println!("\nr2: {}", match d {
        Ok(d) => format!("all coefficients in [0, 1]: {}", d.all_in_unit_interval()),
        Err(e) => e.to_string(),
    });
    Ok(())
}
