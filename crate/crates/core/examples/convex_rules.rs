//! Blending the uniform rule with a base rule, globally or per holder and
//! visit pattern.

use museum_pass::{Base, BetaProfile, Problem, Rational, Rule};

fn main() -> museum_pass::Result<()> {
    let p = Problem::from_rows(Rational::one(), &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0], &[0, 1, 0], &[0, 0, 0]])?;

    for beta in [Rational::zero(), Rational::new(1, 3), Rational::one()] {
        let rule = Rule::ScalarConvex { beta, base: Base::EqualAttribution };
        println!("{:<16} {}", rule.to_string(), rule.allocate(&p)?);
    }

    // Holder 2 is fully uniform, the one-museum visitors are half uniform.
    let profile = BetaProfile::constant(Rational::zero())?
        .with_holder(2, Rational::one())?
        .with_pattern([2].into(), Rational::new(1, 2))?;
    let rule = Rule::BetaFamily { profile, base: Base::EqualAttribution };
    println!("{:<16} {}", "profile", rule.allocate(&p)?);
    Ok(())
}
