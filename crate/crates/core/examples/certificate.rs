//! No rule gives dummies at most tau < 1 times a visited museum's share
//! while also ignoring how visits are distributed.

use museum_pass::lab::impossibility_certificate;
use museum_pass::{Rational, Rule};

fn main() -> museum_pass::Result<()> {
    let tau = Rational::new(1, 2);
    let cert = impossibility_certificate(&tau)?.expect("tau < 1");
    println!("{}", serde_json::to_string_pretty(&cert)?);
    assert!(cert.verify());

    for rule in [Rule::Uniform, Rule::EqualAttribution, Rule::ConditionalEqualAttribution, Rule::R5] {
        if let Some((axiom, v)) = cert.refute(&rule)? {
            let w = v.witness.expect("failures carry witnesses");
            println!("{rule}: fails {axiom}, {} {} {} required", w.lhs, w.relation, w.rhs);
        }
    }
    println!("tau = 1: {:?}", impossibility_certificate(&Rational::one())?);
    Ok(())
}
