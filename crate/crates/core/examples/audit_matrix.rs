//! Which axioms the counterexample rules satisfy, checked exhaustively on
//! small problems. Each failure prints its witness.

use std::collections::BTreeMap;

use museum_pass::{audit, Axiom, Domain, EnumerationConfig, Rational, Rule};

fn main() -> museum_pass::Result<()> {
    let r3 = Rule::R3(BTreeMap::from([(1, Rational::zero()), (2, Rational::one())]));
    let r4 = Rule::R4(BTreeMap::from([([1].into(), Rational::one())]));
    let rules = [
        (Rule::R1, Domain::Reduced),
        (Rule::Proportional, Domain::Reduced),
        (Rule::R2, Domain::Reduced),
        (r3, Domain::Reduced),
        (r4, Domain::Reduced),
        (Rule::REpsilon(Rational::new(1, 4)), Domain::Reduced),
        (Rule::R5, Domain::Enlarged),
        (Rule::EqualAttribution, Domain::Enlarged),
    ];
    let axioms = [Axiom::Ete, Axiom::RevenueAdditivity, Axiom::Opd, Axiom::HolderAnonymity, Axiom::Ivd];

    for (rule, domain) in &rules {
        let cfg = EnumerationConfig::new(3, 2, *domain);
        let mut line = format!("{:<20}", rule.to_string());
        let mut failures = Vec::new();
        for axiom in &axioms {
            let v = audit(rule, axiom, &cfg)?;
            line.push_str(&format!(" {axiom} {}", if v.passed() { "ok" } else { "FAIL" }));
            failures.extend(v.witness.map(|w| (axiom.clone(), w)));
        }
        println!("{line}");
        if let Some((axiom, w)) = failures.first() {
            println!("  first {axiom} witness: {w}\n");
        }
    }
    Ok(())
}
