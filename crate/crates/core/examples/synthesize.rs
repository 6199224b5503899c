//! Solve for the rules an axiom set leaves, at the level of single-holder
//! tables.

use museum_pass::lab::{synthesize, AdditiveRuleTable, Synthesis};
use museum_pass::{Axiom, Domain, Rational, Rule};

fn show(label: &str, s: &Synthesis) {
    match s {
        Synthesis::Unique { table } => {
            println!("{label}: unique");
            for (pattern, a) in table.entries() {
                println!("    {pattern:?} -> {a}");
            }
        }
        Synthesis::Family { constraints } => {
            println!("{label}: family");
            for c in &constraints.patterns {
                println!("    {:?}: {} <= x <= {}", c.pattern, c.lo, c.hi);
            }
        }
        Synthesis::Infeasible { witness } => println!("{label}: infeasible, {witness}"),
    }
}

fn main() -> museum_pass::Result<()> {
    let one = Rational::one();
    let museums = [1, 2, 3];

    let s = synthesize(&[Axiom::Ete, Axiom::Dummy], &museums, &one, Domain::Reduced)?;
    show("ete + dummy, reduced", &s);
    let shapley = AdditiveRuleTable::from_rule(&Rule::Shapley, &museums, &one, Domain::Reduced)?;
    assert_eq!(s, Synthesis::Unique { table: shapley });

    show("ete + ivd, enlarged", &synthesize(&[Axiom::Ete, Axiom::Ivd], &museums, &one, Domain::Enlarged)?);
    show("ete + opd, reduced", &synthesize(&[Axiom::Ete, Axiom::Opd], &museums, &one, Domain::Reduced)?);
    show(
        "ete + dummy, enlarged",
        &synthesize(&[Axiom::Ete, Axiom::Dummy], &[1, 2], &Rational::new(1, 2), Domain::Enlarged)?,
    );
    Ok(())
}
