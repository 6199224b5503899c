//! Five pass holders, three museums: allocate the revenue under every rule.

use museum_pass::{Problem, Rational, Rule};

fn main() -> museum_pass::Result<()> {
    let p = Problem::from_rows(
        Rational::one(),
        &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0], &[0, 1, 0], &[0, 0, 0]],
    )?;
    let c = p.classify();
    println!("{p}");
    println!("visits per museum {:?}, dummy museums {:?}, null holders {:?}\n", c.counts.per_museum, c.dummy_museums, c.null_holders);

    for rule in Rule::named() {
        match rule.allocate(&p) {
            Ok(a) => println!("{:<13} {a}", rule.to_string()),
            Err(e) => println!("{:<13} {e}", rule.to_string()),
        }
    }

    // Dropping the null holder puts the problem on the reduced domain.
    let reduced = Problem::from_rows(Rational::one(), &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0], &[0, 1, 0]])?;
    println!("\nwithout holder 5: shapley {}", Rule::Shapley.allocate(&reduced)?);
    Ok(())
}
