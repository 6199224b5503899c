//! The Shapley rule equals the Shapley value of the game where a coalition
//! of museums is worth the price times the number of holders visiting it.

use museum_pass::enumerate::{problems, Domain, EnumerationConfig};
use museum_pass::lab::tu_shapley_oracle;
use museum_pass::{Problem, Rational, Rule};

fn main() -> museum_pass::Result<()> {
    let p = Problem::from_rows(Rational::one(), &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0], &[0, 1, 0]])?;
    println!("game value {}", tu_shapley_oracle(&p)?);
    println!("rule       {}", Rule::Shapley.allocate(&p)?);

    let cfg = EnumerationConfig::new(4, 3, Domain::Reduced);
    let mut agree = 0;
    for p in problems(&cfg) {
        assert_eq!(tu_shapley_oracle(&p)?, Rule::Shapley.allocate(&p)?, "{p}");
        agree += 1;
    }
    println!("agree on all {agree} reduced problems with m <= 4, n <= 3");
    Ok(())
}
