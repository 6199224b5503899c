//! Read a visit log. The museum and holder lists make unvisited museums and
//! idle holders visible.

use museum_pass::io::{parse_csv, to_csv, to_json, CsvFrame};
use museum_pass::{Rational, Rule};

const LOG: &str = "\
holder,museum
1,1
2,1
2,2
3,2
4,2
4,2
";

fn main() -> museum_pass::Result<()> {
    let frame = CsvFrame { museums: vec![1, 2, 3], holders: vec![1, 2, 3, 4, 5], price: Rational::one() };
    let p = parse_csv(LOG.as_bytes(), &frame)?;
    let c = p.classify();
    println!("{p}\ndummy museums {:?}, null holders {:?}", c.dummy_museums, c.null_holders);
    println!("ea: {}", Rule::EqualAttribution.allocate(&p)?);

    assert_eq!(parse_csv(to_csv(&p).as_bytes(), &frame)?, p);
    println!("\n{}", to_json(&p));
    Ok(())
}
