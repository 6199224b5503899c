//! How far towards uniform a blend with Shapley can go while a dummy museum
//! still gets at most tau times any visited museum.

use museum_pass::lab::{bound_witness, tau_beta_bound};
use museum_pass::Rational;

fn main() -> museum_pass::Result<()> {
    let taus = [Rational::zero(), Rational::new(1, 4), Rational::new(1, 2), Rational::new(3, 4), Rational::one()];
    for n in 1..=4 {
        let row: Vec<String> = taus.iter().map(|t| tau_beta_bound(t, n).map(|b| format!("{:>5}", b.to_string()))).collect::<Result<_, _>>()?;
        println!("n = {n}: {}", row.join(" "));
    }

    let tau = Rational::new(1, 2);
    let bound = tau_beta_bound(&tau, 2)?;
    println!("\ntau = {tau}, n = 2, bound {bound}");
    println!("beta = bound: {:?}", bound_witness(&tau, 2, 3, &bound)?.map(|w| w.problem));
    let beta = &bound + Rational::new(1, 100);
    if let Some(w) = bound_witness(&tau, 2, 3, &beta)? {
        println!(
            "beta = {beta}: {} museums needed, dummy {} gets {} > {} (gap {})",
            w.problem.m(),
            w.dummy,
            w.lhs,
            w.rhs,
            w.gap
        );
    }
    Ok(())
}
