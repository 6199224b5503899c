use crate::error::{Error, Result};
use crate::problem::{Allocation, Problem};
use crate::rational::Rational;

/// Largest museum count the subset formula accepts.
pub const ORACLE_MAX_MUSEUMS: usize = 12;

/// Shapley value of the TU game `v(S) = price * #{holders visiting S}`,
/// from the subset formula with exact factorial weights.
pub fn tu_shapley_oracle(p: &Problem) -> Result<Allocation> {
    let m = p.m();
    if m > ORACLE_MAX_MUSEUMS {
        return Err(Error::TooLarge(format!(
            "the subset formula handles at most {ORACLE_MAX_MUSEUMS} museums, got {m}"
        )));
    }
    let masks: Vec<u32> = p
        .entrance()
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, &b)| b).fold(0, |acc, (i, _)| acc | 1 << i))
        .collect();
    let worth: Vec<usize> = (0..1u32 << m)
        .map(|s| masks.iter().filter(|&&mask| mask & s != 0).count())
        .collect();

    let factorial = |k: usize| -> i64 { (1..=k as i64).product() };
    let weights: Vec<Rational> = (0..m)
        .map(|s| Rational::new(factorial(s) * factorial(m - s - 1), factorial(m)))
        .collect();

    let shares = (0..m)
        .map(|i| {
            let bit = 1u32 << i;
            let marginal: Rational = (0..1u32 << m)
                .filter(|s| s & bit == 0)
                .filter(|&s| worth[(s | bit) as usize] != worth[s as usize])
                .map(|s| {
                    let gain = worth[(s | bit) as usize] - worth[s as usize];
                    &weights[s.count_ones() as usize] * Rational::from(gain)
                })
                .sum();
            marginal * p.price()
        })
        .collect();
    Ok(Allocation::new(shares))
}
