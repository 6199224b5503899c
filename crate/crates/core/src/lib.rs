pub mod axioms;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod lab;
pub mod problem;
pub mod rational;
pub mod rules;

pub use axioms::{audit, Axiom, Verdict, Witness};
pub use enumerate::{Domain, EnumerationConfig};
pub use error::{Error, Result};
pub use problem::{Allocation, Label, MuseumSet, Problem};
pub use rational::Rational;
pub use rules::{Base, BetaProfile, Rule};
