//! Constructions from the characterization proofs, made executable.
//!
//! Every rule studied here is additive over holders, so it is determined by
//! its single-holder table: what one holder visiting a given set of museums
//! contributes to each museum. [`synthesize`] solves the conditions an axiom
//! set imposes on that table, [`decompose`] reads the convex coefficients
//! back off a table, and the remaining modules build the extremal instances
//! and the impossibility certificate.

mod bound;
mod certificate;
mod oracle;
mod synthesize;
mod table;

pub use bound::{bound_witness, tau_beta_bound, BoundWitness, MAX_EXTREMAL_MUSEUMS};
pub use certificate::{impossibility_certificate, InfeasibilityCertificate};
pub use oracle::{tu_shapley_oracle, ORACLE_MAX_MUSEUMS};
pub use synthesize::{synthesize, FamilyConstraints, InfeasibleWitness, PatternConstraint, Synthesis};
pub use table::{decompose, AdditiveRuleTable, BetaDecomposition, PatternBeta};
