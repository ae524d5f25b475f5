//! Numeric foundations: tolerance-aware float comparison, exact rationals,
//! and exact arithmetic in the golden field.

mod golden;
mod rational;
mod tolerance;

pub use golden::{fibonacci, GoldenNumber, PHI};
pub use rational::Rational;
pub use tolerance::Tolerance;
