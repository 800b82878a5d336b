//! Numeric relation detection among multiple zeta values.

pub mod congruence;
pub mod pslq;
pub mod span;
