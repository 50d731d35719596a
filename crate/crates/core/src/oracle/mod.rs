//! Brute-force verification: per-object fullness, splittings materialized
//! on finite families, and the seeded equivalence suite.

pub mod adjunction;
pub mod composition;
pub mod family;
pub mod random;
pub mod suite;
