//! Decides fullness, separability and natural fullness of the functors
//! attached to ring maps, bimodules, corings and coring morphisms over
//! finite-dimensional algebras over a prime field.
//!
//! Every decision is an exact linear-algebra computation over `F_p`, and
//! every positive verdict carries a witness that the [`oracle`] module
//! re-checks against the functor's defining equations.

pub mod algebra;
pub mod bimodfunc;
pub mod cli;
pub mod corings;
pub mod cormor;
pub mod error;
pub mod exactla;
pub mod modrep;
pub mod oracle;
pub mod report;
pub mod scalars;

pub use error::{Error, Result, Violation};
