//! Exact quadratic-form algebra over semilocal rings: Witt decomposition,
//! isotropy search, constructive odd-degree descent of isotropic vectors and
//! Hensel lifting from residue fields.

pub mod clifford;
pub mod descent;
pub mod error;
pub mod forms;
pub mod lifting;
pub mod par;
pub mod rings;
pub mod search;
pub mod witt;

pub use error::{Error, Result};
pub use par::Parallelism;
