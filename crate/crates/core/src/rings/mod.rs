//! Coefficient rings: Q, prime fields, extension fields, quotient algebras
//! and finite products, with polynomials over them.

pub mod factor;
pub mod linalg;
pub mod norm;
pub mod poly;
pub mod residue;
pub mod ring;
pub mod text;

pub use factor::{factor, Factorization, FactorConfig};
pub use linalg::Matrix;
pub use norm::algebra_norm;
pub use poly::Polynomial;
pub use residue::{crt_combine, is_unimodular, ReductionMap, Residue, ResidueData};
pub use ring::{Ring, RingElement, RingKind};
pub use text::{parse_element, parse_poly, parse_ring};
