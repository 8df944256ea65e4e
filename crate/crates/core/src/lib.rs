//! Minimal free resolutions of products of transverse monomial ideals.

pub mod complex;
pub mod dg;
pub mod error;
pub mod exterior;
pub mod field;
pub mod golod;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod obstruction;
mod par;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod strand;

pub use complex::{BettiTable, GradedFreeComplex};
pub use error::{Error, Result};
pub use field::{Field, Scalar, DEFAULT_PRIME};
pub use ideal::MonomialIdeal;
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ring::Ring;
