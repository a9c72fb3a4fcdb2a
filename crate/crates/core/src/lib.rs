//! Exact algebra for logarithmic flat connections: Saito freeness, monodromy
//! decompositions, Birkhoff splitting, toric filtrations and castling.

pub mod algebra;
pub mod birkhoff;
pub mod castling;
pub mod error;
pub mod filtrations;
pub mod jordan;
pub mod json;
pub mod saito;

pub use algebra::{
    Field, LaurentMatrix, LaurentPoly, Matrix, Monomial, MultiPoly, PolyMatrix, Rational, Ring,
    UniPoly,
};
pub use error::{Error, Result};
