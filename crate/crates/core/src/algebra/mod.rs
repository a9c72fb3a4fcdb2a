//! Exact arithmetic: rationals, polynomials, matrices, gcd, cyclotomic
//! factors.

pub mod bilaurent;
pub mod cyclo;
pub mod gcd;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod unipoly;

pub use bilaurent::{BiLaurent, BiLaurentMatrix};
pub use cyclo::{CycloElem, CycloField};
pub use gcd::{gcd, gcd_all, squarefree_part};
pub use laurent::{LaurentMatrix, LaurentPoly};
pub use matrix::Matrix;
pub use poly::{Monomial, MultiPoly};
pub use rational::Rational;
pub use ring::{ExactDiv, Field, Ring};
pub use unipoly::{char_poly, cyclotomic, cyclotomic_split, euler_phi, UniPoly};

/// Square matrix of multivariate polynomials.
pub type PolyMatrix = Matrix<MultiPoly>;

/// Determinant of a polynomial matrix by fraction-free elimination.
pub fn det(m: &PolyMatrix) -> MultiPoly {
    m.det()
}
