//! Exact polynomial arithmetic over `Q[x]` and `Q[x][t]`.

mod base;
mod matrix;
mod rational;
mod roots;
mod spectral;
mod tpoly;

pub use base::BasePolynomial;
pub use matrix::{poly_determinant, poly_identity, poly_mat_mul, PolyMatrix};
pub use rational::{format_rational, parse_rational};
pub use roots::rational_roots;
pub use spectral::{SpectralPoly, SpectralPolyFile};
pub use tpoly::{resultant, TPoly};
