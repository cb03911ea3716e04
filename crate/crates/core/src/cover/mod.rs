//! Structure of spectral polynomials: multiplicity profiles, translation,
//! the power and product maps, and descent along a double cover.

mod galois;
mod groebner;
mod maps;
mod split;
mod squarefree;

pub use galois::{
    galois_pushforward, pullback_splits, CoverFile, DoubleCoverData, TwistedCoeff, TwistedFile,
    TwistedSpectralPoly,
};
pub use groebner::{groebner, rational_solutions, MPoly};
pub use maps::{phi_k, phi_pair, trace_translate, PairImage};
pub use squarefree::{squarefree_decompose, verify_component_degree_bounds, FactoredSpectral};
