//! Exact computations around spectral covers of curves: components of
//! Prym varieties, norm maps on spectral algebras, and the maps between
//! spectral characteristics used to describe endoscopic loci.

pub mod abelian;
pub mod cli;
pub mod cover;
pub mod error;
pub mod norm;
pub mod poly;
pub mod random;
pub mod spectral;

pub use error::{Error, Result};
