//! Trace translation and the power and product maps between spectral
//! bases.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::SpectralPoly;

/// Substitutes `t -> t - a_1/n`, killing the `t^(n-1)` coefficient.
pub fn trace_translate(s: &SpectralPoly) -> Result<SpectralPoly> {
    if s.is_trace_free() {
        return Ok(s.clone());
    }
    let shift = s.a(1).scale(&BigRational::new((-1).into(), s.n().into()));
    let out = SpectralPoly::from_tpoly(s.deg_m(), &s.to_tpoly().shift_t(&shift))?;
    if !out.is_trace_free() {
        return Err(Error::InvariantViolation(format!(
            "translation of {s} left a_1 = {}",
            out.a(1)
        )));
    }
    Ok(out)
}

/// `s_b^k`
pub fn phi_k(s_b: &SpectralPoly, k: u32) -> Result<SpectralPoly> {
    s_b.pow(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairImage {
    pub product: SpectralPoly,
    /// `b_1 + c_1 = 0`
    pub trace_zero: bool,
}

/// `s_b * s_c`, with the trace-zero relation on the pair.
pub fn phi_pair(s_b: &SpectralPoly, s_c: &SpectralPoly) -> Result<PairImage> {
    let product = s_b.product(s_c)?;
    let trace_zero = (&s_b.a(1) + &s_c.a(1)).is_zero();
    if trace_zero != product.is_trace_free() {
        return Err(Error::InvariantViolation(
            "a_1 of the product differs from b_1 + c_1".into(),
        ));
    }
    Ok(PairImage {
        product,
        trace_zero,
    })
}
