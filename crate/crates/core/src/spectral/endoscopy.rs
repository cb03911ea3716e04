//! Dimensions of endoscopic loci in the trace-free Hitchin base and the
//! codimension bound derived from them.

use serde::Serialize;

use crate::error::{Error, Result};

/// `dim A^0_Gamma = (n^2/d - 1)(g - 1)` for a cyclic `Gamma` of order `d | n`.
///
/// With `d = 1` this is the dimension `(n^2 - 1)(g - 1)` of the whole base.
pub fn endoscopic_dim(n: u64, d: u64, g: u64) -> Result<u64> {
    if d == 0 || n == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { d, n });
    }
    if g == 0 {
        return Err(Error::InvalidInput("genus must be positive".into()));
    }
    Ok((n * n / d - 1) * (g - 1))
}

pub fn smallest_prime_divisor(n: u64) -> Option<u64> {
    (2..=n).find(|p| n.is_multiple_of(*p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VariantBound {
    pub smallest_prime: u64,
    /// `c_n = n^2 (1 - 1/p_n)(g - 1)`
    pub codimension: u64,
    /// `2 c_n`
    pub bound: u64,
}

pub fn variant_bound(n: u64, g: u64) -> Result<VariantBound> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let p = smallest_prime_divisor(n).expect("n >= 2");
    let codimension = n * n / p
        * (p - 1)
        * g.checked_sub(1)
            .ok_or_else(|| Error::InvalidInput("genus must be positive".into()))?;
    let via_dims = endoscopic_dim(n, 1, g)? - endoscopic_dim(n, p, g)?;
    if via_dims != codimension {
        return Err(Error::InvariantViolation(format!(
            "c_n = {codimension} but the dimension difference is {via_dims}"
        )));
    }
    Ok(VariantBound {
        smallest_prime: p,
        codimension,
        bound: 2 * codimension,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoscopyReport {
    pub n: u64,
    pub g: u64,
    /// `(d, dim A^0_Gamma)` for every divisor `d` of `n`, ascending.
    pub dims: Vec<(u64, u64)>,
    pub codimension: u64,
    pub bound: u64,
}

pub fn endoscopy_report(n: u64, g: u64) -> Result<EndoscopyReport> {
    let vb = variant_bound(n, g)?;
    let dims = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| endoscopic_dim(n, d, g).map(|dim| (d, dim)))
        .collect::<Result<Vec<_>>>()?;
    let top = dims[0].1;
    let largest_prime_locus = dims
        .iter()
        .filter(|(d, _)| smallest_prime_divisor(*d) == Some(*d))
        .map(|&(_, dim)| dim)
        .max()
        .expect("n >= 2 has a prime divisor");
    debug_assert_eq!(top - largest_prime_locus, vb.codimension);
    Ok(EndoscopyReport {
        n,
        g,
        dims,
        codimension: vb.codimension,
        bound: vb.bound,
    })
}
