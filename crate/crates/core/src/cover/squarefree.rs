use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{SpectralPoly, TPoly};

/// `s = prod q_i^(m_i)` with the `q_i` squarefree and pairwise coprime in
/// `t` over `Q(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredSpectral {
    pub factors: Vec<(SpectralPoly, u32)>,
}

impl FactoredSpectral {
    pub fn reconstruct(&self) -> Result<SpectralPoly> {
        let mut it = self.factors.iter();
        let (q, m) = it
            .next()
            .ok_or_else(|| Error::InvalidInput("empty factorization".into()))?;
        it.try_fold(q.pow(*m)?, |acc, (q, m)| acc.product(&q.pow(*m)?))
    }

    /// Multiplicities in ascending order, one entry per block.
    pub fn multiplicity_profile(&self) -> Vec<(usize, u32)> {
        self.factors.iter().map(|(q, m)| (q.n(), *m)).collect()
    }
}

/// Squarefree decomposition in `t` (characteristic zero, so exact).
///
/// Every block is monic with polynomial coefficients, and inherits the
/// graded degree bounds of `s`; a block violating them is reported as an
/// invariant violation.
pub fn squarefree_decompose(s: &SpectralPoly) -> Result<FactoredSpectral> {
    let f = s.to_tpoly();
    let gcd = |a: &TPoly, b: &TPoly| {
        TPoly::gcd_monic(a, b).ok_or_else(|| {
            Error::InvariantViolation("gcd of monic polynomials is not monic over Q[x]".into())
        })
    };
    let div = |a: &TPoly, b: &TPoly| {
        a.exact_div_monic(b)
            .ok_or_else(|| Error::InvariantViolation("inexact division by a gcd".into()))
    };
    let mut a = gcd(&f, &f.derivative())?;
    let mut b = div(&f, &a)?;
    let mut factors = Vec::new();
    let mut i = 1u32;
    while b.degree().is_some_and(|d| d > 0) {
        let c = gcd(&a, &b)?;
        let q = div(&b, &c)?;
        if q.degree().is_some_and(|d| d > 0) {
            let block = SpectralPoly::from_tpoly(s.deg_m(), &q).map_err(|e| {
                Error::InvariantViolation(format!("squarefree block {q} breaks the bounds: {e}"))
            })?;
            factors.push((block, i));
        }
        a = div(&a, &c)?;
        b = c;
        i += 1;
    }
    let out = FactoredSpectral { factors };
    if &out.reconstruct()? != s {
        return Err(Error::InvariantViolation(
            "squarefree decomposition does not reconstruct its input".into(),
        ));
    }
    Ok(out)
}

/// Whether a monic divisor `factor` of `s` has `deg b_j <= j * deg_m` for
/// every coefficient.
pub fn verify_component_degree_bounds(s: &SpectralPoly, factor: &TPoly) -> Result<bool> {
    if !factor.is_monic() || factor.degree() == Some(0) {
        return Err(Error::DoesNotDivide);
    }
    if !s.to_tpoly().rem_monic(factor).is_zero() {
        return Err(Error::DoesNotDivide);
    }
    let l = factor.degree().unwrap();
    Ok((1..=l).all(|j| {
        factor
            .coeff(l - j)
            .degree()
            .is_none_or(|d| d <= j * s.deg_m())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::BasePolynomial;

    fn b(c: &[i64]) -> BasePolynomial {
        BasePolynomial::from_ints(c)
    }

    fn sp(deg_m: usize, a: &[&[i64]]) -> SpectralPoly {
        SpectralPoly::new(deg_m, a.iter().map(|c| b(c)).collect()).unwrap()
    }

    #[test]
    fn squarefree_input_is_one_block() {
        let s = sp(1, &[&[], &[0, -1]]);
        let f = squarefree_decompose(&s).unwrap();
        assert_eq!(f.factors, vec![(s, 1)]);
    }

    #[test]
    fn repeated_linear_factor() {
        let p = sp(1, &[&[0, -1]]);
        let f = squarefree_decompose(&p.pow(2).unwrap()).unwrap();
        assert_eq!(f.factors, vec![(p, 2)]);
    }

    #[test]
    fn mixed_multiplicities() {
        let q = sp(1, &[&[], &[0, -1]]); // t^2 - x
        let l = sp(1, &[&[-1]]); // t - 1
        let s = q.pow(2).unwrap().product(&l).unwrap();
        let f = squarefree_decompose(&s).unwrap();
        assert_eq!(f.factors, vec![(l, 1), (q, 2)]);
        assert_eq!(f.reconstruct().unwrap(), s);
        assert_eq!(f.multiplicity_profile(), vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn degree_bounds_on_factors() {
        let s = sp(1, &[&[], &[0, 0, -1]]); // (t - x)(t + x)
        for r in [1, -1] {
            let factor = TPoly::new(vec![b(&[0, r]), b(&[1])]);
            assert!(verify_component_degree_bounds(&s, &factor).unwrap());
        }
        let sqrt_x = sp(1, &[&[], &[0, -1]]);
        let bad = TPoly::new(vec![b(&[0, -1]), b(&[1])]);
        assert!(matches!(
            verify_component_degree_bounds(&sqrt_x, &bad),
            Err(Error::DoesNotDivide)
        ));
    }
}
