//! Executable forms of the algebraic laws satisfied by `det(mu_u)`.

use super::element::{norm_element, AlgebraElement};
use crate::error::{Error, Result};
use crate::poly::{resultant, BasePolynomial, SpectralPoly};

/// `N(uv) = N(u) N(v)`.
pub fn norm_multiplicativity_check(
    s_a: &SpectralPoly,
    u: &AlgebraElement,
    v: &AlgebraElement,
) -> Result<bool> {
    let uv = u.mul(v)?;
    Ok(norm_element(s_a, &uv)? == &norm_element(s_a, u)? * &norm_element(s_a, v)?)
}

/// `N(lambda u) = lambda^n N(u)` for a base function `lambda`.
pub fn norm_scalar_check(
    s_a: &SpectralPoly,
    lambda: &BasePolynomial,
    u: &AlgebraElement,
) -> Result<bool> {
    let lhs = norm_element(s_a, &u.scale(lambda))?;
    Ok(lhs == &lambda.pow(s_a.n() as u32) * &norm_element(s_a, u)?)
}

/// On `R[t]/(p^m)` the norm of `u` is the `m`-th power of the norm of
/// `u mod p` on `R[t]/(p)`.
pub fn norm_power_law(p: &SpectralPoly, m: u32, u: &AlgebraElement) -> Result<bool> {
    let pm = p.pow(m)?;
    if u.parent() != &pm {
        return Err(Error::ParentMismatch);
    }
    let full = norm_element(&pm, u)?;
    let reduced = norm_element(p, &u.reduce_to(p)?)?;
    Ok(full == reduced.pow(m))
}

/// For coprime `s_b`, `s_c` the norm on `R[t]/(s_b s_c)` splits as a
/// product of the norms on the two factors.
pub fn norm_component_law(
    s_b: &SpectralPoly,
    s_c: &SpectralPoly,
    u: &AlgebraElement,
) -> Result<bool> {
    if resultant(&s_b.to_tpoly(), &s_c.to_tpoly()).is_zero() {
        return Err(Error::NotCoprime);
    }
    let s_a = s_b.product(s_c)?;
    if u.parent() != &s_a {
        return Err(Error::ParentMismatch);
    }
    let full = norm_element(&s_a, u)?;
    let split = &norm_element(s_b, &u.reduce_to(s_b)?)? * &norm_element(s_c, &u.reduce_to(s_c)?)?;
    Ok(full == split)
}

/// Norm of `u mod p^i` on `B_i = R[t]/(p^i)` for `u` in `R[t]/(p^k)`.
///
/// The result is checked against `N_{B_1}(u mod p)^i` before it is returned.
pub fn quasi_free_det(
    p: &SpectralPoly,
    k: u32,
    i: u32,
    u: &AlgebraElement,
) -> Result<BasePolynomial> {
    if i == 0 || i > k {
        return Err(Error::IndexOutOfRange {
            index: i as usize,
            max: k as usize,
        });
    }
    if u.parent() != &p.pow(k)? {
        return Err(Error::ParentMismatch);
    }
    let p_i = p.pow(i)?;
    let det = norm_element(&p_i, &u.reduce_to(&p_i)?)?;
    let reduced = norm_element(p, &u.reduce_to(p)?)?;
    if det != reduced.pow(i) {
        return Err(Error::InvariantViolation(format!(
            "determinant on B_{i} is {det}, expected ({reduced})^{i}"
        )));
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TPoly;

    fn b(c: &[i64]) -> BasePolynomial {
        BasePolynomial::from_ints(c)
    }

    fn sp(deg_m: usize, a: &[&[i64]]) -> SpectralPoly {
        SpectralPoly::new(deg_m, a.iter().map(|c| b(c)).collect()).unwrap()
    }

    fn elt(s: &SpectralPoly, c: &[&[i64]]) -> AlgebraElement {
        AlgebraElement::from_tpoly(s, &TPoly::new(c.iter().map(|x| b(x)).collect()))
    }

    #[test]
    fn multiplicativity_examples() {
        let s = sp(1, &[&[], &[0, 1], &[1]]);
        let one = AlgebraElement::one(&s);
        assert!(norm_multiplicativity_check(&s, &one, &one).unwrap());
        let u = elt(&s, &[&[1, 1], &[2], &[0, -1]]);
        let v = elt(&s, &[&[3], &[1, 1], &[1]]);
        assert!(norm_multiplicativity_check(&s, &u, &one).unwrap());
        assert!(norm_multiplicativity_check(&s, &u, &v).unwrap());
        assert!(norm_scalar_check(&s, &b(&[2, 1]), &u).unwrap());
    }

    #[test]
    fn power_law_examples() {
        let p = sp(1, &[&[0, -1]]); // t - x
        let p2 = p.pow(2).unwrap();
        let t = AlgebraElement::t(&p2);
        assert_eq!(norm_element(&p2, &t).unwrap(), b(&[0, 0, 1]));
        assert!(norm_power_law(&p, 2, &t).unwrap());
        assert!(norm_power_law(&p, 1, &AlgebraElement::t(&p)).unwrap());
        let q = sp(1, &[&[], &[0, -1]]); // t^2 - x
        let q2 = q.pow(2).unwrap();
        assert!(norm_power_law(&q, 2, &elt(&q2, &[&[1, 2], &[], &[3], &[0, 1]])).unwrap());
    }

    #[test]
    fn component_law_examples() {
        let sb = sp(0, &[&[-1]]);
        let sc = sp(0, &[&[1]]);
        let s = sb.product(&sc).unwrap();
        let t = AlgebraElement::t(&s);
        assert_eq!(norm_element(&s, &t).unwrap(), b(&[-1]));
        assert!(norm_component_law(&sb, &sc, &t).unwrap());
        assert!(norm_component_law(&sb, &sc, &AlgebraElement::one(&s)).unwrap());
        let sb = sp(1, &[&[0, -1]]);
        let sc = sp(1, &[&[], &[0, -1]]);
        let s = sb.product(&sc).unwrap();
        let u = elt(&s, &[&[2, 1], &[1], &[0, 3]]);
        assert!(norm_component_law(&sb, &sc, &u).unwrap());
        assert!(matches!(
            norm_component_law(&sb, &sb, &AlgebraElement::one(&sb.pow(2).unwrap())),
            Err(Error::NotCoprime)
        ));
    }

    #[test]
    fn quasi_free_examples() {
        let p = sp(2, &[&[0, 0, -1]]); // t - x^2
        let p3 = p.pow(3).unwrap();
        let u = elt(&p3, &[&[1], &[1]]);
        assert_eq!(quasi_free_det(&p, 3, 2, &u).unwrap(), b(&[1, 0, 1]).pow(2));
        assert_eq!(quasi_free_det(&p, 3, 1, &u).unwrap(), b(&[1, 0, 1]));
        assert_eq!(
            quasi_free_det(&p, 3, 3, &u).unwrap(),
            norm_element(&p3, &u).unwrap()
        );
        assert!(matches!(
            quasi_free_det(&p, 3, 4, &u),
            Err(Error::IndexOutOfRange { index: 4, max: 3 })
        ));
    }
}
