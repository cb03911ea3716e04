//! Exact rational roots of univariate polynomials, found by Sturm-sequence
//! bisection and confirmed by evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::base::BasePolynomial;

fn sign_changes(seq: &[BasePolynomial], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sturm_sequence(p: &BasePolynomial) -> Vec<BasePolynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    while let Some(last) = seq.last().filter(|q| q.degree().is_some_and(|d| d > 0)) {
        let r = seq[seq.len() - 2].div_rem(last).1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

/// Rescales to a primitive polynomial with integer coefficients.
fn integer_primitive(p: &BasePolynomial) -> Vec<BigInt> {
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Distinct rational roots in increasing order. The zero polynomial has
/// none by convention.
pub fn rational_roots(p: &BasePolynomial) -> Vec<BigRational> {
    if p.degree().is_none_or(|d| d == 0) {
        return vec![];
    }
    let sqf = p
        .exact_div(&BasePolynomial::gcd(p, &p.derivative()))
        .expect("gcd divides");
    let ints = integer_primitive(&sqf);
    let lc = ints.last().unwrap().abs();
    let bound = ints[..ints.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default()
        .div_ceil(&lc)
        + BigInt::one();
    let seq = sturm_sequence(&sqf);
    let lc_q = BigRational::from_integer(lc.clone());
    let mut roots = Vec::new();
    let mut stack = vec![(
        BigRational::from_integer(-&bound),
        BigRational::from_integer(bound),
    )];
    while let Some((a, b)) = stack.pop() {
        let count = sign_changes(&seq, &a) - sign_changes(&seq, &b);
        if count == 0 {
            continue;
        }
        if count > 1 {
            let mid = (&a + &b) / BigRational::from_integer(2.into());
            stack.push((a, mid.clone()));
            stack.push((mid, b));
            continue;
        }
        // one simple root in (a, b]; lc * root is an integer if it is rational
        let (mut a, mut b) = (a, b);
        loop {
            if sqf.eval(&b).is_zero() {
                roots.push(b);
                break;
            }
            if (&b - &a) * &lc_q < BigRational::one() {
                let cand = BigRational::new((&b * &lc_q).floor().to_integer(), lc.clone());
                if cand > a && sqf.eval(&cand).is_zero() {
                    roots.push(cand);
                }
                break;
            }
            let mid = (&a + &b) / BigRational::from_integer(2.into());
            if sign_changes(&seq, &a) - sign_changes(&seq, &mid) == 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn finds_rational_roots_only() {
        // (3x - 2)(x + 5)^2 (x^2 - 2)
        let p = &(&BasePolynomial::from_ints(&[-2, 3])
            * &BasePolynomial::from_ints(&[5, 1]).pow(2))
            * &BasePolynomial::from_ints(&[-2, 0, 1]);
        assert_eq!(rational_roots(&p), vec![q(-5, 1), q(2, 3)]);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(rational_roots(&BasePolynomial::zero()).is_empty());
        assert!(rational_roots(&BasePolynomial::from_ints(&[4])).is_empty());
        assert_eq!(
            rational_roots(&BasePolynomial::from_ints(&[0, 0, 7])),
            vec![q(0, 1)]
        );
        assert!(rational_roots(&BasePolynomial::from_ints(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn close_roots_with_large_denominators() {
        let p = &BasePolynomial::new(vec![q(-1000, 1001), BigRational::one()])
            * &BasePolynomial::new(vec![q(-1001, 1002), BigRational::one()]);
        assert_eq!(rational_roots(&p), vec![q(1000, 1001), q(1001, 1002)]);
    }
}
