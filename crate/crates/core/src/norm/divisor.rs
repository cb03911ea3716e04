//! Divisors supported on rational points of a spectral cover and their
//! pushforward to the base.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::element::{norm_element, AlgebraElement};
use crate::error::{Error, Result};
use crate::poly::{format_rational, parse_rational, BasePolynomial, SpectralPoly};

/// Formal sum of rational points `(x0, t0)` of the cover.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointDivisor {
    pub points: Vec<((BigRational, BigRational), i64)>,
}

impl PointDivisor {
    pub fn new(points: Vec<((BigRational, BigRational), i64)>) -> Self {
        Self { points }
    }

    /// Checks that every point satisfies `s_a(x0, t0) = 0`.
    pub fn validate(&self, s_a: &SpectralPoly) -> Result<()> {
        let s = s_a.to_tpoly();
        for ((x, t), _) in &self.points {
            if !s.eval(x, t).is_zero() {
                return Err(Error::PointNotOnCover {
                    x: format_rational(x),
                    t: format_rational(t),
                });
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointEntry {
    x: String,
    t: String,
    multiplicity: i64,
}

impl Serialize for PointDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.points
            .iter()
            .map(|((x, t), m)| PointEntry {
                x: format_rational(x),
                t: format_rational(t),
                multiplicity: *m,
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointDivisor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<PointEntry>::deserialize(d)?;
        let points = raw
            .into_iter()
            .map(|e| {
                let x = parse_rational(&e.x).map_err(serde::de::Error::custom)?;
                let t = parse_rational(&e.t).map_err(serde::de::Error::custom)?;
                Ok(((x, t), e.multiplicity))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(Self { points })
    }
}

/// Pushforward to the base: drop `t`, merge equal `x0`, drop zero weights.
/// Sorted by `x0`.
pub fn norm_divisor(s_a: &SpectralPoly, d: &PointDivisor) -> Result<Vec<(BigRational, i64)>> {
    d.validate(s_a)?;
    let mut acc: BTreeMap<BigRational, i64> = BTreeMap::new();
    for ((x, _), m) in &d.points {
        *acc.entry(x.clone()).or_insert(0) += m;
    }
    Ok(acc.into_iter().filter(|&(_, m)| m != 0).collect())
}

/// Whether the cover has a singular point (possibly irrational) over `x0`,
/// i.e. `s`, `ds/dt` and `ds/dx` have a common root in the fibre.
pub fn singular_over(s_a: &SpectralPoly, x0: &BigRational) -> bool {
    let s = s_a.to_tpoly();
    let g = [s.derivative(), s.derivative_x()]
        .iter()
        .fold(s.at_x(x0), |g, p| BasePolynomial::gcd(&g, &p.at_x(x0)));
    g.degree().is_some_and(|d| d > 0)
}

/// Compares the vanishing order of `det(mu_u)` at each sample `x0` with the
/// pushforward of the zero divisor `d_u` of `u`.
///
/// `d_u` lists the zeros of `u` on the fibres over `samples` with their
/// local orders on the cover. At a ramified smooth point this is the order
/// in the local parameter of the cover, so `t` on `t^2 = x` contributes 1
/// at the origin, matching `ord_0(-x) = 1`.
pub fn norm_consistency_check(
    s_a: &SpectralPoly,
    u: &AlgebraElement,
    d_u: &PointDivisor,
    samples: &[BigRational],
) -> Result<bool> {
    let det = norm_element(s_a, u)?;
    if det.is_zero() {
        return Err(Error::InvalidInput("u is a zero divisor in B".into()));
    }
    for x0 in samples {
        if singular_over(s_a, x0) {
            return Err(Error::SingularFibre(format_rational(x0)));
        }
    }
    if let Some(((x, _), _)) = d_u.points.iter().find(|((x, _), _)| !samples.contains(x)) {
        return Err(Error::InvalidInput(format!(
            "divisor point over x = {} is not a sampled fibre",
            format_rational(x)
        )));
    }
    let pushed: BTreeMap<_, _> = norm_divisor(s_a, d_u)?.into_iter().collect();
    Ok(samples.iter().all(|x0| {
        let ord = det.order_at(x0).unwrap_or(0) as i64;
        ord == pushed.get(x0).copied().unwrap_or(0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{resultant, TPoly};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn b(c: &[i64]) -> BasePolynomial {
        BasePolynomial::from_ints(c)
    }

    fn sqrt_x() -> SpectralPoly {
        SpectralPoly::new(1, vec![b(&[]), b(&[0, -1])]).unwrap()
    }

    fn pd(pts: &[(i64, i64, i64)]) -> PointDivisor {
        PointDivisor::new(pts.iter().map(|&(x, t, m)| ((q(x), q(t)), m)).collect())
    }

    #[test]
    fn pushforward_examples() {
        let s = sqrt_x();
        assert!(norm_divisor(&s, &PointDivisor::default())
            .unwrap()
            .is_empty());
        assert_eq!(
            norm_divisor(&s, &pd(&[(1, 1, 2)])).unwrap(),
            vec![(q(1), 2)]
        );
        assert_eq!(
            norm_divisor(&s, &pd(&[(1, 1, 1), (1, -1, 1)])).unwrap(),
            vec![(q(1), 2)]
        );
        assert_eq!(
            norm_divisor(&s, &pd(&[(1, 1, 1), (1, -1, -1)])).unwrap(),
            vec![]
        );
        assert!(matches!(
            norm_divisor(&s, &pd(&[(2, 1, 1)])),
            Err(Error::PointNotOnCover { .. })
        ));
    }

    #[test]
    fn consistency_examples() {
        let s = sqrt_x();
        let samples = [q(0), q(1), q(4)];
        let one = AlgebraElement::one(&s);
        assert!(norm_consistency_check(&s, &one, &PointDivisor::default(), &samples).unwrap());
        // t vanishes to order 1 at the ramification point
        let t = AlgebraElement::t(&s);
        assert!(norm_consistency_check(&s, &t, &pd(&[(0, 0, 1)]), &samples).unwrap());
        assert!(!norm_consistency_check(&s, &t, &pd(&[(0, 0, 2)]), &samples).unwrap());
        let u = AlgebraElement::from_tpoly(&s, &TPoly::new(vec![b(&[-1]), b(&[1])]));
        assert!(norm_consistency_check(&s, &u, &pd(&[(1, 1, 1)]), &samples).unwrap());
        assert!(!norm_consistency_check(&s, &u, &PointDivisor::default(), &samples).unwrap());
    }

    #[test]
    fn hand_built_resultant_cases() {
        // (s, U, fibre points of U with orders)
        let s = sqrt_x();
        let cases: Vec<(TPoly, PointDivisor)> = vec![
            (TPoly::t(), pd(&[(0, 0, 1)])),
            (TPoly::new(vec![b(&[-1]), b(&[1])]), pd(&[(1, 1, 1)])),
            (TPoly::new(vec![b(&[-2]), b(&[1])]), pd(&[(4, 2, 1)])),
            (
                TPoly::new(vec![b(&[0, -1]), b(&[1])]),
                pd(&[(0, 0, 1), (1, 1, 1)]),
            ),
            (
                TPoly::new(vec![b(&[-1]), b(&[]), b(&[0, 0, 1])]),
                pd(&[(1, 1, 1), (1, -1, 1)]),
            ),
        ];
        let samples = [q(0), q(1), q(4)];
        for (p, d) in cases {
            let u = AlgebraElement::from_tpoly(&s, &p);
            let det = norm_element(&s, &u).unwrap();
            assert_eq!(det, resultant(&s.to_tpoly(), &p));
            assert!(norm_consistency_check(&s, &u, &d, &samples).unwrap(), "{p}");
        }
    }

    #[test]
    fn singular_fibres_are_rejected() {
        // t^2 = x^2 is a node over 0
        let s = SpectralPoly::new(1, vec![b(&[]), b(&[0, 0, -1])]).unwrap();
        assert!(singular_over(&s, &q(0)));
        assert!(!singular_over(&sqrt_x(), &q(0)));
        let one = AlgebraElement::one(&s);
        assert!(matches!(
            norm_consistency_check(&s, &one, &PointDivisor::default(), &[q(0)]),
            Err(Error::SingularFibre(_))
        ));
    }

    #[test]
    fn json_shape() {
        let d = pd(&[(1, -1, 2)]);
        let js = serde_json::to_string(&d).unwrap();
        assert_eq!(js, r#"[{"x":"1","t":"-1","multiplicity":2}]"#);
        assert_eq!(serde_json::from_str::<PointDivisor>(&js).unwrap(), d);
    }
}
