//! Spectral data on the double cover `D: y^2 = f(x)` and its descent to the
//! base.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::maps::trace_translate;
use super::split::split_trace_free;
use crate::error::{Error, Result};
use crate::poly::{BasePolynomial, SpectralPoly, TPoly};

/// The cover `y^2 = f(x)` with `f` squarefree of positive degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoverFile", into = "CoverFile")]
pub struct DoubleCoverData {
    f: BasePolynomial,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub f: BasePolynomial,
}

impl DoubleCoverData {
    pub fn new(f: BasePolynomial) -> Result<Self> {
        if f.degree().is_none_or(|d| d == 0) {
            return Err(Error::InvalidInput("f must have positive degree".into()));
        }
        if BasePolynomial::gcd(&f, &f.derivative()).degree() != Some(0) {
            return Err(Error::InvalidInput(format!("f = {f} is not squarefree")));
        }
        Ok(Self { f })
    }

    pub fn f(&self) -> &BasePolynomial {
        &self.f
    }

    /// Bounds `(deg u_j, deg v_j)` for `b_j = u_j + y v_j` to be a section of
    /// the `j`-th power of the pulled-back line bundle.
    ///
    /// At infinity `y` has pole order `deg f / 2` relative to `x`, so
    /// `y v_j` is bounded by `j deg_m` exactly when
    /// `2 deg v_j + deg f <= 2 j deg_m`. `None` means `v_j` must vanish.
    pub fn coefficient_bounds(&self, deg_m: usize, j: usize) -> (usize, Option<usize>) {
        let df = self.f.degree().unwrap();
        let v = (2 * j * deg_m).checked_sub(df).map(|r| r / 2);
        (j * deg_m, v)
    }
}

impl TryFrom<CoverFile> for DoubleCoverData {
    type Error = Error;

    fn try_from(c: CoverFile) -> Result<Self> {
        Self::new(c.f)
    }
}

impl From<DoubleCoverData> for CoverFile {
    fn from(d: DoubleCoverData) -> Self {
        Self { f: d.f }
    }
}

/// `s_b = t^m + b_1 t^(m-1) + ... + b_m` with `b_j = u_j + y v_j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TwistedFile", into = "TwistedFile")]
pub struct TwistedSpectralPoly {
    deg_m: usize,
    u: Vec<BasePolynomial>,
    v: Vec<BasePolynomial>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistedFile {
    pub m: usize,
    pub deg_m: usize,
    pub coeffs: Vec<TwistedCoeff>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistedCoeff {
    pub u: BasePolynomial,
    pub v: BasePolynomial,
}

impl TwistedSpectralPoly {
    pub fn new(deg_m: usize, u: Vec<BasePolynomial>, v: Vec<BasePolynomial>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        if u.is_empty() {
            return Err(Error::InvalidInput("twisted polynomial of degree 0".into()));
        }
        Ok(Self { deg_m, u, v })
    }

    fn from_parts(deg_m: usize, m: usize, big_u: &TPoly, big_v: &TPoly) -> Result<Self> {
        Self::new(
            deg_m,
            (1..=m).map(|j| big_u.coeff(m - j)).collect(),
            (1..=m).map(|j| big_v.coeff(m - j)).collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.u.len()
    }

    pub fn deg_m(&self) -> usize {
        self.deg_m
    }

    pub fn u(&self) -> &[BasePolynomial] {
        &self.u
    }

    pub fn v(&self) -> &[BasePolynomial] {
        &self.v
    }

    /// `U = t^m + sum u_j t^(m-j)`
    pub fn invariant_part(&self) -> TPoly {
        let m = self.m();
        let mut c: Vec<_> = (0..m).map(|i| self.u[m - 1 - i].clone()).collect();
        c.push(BasePolynomial::one());
        TPoly::new(c)
    }

    /// `V = sum v_j t^(m-j)`
    pub fn anti_invariant_part(&self) -> TPoly {
        let m = self.m();
        TPoly::new((0..m).map(|i| self.v[m - 1 - i].clone()).collect())
    }

    /// The conjugate under `y -> -y`.
    pub fn conjugate(&self) -> Self {
        Self {
            deg_m: self.deg_m,
            u: self.u.clone(),
            v: self.v.iter().map(|p| -p).collect(),
        }
    }

    pub fn check_bounds(&self, cover: &DoubleCoverData) -> Result<()> {
        for j in 1..=self.m() {
            let (ub, vb) = cover.coefficient_bounds(self.deg_m, j);
            if let Some(d) = self.u[j - 1].degree().filter(|&d| d > ub) {
                return Err(Error::DegreeBound {
                    index: j,
                    degree: d,
                    bound: ub,
                });
            }
            if let Some(d) = self.v[j - 1].degree() {
                if vb.is_none_or(|b| d > b) {
                    return Err(Error::DegreeBound {
                        index: j,
                        degree: d,
                        bound: vb.unwrap_or(0),
                    });
                }
            }
        }
        Ok(())
    }

    fn degree_profile(&self) -> Vec<(Option<usize>, Option<usize>)> {
        self.u
            .iter()
            .zip(&self.v)
            .map(|(u, v)| (u.degree(), v.degree()))
            .collect()
    }
}

impl TryFrom<TwistedFile> for TwistedSpectralPoly {
    type Error = Error;

    fn try_from(f: TwistedFile) -> Result<Self> {
        if f.coeffs.len() != f.m {
            return Err(Error::DimensionMismatch {
                expected: f.m,
                found: f.coeffs.len(),
            });
        }
        let (u, v) = f.coeffs.into_iter().map(|c| (c.u, c.v)).unzip();
        Self::new(f.deg_m, u, v)
    }
}

impl From<TwistedSpectralPoly> for TwistedFile {
    fn from(s: TwistedSpectralPoly) -> Self {
        Self {
            m: s.m(),
            deg_m: s.deg_m,
            coeffs: s
                .u
                .into_iter()
                .zip(s.v)
                .map(|(u, v)| TwistedCoeff { u, v })
                .collect(),
        }
    }
}

impl std::fmt::Debug for TwistedSpectralPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}) + y*({})",
            self.invariant_part(),
            self.anti_invariant_part()
        )
    }
}

/// `(A, B)` stands for `A + y B` in `Q[x][y]/(y^2 - f)`, with `A, B` in `t`.
fn quad_mul(f: &BasePolynomial, a: (&TPoly, &TPoly), b: (&TPoly, &TPoly)) -> (TPoly, TPoly) {
    let even = &(a.0 * b.0) + &(a.1 * b.1).scale(f);
    let odd = &(a.0 * b.1) + &(a.1 * b.0);
    (even, odd)
}

/// `s_b * s_b^sigma` reduced modulo `y^2 = f`, as a polynomial on the base.
pub fn galois_pushforward(
    cover: &DoubleCoverData,
    s_b: &TwistedSpectralPoly,
) -> Result<SpectralPoly> {
    s_b.check_bounds(cover)?;
    let u = s_b.invariant_part();
    let v = s_b.anti_invariant_part();
    let (even, odd) = quad_mul(cover.f(), (&u, &v), (&u, &-&v));
    if !odd.is_zero() {
        return Err(Error::ResidualY);
    }
    SpectralPoly::from_tpoly(s_b.deg_m, &even)
}

fn first_nonzero_v_is_negative(b: &TwistedSpectralPoly) -> bool {
    b.v()
        .iter()
        .flat_map(|p| p.coeffs().iter())
        .find(|c| !c.is_zero())
        .is_some_and(Signed::is_negative)
}

/// Decides whether `s_a` is a pushforward from the double cover, returning a
/// preimage `s_b` if so.
///
/// Among all preimages the one with the smallest degree profile is
/// returned, normalized so that the first nonzero coefficient of the
/// `y`-part is positive (this picks one of `s_b`, `s_b^sigma`).
pub fn pullback_splits(
    cover: &DoubleCoverData,
    s_a: &SpectralPoly,
) -> Result<Option<TwistedSpectralPoly>> {
    let n = s_a.n();
    if n % 2 == 1 {
        return Err(Error::OddDegree(n));
    }
    let m = n / 2;
    let shift = s_a.a(1).scale(&BigRational::new((-1).into(), n.into()));
    let translated = trace_translate(s_a)?;
    let mut candidates = Vec::new();
    for (u, v) in split_trace_free(cover, &translated)? {
        let back = -&shift;
        let b =
            TwistedSpectralPoly::from_parts(s_a.deg_m(), m, &u.shift_t(&back), &v.shift_t(&back))?;
        let b = if first_nonzero_v_is_negative(&b) {
            b.conjugate()
        } else {
            b
        };
        if galois_pushforward(cover, &b)? != *s_a {
            return Err(Error::InvariantViolation(format!(
                "solver produced {b:?} whose pushforward differs from the input"
            )));
        }
        candidates.push(b);
    }
    candidates.sort_by_cached_key(|b| (b.degree_profile(), serde_json::to_string(b).unwrap()));
    candidates.dedup();
    Ok(candidates.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(c: &[i64]) -> BasePolynomial {
        BasePolynomial::from_ints(c)
    }

    fn sp(deg_m: usize, a: &[&[i64]]) -> SpectralPoly {
        SpectralPoly::new(deg_m, a.iter().map(|c| b(c)).collect()).unwrap()
    }

    fn tw(deg_m: usize, u: &[&[i64]], v: &[&[i64]]) -> TwistedSpectralPoly {
        TwistedSpectralPoly::new(
            deg_m,
            u.iter().map(|c| b(c)).collect(),
            v.iter().map(|c| b(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn cover_validation() {
        assert!(DoubleCoverData::new(b(&[-1, 0, 1])).is_ok());
        assert!(DoubleCoverData::new(b(&[1, 2, 1])).is_err());
        assert!(DoubleCoverData::new(b(&[3])).is_err());
        let js = serde_json::to_string(&DoubleCoverData::new(b(&[0, 1])).unwrap()).unwrap();
        assert_eq!(js, r#"{"f":["0","1"]}"#);
    }

    #[test]
    fn pushforward_examples() {
        let cover = DoubleCoverData::new(b(&[-1, 0, 1])).unwrap();
        // t - y
        let s = galois_pushforward(&cover, &tw(1, &[&[]], &[&[-1]])).unwrap();
        assert_eq!(s, sp(1, &[&[], &[1, 0, -1]]));
        // invariant input collapses to a square
        let s = galois_pushforward(&cover, &tw(1, &[&[0, -1]], &[&[]])).unwrap();
        assert_eq!(s, sp(1, &[&[0, -1]]).pow(2).unwrap());
        let bb = tw(1, &[&[1, 1], &[2]], &[&[3], &[0, 1]]);
        let s = galois_pushforward(&cover, &bb).unwrap();
        assert_eq!(s.a(1), b(&[2, 2]));
        assert!(galois_pushforward(&cover, &tw(1, &[&[]], &[&[0, 1]])).is_err());
    }

    #[test]
    fn splitting_examples() {
        let cover = DoubleCoverData::new(b(&[-1, 0, 1])).unwrap();
        let s = sp(1, &[&[], &[1, 0, -1]]);
        let found = pullback_splits(&cover, &s).unwrap().unwrap();
        assert_eq!(found, tw(1, &[&[]], &[&[1]]));
        assert!(pullback_splits(&cover, &sp(1, &[&[], &[0, -1]]))
            .unwrap()
            .is_none());
        assert!(matches!(
            pullback_splits(&cover, &sp(1, &[&[1]])),
            Err(Error::OddDegree(1))
        ));
    }

    #[test]
    fn splitting_round_trip() {
        let cover = DoubleCoverData::new(b(&[2, 1])).unwrap();
        for bb in [
            tw(1, &[&[1, 1], &[2]], &[&[], &[1]]),
            tw(
                1,
                &[&[0, 1], &[1, 0, 2], &[0, 0, 0, 1]],
                &[&[1], &[0, 1], &[1, 1, 1]],
            ),
        ] {
            let s = galois_pushforward(&cover, &bb).unwrap();
            let found = pullback_splits(&cover, &s)
                .unwrap()
                .expect("image is recognized");
            assert_eq!(galois_pushforward(&cover, &found).unwrap(), s);
        }
    }
}
