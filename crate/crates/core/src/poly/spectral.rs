use std::fmt;

use serde::{Deserialize, Serialize};

use super::base::BasePolynomial;
use super::tpoly::TPoly;
use crate::error::{Error, Result};

/// Monic `s_a = t^n + a_1 t^(n-1) + ... + a_n` with `deg a_j <= j * deg_m`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpectralPolyFile", into = "SpectralPolyFile")]
pub struct SpectralPoly {
    deg_m: usize,
    coeffs: Vec<BasePolynomial>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralPolyFile {
    pub n: usize,
    pub deg_m: usize,
    pub coeffs: Vec<BasePolynomial>,
}

impl SpectralPoly {
    /// `coeffs` lists `a_1, ..., a_n`.
    pub fn new(deg_m: usize, coeffs: Vec<BasePolynomial>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "spectral polynomial of degree 0".into(),
            ));
        }
        for (i, a) in coeffs.iter().enumerate() {
            let j = i + 1;
            if let Some(d) = a.degree() {
                if d > j * deg_m {
                    return Err(Error::DegreeBound {
                        index: j,
                        degree: d,
                        bound: j * deg_m,
                    });
                }
            }
        }
        Ok(Self { deg_m, coeffs })
    }

    /// Reads `a_j` off a monic polynomial in `t`.
    pub fn from_tpoly(deg_m: usize, p: &TPoly) -> Result<Self> {
        let n = p
            .degree()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::InvalidInput("polynomial has no positive t-degree".into()))?;
        if !p.is_monic() {
            return Err(Error::InvalidInput("polynomial is not monic in t".into()));
        }
        Self::new(deg_m, (1..=n).map(|j| p.coeff(n - j)).collect())
    }

    /// `(t - r_1)...(t - r_n)` for polynomial roots `r_i` of degree `<= deg_m`.
    pub fn from_roots(deg_m: usize, roots: &[BasePolynomial]) -> Result<Self> {
        let p = roots.iter().fold(TPoly::one(), |acc, r| {
            &acc * &TPoly::new(vec![-r, BasePolynomial::one()])
        });
        Self::from_tpoly(deg_m, &p)
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn deg_m(&self) -> usize {
        self.deg_m
    }

    /// `a_1, ..., a_n`
    pub fn coeffs(&self) -> &[BasePolynomial] {
        &self.coeffs
    }

    /// `a_j` for `1 <= j <= n`; `a_0 = 1`.
    pub fn a(&self, j: usize) -> BasePolynomial {
        match j {
            0 => BasePolynomial::one(),
            _ => self.coeffs[j - 1].clone(),
        }
    }

    pub fn to_tpoly(&self) -> TPoly {
        let n = self.n();
        TPoly::new((0..=n).map(|i| self.a(n - i)).collect())
    }

    pub fn is_trace_free(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// `self * other`; both must use the same `deg_m`.
    pub fn product(&self, other: &SpectralPoly) -> Result<Self> {
        if self.deg_m != other.deg_m {
            return Err(Error::IncompatibleDegM(self.deg_m, other.deg_m));
        }
        Self::from_tpoly(self.deg_m, &(&self.to_tpoly() * &other.to_tpoly()))
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("exponent must be at least 1".into()));
        }
        Self::from_tpoly(self.deg_m, &self.to_tpoly().pow(k))
    }

    /// Same polynomial viewed with a larger line bundle degree.
    pub fn with_deg_m(&self, deg_m: usize) -> Result<Self> {
        Self::new(deg_m, self.coeffs.clone())
    }
}

impl TryFrom<SpectralPolyFile> for SpectralPoly {
    type Error = Error;

    fn try_from(f: SpectralPolyFile) -> Result<Self> {
        if f.coeffs.len() != f.n {
            return Err(Error::DimensionMismatch {
                expected: f.n,
                found: f.coeffs.len(),
            });
        }
        Self::new(f.deg_m, f.coeffs)
    }
}

impl From<SpectralPoly> for SpectralPolyFile {
    fn from(s: SpectralPoly) -> Self {
        Self {
            n: s.n(),
            deg_m: s.deg_m,
            coeffs: s.coeffs,
        }
    }
}

impl fmt::Display for SpectralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_tpoly())
    }
}

impl fmt::Debug for SpectralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpectralPoly[deg_m={}]({self})", self.deg_m)
    }
}
