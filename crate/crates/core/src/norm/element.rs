use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{BasePolynomial, PolyMatrix, SpectralPoly, TPoly};

/// Element of `B = R[t]/(s_a)` in the basis `1, t, ..., t^(n-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    parent: SpectralPoly,
    coords: Vec<BasePolynomial>,
}

/// Serialized form; the parent travels separately.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub coords: Vec<BasePolynomial>,
}

impl AlgebraElement {
    pub fn new(parent: SpectralPoly, coords: Vec<BasePolynomial>) -> Result<Self> {
        if coords.len() != parent.n() {
            return Err(Error::DimensionMismatch {
                expected: parent.n(),
                found: coords.len(),
            });
        }
        Ok(Self { parent, coords })
    }

    /// Reduces an arbitrary polynomial in `t` modulo `s_a`.
    pub fn from_tpoly(parent: &SpectralPoly, p: &TPoly) -> Self {
        let r = p.rem_monic(&parent.to_tpoly());
        let coords = (0..parent.n()).map(|i| r.coeff(i)).collect();
        Self {
            parent: parent.clone(),
            coords,
        }
    }

    /// Pullback `r(x) * 1` of a base function.
    pub fn base(parent: &SpectralPoly, r: BasePolynomial) -> Self {
        Self::from_tpoly(parent, &TPoly::constant(r))
    }

    pub fn one(parent: &SpectralPoly) -> Self {
        Self::base(parent, BasePolynomial::one())
    }

    pub fn t(parent: &SpectralPoly) -> Self {
        Self::from_tpoly(parent, &TPoly::t())
    }

    pub fn parent(&self) -> &SpectralPoly {
        &self.parent
    }

    pub fn coords(&self) -> &[BasePolynomial] {
        &self.coords
    }

    pub fn to_tpoly(&self) -> TPoly {
        TPoly::new(self.coords.clone())
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<Self> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(Self::from_tpoly(
            &self.parent,
            &(&self.to_tpoly() * &other.to_tpoly()),
        ))
    }

    pub fn scale(&self, c: &BasePolynomial) -> Self {
        Self {
            parent: self.parent.clone(),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Image under `R[t]/(s_a) -> R[t]/(q)` for a factor `q` of `s_a`.
    pub fn reduce_to(&self, q: &SpectralPoly) -> Result<Self> {
        if self.parent.to_tpoly().rem_monic(&q.to_tpoly()).is_zero() {
            Ok(Self::from_tpoly(q, &self.to_tpoly()))
        } else {
            Err(Error::DoesNotDivide)
        }
    }

    pub fn to_file(&self) -> ElementFile {
        ElementFile {
            coords: self.coords.clone(),
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) mod ({})", self.to_tpoly(), self.parent)
    }
}

/// Matrix of multiplication by `u`; column `j` holds `u * t^j mod s_a`.
pub fn mul_matrix(s_a: &SpectralPoly, u: &AlgebraElement) -> Result<PolyMatrix> {
    if u.parent() != s_a {
        return Err(Error::ParentMismatch);
    }
    let n = s_a.n();
    let s = s_a.to_tpoly();
    let mut m = vec![vec![BasePolynomial::zero(); n]; n];
    let mut col = u.to_tpoly();
    for j in 0..n {
        for (i, row) in m.iter_mut().enumerate() {
            row[j] = col.coeff(i);
        }
        col = (&col * &TPoly::t()).rem_monic(&s);
    }
    Ok(m)
}

/// `N(u) = det(mu_u)`.
pub fn norm_element(s_a: &SpectralPoly, u: &AlgebraElement) -> Result<BasePolynomial> {
    Ok(crate::poly::poly_determinant(mul_matrix(s_a, u)?))
}
