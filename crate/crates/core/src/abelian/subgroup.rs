//! Subgroups of `(Z/M)^{2g}`, the finite model of the `M`-torsion of a
//! genus-`g` Jacobian.
//!
//! A subgroup `H` is stored through the lattice `L = H + M Z^{2g}` of `Z^{2g}`.
//! The canonical generator matrix is the Hermite basis of `L` with the rows
//! `M e_j` removed; the removed rows are exactly those whose pivot equals `M`,
//! so two subgroups are equal iff their canonical matrices are identical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::group::FinAbGroup;
use super::matrix::{hermite_rows, lattice_intersection, smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// The group `(Z/M)^{2g}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionAmbient {
    genus: u32,
    modulus: BigInt,
}

impl TorsionAmbient {
    pub fn new(genus: u32, modulus: impl Into<BigInt>) -> Result<Self> {
        let modulus = modulus.into();
        if genus == 0 {
            return Err(Error::InvalidInput("genus must be positive".into()));
        }
        if !modulus.is_positive() {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        Ok(Self { genus, modulus })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Rank of the ambient free module, always `2g`.
    pub fn rank(&self) -> usize {
        2 * self.genus as usize
    }

    pub fn order(&self) -> BigInt {
        num_traits::pow(self.modulus.clone(), self.rank())
    }

    pub fn trivial(&self) -> TorsionSubgroup {
        TorsionSubgroup {
            ambient: self.clone(),
            generators: IntMatrix::zeros(0, self.rank()),
        }
    }

    pub fn full(&self) -> TorsionSubgroup {
        let rows = (0..self.rank())
            .map(|i| unit_row(self.rank(), i, BigInt::one()))
            .collect();
        TorsionSubgroup::from_rows(self.clone(), rows).expect("unit rows have the ambient rank")
    }

    /// The `n`-torsion `{x : n x = 0}`.
    pub fn torsion(&self, n: &BigInt) -> TorsionSubgroup {
        let step = &self.modulus / self.modulus.gcd(n);
        let rows = (0..self.rank())
            .map(|i| unit_row(self.rank(), i, step.clone()))
            .collect();
        TorsionSubgroup::from_rows(self.clone(), rows).expect("unit rows have the ambient rank")
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter().map(|x| x.mod_floor(&self.modulus)).collect()
    }
}

impl fmt::Display for TorsionAmbient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(Z/{})^{}", self.modulus, self.rank())
    }
}

fn unit_row(len: usize, i: usize, value: BigInt) -> Vec<BigInt> {
    let mut r = vec![BigInt::zero(); len];
    r[i] = value;
    r
}

fn pivot_of(row: &[BigInt]) -> usize {
    row.iter()
        .position(|x| !x.is_zero())
        .expect("hermite rows are nonzero")
}

/// A subgroup of a [`TorsionAmbient`] with canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionSubgroup {
    ambient: TorsionAmbient,
    generators: IntMatrix,
}

impl TorsionSubgroup {
    /// Subgroup generated by the rows of `rows` (taken mod `M`).
    pub fn from_generators(ambient: TorsionAmbient, rows: &IntMatrix) -> Result<Self> {
        if rows.cols() != ambient.rank() {
            return Err(Error::DimensionMismatch {
                expected: ambient.rank(),
                found: rows.cols(),
            });
        }
        Self::from_rows(ambient, rows.row_vecs())
    }

    pub(crate) fn from_rows(ambient: TorsionAmbient, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let k = ambient.rank();
        if let Some(bad) = rows.iter().find(|r| r.len() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: bad.len(),
            });
        }
        let basis = Self::canonical_basis(&ambient, rows);
        Ok(Self::from_lattice_basis(ambient, basis))
    }

    /// Hermite basis of `span(rows) + M Z^k`; always `k` rows, upper triangular.
    fn canonical_basis(ambient: &TorsionAmbient, rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
        let k = ambient.rank();
        let mut all: Vec<Vec<BigInt>> = rows.iter().map(|r| ambient.reduce(r)).collect();
        all.extend((0..k).map(|i| unit_row(k, i, ambient.modulus.clone())));
        let basis = hermite_rows(&all, k);
        debug_assert_eq!(basis.len(), k);
        basis
    }

    fn from_lattice_basis(ambient: TorsionAmbient, basis: Vec<Vec<BigInt>>) -> Self {
        let k = ambient.rank();
        let kept: Vec<Vec<BigInt>> = basis
            .into_iter()
            .filter(|r| r[pivot_of(r)] != ambient.modulus)
            .collect();
        let generators =
            IntMatrix::from_rows(k, &kept).expect("hermite rows have the ambient rank");
        Self {
            ambient,
            generators,
        }
    }

    pub fn ambient(&self) -> &TorsionAmbient {
        &self.ambient
    }

    /// Canonical generator matrix (echelon form, entries in `[0, M)`).
    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    /// Full `k x k` Hermite basis of the lattice `H + M Z^k`.
    pub fn lattice_basis(&self) -> Vec<Vec<BigInt>> {
        let k = self.ambient.rank();
        let mut rows = self.generators.row_vecs().into_iter().peekable();
        let mut basis = Vec::with_capacity(k);
        for c in 0..k {
            match rows.peek() {
                Some(r) if pivot_of(r) == c => basis.push(rows.next().unwrap()),
                _ => basis.push(unit_row(k, c, self.ambient.modulus.clone())),
            }
        }
        basis
    }

    fn pivots(&self) -> Vec<BigInt> {
        self.lattice_basis()
            .iter()
            .enumerate()
            .map(|(c, r)| r[c].clone())
            .collect()
    }

    pub fn order(&self) -> BigInt {
        self.pivots()
            .iter()
            .map(|g| &self.ambient.modulus / g)
            .product()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.rows() == 0
    }

    /// Membership test for a vector of `Z^{2g}` read mod `M`.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        if x.len() != self.ambient.rank() {
            return false;
        }
        let mut x = self.ambient.reduce(x);
        for (c, row) in self.lattice_basis().iter().enumerate() {
            let (q, r) = x[c].div_rem(&row[c]);
            if !r.is_zero() {
                return false;
            }
            for (xi, bi) in x.iter_mut().zip(row) {
                *xi -= &q * bi;
            }
        }
        x.iter().all(Zero::is_zero)
    }

    pub fn is_subgroup_of(&self, other: &TorsionSubgroup) -> bool {
        self.ambient == other.ambient
            && self.generators.row_vecs().iter().all(|r| other.contains(r))
    }

    pub fn intersect(&self, other: &TorsionSubgroup) -> Result<TorsionSubgroup> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let k = self.ambient.rank();
        let meet = lattice_intersection(&self.lattice_basis(), &other.lattice_basis(), k);
        Self::from_rows(self.ambient.clone(), meet)
    }

    /// Full preimage `{x : m x in H}` under multiplication by `m`.
    ///
    /// Requires `m * exponent(H)` to divide `M`, so that the answer agrees
    /// with the preimage taken in the divisible group `(Q/Z)^{2g}`.
    pub fn preimage_mul(&self, m: &BigInt) -> Result<TorsionSubgroup> {
        if !m.is_positive() {
            return Err(Error::Precondition(format!(
                "multiplier must be positive, got {m}"
            )));
        }
        let needed = m * self.structure().exponent();
        if !needed.is_zero() && !self.ambient.modulus.is_multiple_of(&needed) {
            return Err(Error::Precondition(format!(
                "{m} * exponent {} does not divide the ambient modulus {}",
                self.structure().exponent(),
                self.ambient.modulus
            )));
        }
        let k = self.ambient.rank();
        let scaled: Vec<Vec<BigInt>> = (0..k).map(|i| unit_row(k, i, m.clone())).collect();
        let meet = lattice_intersection(&self.lattice_basis(), &scaled, k);
        let divided = meet
            .into_iter()
            .map(|r| r.into_iter().map(|x| x / m).collect())
            .collect();
        Self::from_rows(self.ambient.clone(), divided)
    }

    /// Image under multiplication by `m`.
    pub fn scaled_by(&self, m: &BigInt) -> TorsionSubgroup {
        let rows = self
            .generators
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * m).collect())
            .collect();
        Self::from_rows(self.ambient.clone(), rows).expect("same ambient rank")
    }

    /// Re-embeds into `(Z/M')^{2g}` for a multiple `M'` of `M` via
    /// `v -> (M'/M) v`, the unique embedding of `M`-torsion into `M'`-torsion.
    pub fn embed_into(&self, target: &TorsionAmbient) -> Result<TorsionSubgroup> {
        if target.genus != self.ambient.genus {
            return Err(Error::AmbientMismatch);
        }
        if !target.modulus.is_multiple_of(&self.ambient.modulus) {
            return Err(Error::Precondition(format!(
                "modulus {} does not divide {}",
                self.ambient.modulus, target.modulus
            )));
        }
        let factor = &target.modulus / &self.ambient.modulus;
        let rows = self
            .generators
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * &factor).collect())
            .collect();
        Self::from_rows(target.clone(), rows)
    }

    /// Inverse of [`embed_into`](Self::embed_into): reads a subgroup killed
    /// by `n` (with `n | M`) as a subgroup of `(Z/n)^{2g}`.
    pub fn restrict_to_torsion(&self, n: &BigInt) -> Result<TorsionSubgroup> {
        let m = &self.ambient.modulus;
        if !n.is_positive() || !m.is_multiple_of(n) {
            return Err(Error::Precondition(format!(
                "{n} must be a positive divisor of the ambient modulus {m}"
            )));
        }
        if !self.is_subgroup_of(&self.ambient.torsion(n)) {
            return Err(Error::NotInTorsion { n: n.to_string() });
        }
        let step = m / n;
        let target = TorsionAmbient::new(self.ambient.genus, n.clone())?;
        let rows = self
            .generators
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x / &step).collect())
            .collect();
        Self::from_rows(target, rows)
    }

    /// Invariant factors of `H` as an abstract group.
    pub fn structure(&self) -> FinAbGroup {
        self.decompose().0
    }

    /// Invariant-factor decomposition together with generators: the `i`-th
    /// returned vector has order exactly the `i`-th invariant factor and the
    /// group is their internal direct sum.
    pub fn decompose(&self) -> (FinAbGroup, Vec<Vec<BigInt>>) {
        let k = self.ambient.rank();
        let m = &self.ambient.modulus;
        let basis = self.lattice_basis();
        // H = L / M Z^k and M Z^k = C L with C = M B^{-1}.
        let mut c = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = if i == j { m.clone() } else { BigInt::zero() };
                for l in 0..j {
                    acc -= &c[(i, l)] * &basis[l][j];
                }
                debug_assert!(acc.is_multiple_of(&basis[j][j]));
                c[(i, j)] = acc / &basis[j][j];
            }
        }
        let snf = smith_normal_form(&c);
        let b = IntMatrix::from_rows(k, &basis).expect("square basis");
        let gens = snf.v_inv.mul(&b).expect("square matrices");
        let mut factors = Vec::new();
        let mut out = Vec::new();
        for (i, d) in snf.diagonal().into_iter().enumerate() {
            if d.is_one() {
                continue;
            }
            out.push(self.ambient.reduce(gens.row(i)));
            factors.push(d);
        }
        let group = FinAbGroup::from_cyclic_orders(&factors).expect("finite factors");
        debug_assert_eq!(group.invariant_factors(), factors.as_slice());
        (group, out)
    }
}

impl fmt::Display for TorsionSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .row_vecs()
            .iter()
            .map(|r| {
                let e: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("({})", e.join(","))
            })
            .collect();
        write!(f, "<{}> in {}", gens.join(", "), self.ambient)
    }
}
