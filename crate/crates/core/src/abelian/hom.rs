use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::FinAbGroup;
use super::matrix::{hermite_rows, IntMatrix};
use super::subgroup::TorsionSubgroup;
use crate::error::{Error, Result};

/// A homomorphism `Z/a_1 x ... x Z/a_r -> Z/b_1 x ... x Z/b_s` acting on
/// row vectors: `x -> x * matrix`, coordinate `i` read mod `b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: Vec<BigInt>,
    codomain: Vec<BigInt>,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(domain: Vec<BigInt>, codomain: Vec<BigInt>, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != domain.len() || matrix.cols() != codomain.len() {
            return Err(Error::DimensionMismatch {
                expected: domain.len() * codomain.len(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        if domain.iter().chain(&codomain).any(|m| m < &BigInt::one()) {
            return Err(Error::InvalidInput("cyclic orders must be positive".into()));
        }
        let hom = Self {
            domain,
            codomain,
            matrix,
        };
        if !hom.is_well_defined() {
            return Err(Error::InvariantViolation(
                "matrix does not respect the domain relations".into(),
            ));
        }
        Ok(hom)
    }

    pub fn domain_moduli(&self) -> &[BigInt] {
        &self.domain
    }

    pub fn codomain_moduli(&self) -> &[BigInt] {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn codomain_group(&self) -> FinAbGroup {
        FinAbGroup::from_cyclic_orders(&self.codomain).expect("positive orders")
    }

    /// `a_j * (row j)` must vanish in the codomain for every generator.
    pub fn is_well_defined(&self) -> bool {
        self.domain.iter().enumerate().all(|(j, a)| {
            self.matrix
                .row(j)
                .iter()
                .zip(&self.codomain)
                .all(|(x, b)| (a * x).is_multiple_of(b))
        })
    }

    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.domain.len() {
            return Err(Error::DimensionMismatch {
                expected: self.domain.len(),
                found: x.len(),
            });
        }
        Ok((0..self.codomain.len())
            .map(|i| {
                let s: BigInt = x
                    .iter()
                    .zip(0..)
                    .map(|(xj, j)| xj * &self.matrix[(j, i)])
                    .sum();
                s.mod_floor(&self.codomain[i])
            })
            .collect())
    }

    pub fn domain_order(&self) -> BigInt {
        self.domain.iter().product()
    }

    pub fn codomain_order(&self) -> BigInt {
        self.codomain.iter().product()
    }

    /// Order of the image, from the index of `rowspan(matrix) + diag(b) Z^s`.
    pub fn image_order(&self) -> BigInt {
        let s = self.codomain.len();
        let mut rows = self.matrix.row_vecs();
        for (i, b) in self.codomain.iter().enumerate() {
            let mut r = vec![BigInt::zero(); s];
            r[i] = b.clone();
            rows.push(r);
        }
        let h = hermite_rows(&rows, s);
        let index: BigInt = h.iter().enumerate().map(|(i, r)| r[i].clone()).product();
        self.codomain_order() / index
    }

    pub fn kernel_order(&self) -> BigInt {
        self.domain_order() / self.image_order()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == self.codomain_order()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_order().is_one()
    }
}

/// Restriction of characters along `K -> A[n]`, written as a map
/// `(Z/n)^{2g} -> K^`.
///
/// Characters of `A[n] = (Z/n)^{2g}` are identified with `A[n]` through the
/// diagonal pairing `<x, y> = sum x_j y_j / n mod 1`. The codomain `K^` is
/// presented by the invariant factors of `K`, a character being recorded by
/// its values on the invariant-factor generators.
pub fn dual_of_inclusion(k: &TorsionSubgroup, n: &BigInt) -> Result<GroupHom> {
    let local = k.restrict_to_torsion(n)?;
    let rank = local.ambient().rank();
    let (group, gens) = local.decompose();
    let factors = group.invariant_factors().to_vec();
    let mut matrix = IntMatrix::zeros(rank, factors.len());
    for (i, (e, b)) in factors.iter().zip(&gens).enumerate() {
        let step = n / e;
        for (j, bj) in b.iter().enumerate() {
            debug_assert!(bj.is_multiple_of(&step));
            matrix[(j, i)] = bj / &step;
        }
    }
    GroupHom::new(vec![n.clone(); rank], factors, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::TorsionAmbient;

    fn sub(g: u32, m: i64, rows: &[Vec<i64>]) -> TorsionSubgroup {
        let a = TorsionAmbient::new(g, m).unwrap();
        TorsionSubgroup::from_generators(a.clone(), &IntMatrix::from_rows(a.rank(), rows).unwrap())
            .unwrap()
    }

    #[test]
    fn trivial_kernel_gives_zero_map() {
        let k = TorsionAmbient::new(1, 2).unwrap().trivial();
        let f = dual_of_inclusion(&k, &BigInt::from(2)).unwrap();
        assert!(f.codomain_moduli().is_empty());
        assert!(f.is_surjective());
        assert_eq!(f.kernel_order(), BigInt::from(4));
    }

    #[test]
    fn full_two_torsion_is_self_dual() {
        let k = TorsionAmbient::new(1, 2).unwrap().full();
        let f = dual_of_inclusion(&k, &BigInt::from(2)).unwrap();
        assert!(f.is_surjective());
        assert!(f.is_injective());
    }

    #[test]
    fn order_two_subgroup() {
        let k = sub(1, 2, &[vec![1, 0]]);
        let f = dual_of_inclusion(&k, &BigInt::from(2)).unwrap();
        assert!(f.is_surjective());
        assert_eq!(f.kernel_order(), BigInt::from(2));
        let two = |a: i64, b: i64| vec![BigInt::from(a), BigInt::from(b)];
        // kernel is <(0,1)>
        assert_eq!(f.apply(&two(0, 1)).unwrap(), vec![BigInt::zero()]);
        assert_ne!(f.apply(&two(1, 0)).unwrap(), vec![BigInt::zero()]);
        assert_ne!(f.apply(&two(1, 1)).unwrap(), vec![BigInt::zero()]);
    }

    #[test]
    fn subgroup_outside_torsion_is_rejected() {
        let k = sub(1, 4, &[vec![1, 0]]);
        assert!(matches!(
            dual_of_inclusion(&k, &BigInt::from(2)),
            Err(Error::NotInTorsion { .. })
        ));
    }

    #[test]
    fn ill_defined_matrix_is_rejected() {
        let m = IntMatrix::from_rows(1, &[vec![1]]).unwrap();
        assert!(GroupHom::new(vec![BigInt::from(2)], vec![BigInt::from(3)], m).is_err());
    }
}
