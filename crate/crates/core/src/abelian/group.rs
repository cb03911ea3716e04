use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::{smith_normal_form, IntMatrix};

/// A finite abelian group in invariant-factor form `Z/d_1 x ... x Z/d_k`
/// with `d_1 | d_2 | ... | d_k` and every `d_j >= 2`.
///
/// The trivial group has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    invariant_factors: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
        }
    }

    /// Normalizes an arbitrary product of cyclic groups `Z/c_1 x ... x Z/c_r`.
    ///
    /// Zero moduli (infinite cyclic factors) are rejected by returning `None`.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Option<Self> {
        if orders.iter().any(|c| c.is_zero()) {
            return None;
        }
        let diag = IntMatrix::diagonal(orders);
        let snf = smith_normal_form(&diag);
        let invariant_factors = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
        Some(Self { invariant_factors })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Largest invariant factor; 1 for the trivial group.
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Character group of `g`.
///
/// A finite abelian group and its characters have the same invariant
/// factors; the value is returned separately so call sites keep track of
/// which side of the duality they are on.
pub fn dual_group(g: &FinAbGroup) -> FinAbGroup {
    g.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalizes_cyclic_products() {
        let g = FinAbGroup::from_cyclic_orders(&big(&[2, 3])).unwrap();
        assert_eq!(g.invariant_factors(), big(&[6]).as_slice());
        let g = FinAbGroup::from_cyclic_orders(&big(&[4, 6, 1])).unwrap();
        assert_eq!(g.invariant_factors(), big(&[2, 12]).as_slice());
        assert_eq!(g.order(), BigInt::from(24));
        assert!(FinAbGroup::from_cyclic_orders(&big(&[0])).is_none());
    }

    #[test]
    fn trivial_group() {
        let g = FinAbGroup::trivial();
        assert_eq!(g.order(), BigInt::one());
        assert!(g.is_cyclic());
        assert_eq!(dual_group(&g), g);
    }

    #[test]
    fn duals_keep_factors() {
        for f in [vec![2, 2], vec![2, 6]] {
            let g = FinAbGroup::from_cyclic_orders(&big(&f)).unwrap();
            assert_eq!(dual_group(&g).invariant_factors(), big(&f).as_slice());
        }
    }
}
