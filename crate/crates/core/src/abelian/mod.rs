//! Integer matrices and finite abelian groups.

mod group;
mod hom;
mod matrix;
mod subgroup;

pub use group::{dual_group, FinAbGroup};
pub use hom::{dual_of_inclusion, GroupHom};
pub use matrix::{hermite_rows, lattice_intersection, smith_normal_form, IntMatrix, SmithForm};
pub use subgroup::{TorsionAmbient, TorsionSubgroup};

use crate::error::Result;

/// Canonical subgroup generated by `rows`.
pub fn subgroup_from_generators(
    ambient: TorsionAmbient,
    rows: &IntMatrix,
) -> Result<TorsionSubgroup> {
    TorsionSubgroup::from_generators(ambient, rows)
}

pub fn intersect(h1: &TorsionSubgroup, h2: &TorsionSubgroup) -> Result<TorsionSubgroup> {
    h1.intersect(h2)
}

pub fn preimage_mul(m: &num_bigint::BigInt, h: &TorsionSubgroup) -> Result<TorsionSubgroup> {
    h.preimage_mul(m)
}

pub fn structure(h: &TorsionSubgroup) -> FinAbGroup {
    h.structure()
}
