//! The component group of the Prym variety of a spectral cover.
//!
//! For a cover with components `(d_i, m_i, K_i)` the relevant subgroup of
//! `Pic^0(C)` is `K = ∩ [m_i]^{-1}(K_i)`; the component group is its
//! character group and the pullback of `n`-torsion surjects onto it.

use num_bigint::BigInt;

use super::descriptor::SpectralCoverDescriptor;
use crate::abelian::{dual_group, dual_of_inclusion, FinAbGroup, GroupHom, TorsionSubgroup};
use crate::error::{Error, Result};

/// `K = ∩_i [m_i]^{-1}(K_i)` inside `(Z/M)^{2g}`.
pub fn prym_component_group(desc: &SpectralCoverDescriptor) -> Result<TorsionSubgroup> {
    let ambient = desc.ambient();
    let mut k = ambient.full();
    for c in desc.components() {
        if c.kernel().ambient() != ambient {
            return Err(Error::AmbientMismatch);
        }
        let pre = c.kernel().preimage_mul(&BigInt::from(c.multiplicity()))?;
        k = k.intersect(&pre)?;
    }
    let n = BigInt::from(desc.n());
    if !k.is_subgroup_of(&ambient.torsion(&n)) {
        return Err(Error::InvariantViolation(format!(
            "K is not contained in the {n}-torsion"
        )));
    }
    Ok(k)
}

/// Component group of the Prym variety, as the character group of `K`.
pub fn pi0_prym(desc: &SpectralCoverDescriptor) -> Result<FinAbGroup> {
    let k = prym_component_group(desc)?;
    Ok(dual_group(&k.structure()))
}

/// `Pic^0(C)[n] -> pi0(Prym)`, realized as restriction of characters to `K`.
///
/// Surjectivity and the kernel order `n^{2g} / |K|` are checked before the
/// map is returned.
pub fn phi_surjection(desc: &SpectralCoverDescriptor) -> Result<GroupHom> {
    let k = prym_component_group(desc)?;
    phi_for(desc, &k)
}

pub(crate) fn phi_for(desc: &SpectralCoverDescriptor, k: &TorsionSubgroup) -> Result<GroupHom> {
    let n = BigInt::from(desc.n());
    let k_n = k.intersect(&desc.ambient().torsion(&n))?;
    let phi = dual_of_inclusion(&k_n, &n)?;
    if !phi.is_surjective() {
        return Err(Error::InvariantViolation(
            "pullback of n-torsion does not surject onto the component group".into(),
        ));
    }
    let expected = phi.domain_order() / k.order();
    if phi.kernel_order() != expected {
        return Err(Error::InvariantViolation(format!(
            "kernel of Phi has order {}, expected {expected}",
            phi.kernel_order()
        )));
    }
    Ok(phi)
}

fn has_multiple_curve_shape(desc: &SpectralCoverDescriptor) -> bool {
    matches!(desc.components(), [c] if c.degree() == 1
        && c.multiplicity() == desc.n()
        && c.kernel().is_trivial())
}

/// Whether the cover is the multiple curve `C_n`.
///
/// Decided from the shape of the descriptor and cross-checked against
/// `|K| = n^{2g}`; a disagreement is reported as an invariant violation.
pub fn is_cn_cover(desc: &SpectralCoverDescriptor) -> Result<bool> {
    let shape = has_multiple_curve_shape(desc);
    let k = prym_component_group(desc)?;
    let full = k.order() == num_traits::pow(BigInt::from(desc.n()), desc.ambient().rank());
    if shape != full {
        return Err(Error::InvariantViolation(format!(
            "C_n shape is {shape} but |K| = n^(2g) is {full}"
        )));
    }
    Ok(shape)
}

/// Group-side endoscopy test: is the cyclic subgroup `gamma` of the
/// `n`-torsion contained in `K`?
///
/// `gamma` may be given in any ambient `(Z/M')^{2g}` with `M'` dividing the
/// descriptor's modulus; it is re-embedded first.
pub fn gamma_in_k(desc: &SpectralCoverDescriptor, gamma: &TorsionSubgroup) -> Result<bool> {
    let gamma = gamma.embed_into(desc.ambient())?;
    if !gamma.structure().is_cyclic() {
        return Err(Error::NotCyclic);
    }
    let n = BigInt::from(desc.n());
    if !gamma.is_subgroup_of(&desc.ambient().torsion(&n)) {
        return Err(Error::NotInTorsion { n: n.to_string() });
    }
    let k = prym_component_group(desc)?;
    Ok(gamma.is_subgroup_of(&k))
}
