//! Spectral cover descriptors and the computations built on them.

mod components;
mod descriptor;
mod endoscopy;

pub use components::{gamma_in_k, is_cn_cover, phi_surjection, pi0_prym, prym_component_group};
pub use descriptor::{
    ambient_modulus, ComponentData, ComponentFile, DescriptorFile, SpectralCoverDescriptor,
};
pub use endoscopy::{
    endoscopic_dim, endoscopy_report, smallest_prime_divisor, variant_bound, EndoscopyReport,
    VariantBound,
};
