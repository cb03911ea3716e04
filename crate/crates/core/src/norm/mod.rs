//! The norm `N(u) = det(mu_u)` on `B = R[t]/(s_a)` over `R = Q[x]`.

mod divisor;
mod element;
mod laws;

pub use divisor::{norm_consistency_check, norm_divisor, singular_over, PointDivisor};
pub use element::{mul_matrix, norm_element, AlgebraElement, ElementFile};
pub use laws::{
    norm_component_law, norm_multiplicativity_check, norm_power_law, norm_scalar_check,
    quasi_free_det,
};
