//! Entropy, coherent information, input optimization and the certificates
//! for the epolarizing and mixed Pauli complement channels.

mod capacity;
mod entropy;
mod info;
mod optimize;
mod theorem1;
mod theorem2;

pub use capacity::capacity_formula;
pub use entropy::{binary_entropy, entropy_of_spectrum, von_neumann_entropy};
pub use info::{coherent_information, CoherentInfo};
pub use optimize::{
    golden_section_max, maximize_coherent_information, maximize_over_diagonal_inputs, CoherentInfoResult,
    SearchStrategy,
};
pub use theorem1::{
    corner_flip, delta_threshold, epolarizing_diagonal_coherent_information, log2_delta_threshold,
    log_domain_bound_margin, theorem1_certificate, theorem1_lower_bound, xi_entropy_closed_form, xi_spectrum_closed_form,
    xi_state, Theorem1Certificate,
};
pub use theorem2::{smaller_root, theorem2_certificate, xi_prime_state, Theorem2Certificate};
