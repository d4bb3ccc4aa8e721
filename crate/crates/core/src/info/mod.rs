//! Finite-alphabet probability algebra.
//!
//! All information quantities are in bits (base-2 logarithms).

mod binary_entropy;
mod channel;
mod measures;
mod pmf;

pub use binary_entropy::{binary_pair, gerber_bound, h2, h2_inv, star};
pub(crate) use binary_entropy::{h2_inv_raw, h2_prime, h2_raw, star_raw};
pub use channel::{compose_markov, Channel};
pub use measures::{conditional_mutual_information, entropy, mutual_information, CLAMP_TOL};
pub use pmf::{Axis, JointPmf, MIN_EVENT_PROB, NORMALIZATION_TOL, RENORMALIZE_TOL};
