//! Complexity-relevance regions for collaborative information bottleneck
//! problems: finite-alphabet information measures, the binary half-round
//! relevance-rate functions, closed-form Gaussian regions and a seeded search
//! over auxiliary channels.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod binary;
pub mod error;
pub mod gaussian;
pub mod info;
pub mod optim;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};
pub use scalar::Real;

pub type JointPmf64 = info::JointPmf<f64>;
pub type JointPmf32 = info::JointPmf<f32>;
pub type Channel64 = info::Channel<f64>;
pub type BinaryModel64 = binary::BinaryModel<f64>;
pub type BinaryModel32 = binary::BinaryModel<f32>;
pub type GaussianVector64 = gaussian::GaussianVector<f64>;
pub type GaussianTwcibModel64 = gaussian::GaussianTwcibModel<f64>;
pub type CdibX1X2Y64 = gaussian::CdibX1X2Y<f64>;
pub type CdibX1YX264 = gaussian::CdibX1YX2<f64>;
