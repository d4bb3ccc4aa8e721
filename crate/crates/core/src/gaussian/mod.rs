//! Closed-form Gaussian complexity-relevance regions.

mod cdib;
mod linalg;
mod twcib;
mod vector;

pub use cdib::{CdibX1X2Y, CdibX1YX2, GaussianCdibModel, InnerBoundPoint, OuterBoundPoint, R2Reading, RATE_CAP};
pub use twcib::{Encoder, GaussianTwcibModel, TestChannelVariances, TwcibCoefficients};
pub use vector::GaussianVector;
