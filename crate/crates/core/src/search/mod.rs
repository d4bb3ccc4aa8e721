//! Single-letter region evaluation for discrete sources and the seeded
//! search for the interactive binary curve.

mod curve;
mod envelope;
mod evaluate;
mod mu_int;
mod schedule;

pub use curve::{check_inclusion, CurvePoint, Inclusion, RegionCurve, Witness};
pub use envelope::{envelope_value, sample_envelope, upper_concave_envelope, EnvelopePoint};
pub use evaluate::{corner_points_outer, evaluate_cdib_inner, evaluate_twcib, RegionPoint};
pub use mu_int::{mu_int_limit, search_mu_int, BucketRecord, MuIntResult, MuIntSearch, CHUNK, DEFAULT_BUCKETS, DEFAULT_V2_CARD};
pub use schedule::{Problem, RoundSchedule};
