//! Numerical verification of Davenport-type expansions of fractional-part
//! series, the explicit formula for the Λ-weighted Bernoulli sum, and
//! solutions of Fine's query built from Ramanujan sums.
//!
//! The numeric kernels are generic over [`Real`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`, which is what the
//! reports and the command-line tool use.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod error;
pub mod fine;
pub mod identities;
pub mod quad;
pub mod scalar;
pub mod series;
pub mod suite;
pub mod summation;
pub mod tolerances;
pub mod zeta;

pub use error::{Error, Result};
pub use scalar::Real;
pub use series::Rational;
pub use summation::{SummationMethod, TruncationSpec};

pub type FnTable = arith::FnTable<f64>;
pub type FnTable32 = arith::FnTable<f32>;
pub type SeriesValue = series::SeriesValue<f64>;
pub type SeriesValue32 = series::SeriesValue<f32>;
pub type ZeroTable = zeta::ZeroTable<f64>;
pub type ZeroTable32 = zeta::ZeroTable<f32>;
pub type OddZetaCache = zeta::OddZetaCache<f64>;
pub type Workspace = identities::Workspace<f64>;
pub type FineReport = fine::FineReport<f64>;
pub type PowerReduction = fine::PowerReduction<f64>;
