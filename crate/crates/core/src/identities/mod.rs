//! Assembles series, zero sums and quadratures into per-identity
//! verifications with residuals and combined truncation bounds.

mod probe;
mod report;
mod verify;
mod workspace;

pub use probe::{asymptotic_probe, AsymptoticModel, DeltaKind, ProbeRow};
pub use report::{IdentityId, IdentityReport, SignConvention, VerifyConfig, FLOOR_TOL};
pub use verify::{
    cross_check_popov_thm11, verify_eq34, verify_lemma31, verify_lemma32, verify_popov, verify_popov_with_zeros, verify_theorem11,
    verify_theorem12, verify_theorem31, POPOV_X_FLOOR,
};
pub use workspace::{TablePair, Workspace};
