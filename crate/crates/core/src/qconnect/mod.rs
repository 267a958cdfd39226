//! Solution evaluators, identity verifiers, the normalization audit and
//! the verification suite.

pub mod audit;
pub mod checks;
pub mod formulas;
pub mod identities;
pub mod points;
pub mod solutions;
pub mod suite;

pub use audit::{audit_normalization, AuditReport, AuditTarget, Correction, FamilyOutcome};
pub use checks::{ellipticity_check, stokes_witness, wronskian, Coefficient};
pub use formulas::LevelReading;
pub use identities::{identity_sides, verify_identity, IdentityId, Params};
pub use points::{Exclusion, PointGenerator};
pub use solutions::{eval_solution, relative_residual, residual, SolutionId};
pub use suite::{identity_exclusions, identity_points, run_suite, FamilySummary, SuiteConfig, SuiteSummary};
