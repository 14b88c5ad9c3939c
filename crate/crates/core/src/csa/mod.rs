//! Central-simple-algebra mechanics: the explicit characteristic-p
//! division algebra with its defining identities, minimal-polynomial
//! structure over cyclotomic fields, and exponent-bound audits for finite
//! matrix groups.

pub mod audit;
pub mod cyclotomic;
pub mod weyl;

pub use audit::{
    closure_fq, element_order, exponent_bound_audit, full_gl, full_pgl, sweep_subgroup_audits,
    AuditError, AuditMode, AuditReport, FqMatrix, FqMatrixGroup, SweepSummary,
};
pub use cyclotomic::{minpoly_structure, CycloError, CycloField, CycloMatrix, MinPolyReport};
pub use weyl::{ad_solve, center_check, weyl_identity_check, Gen, PolyXY, WeylElement, WEYL_PRIMES};
