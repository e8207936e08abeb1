//! Construction and verification of unextendible maximally entangled bases
//! (UMEBs) in bipartite spaces `C^d (x) C^d'` with `d < d'`.
//!
//! A UMEB is an orthonormal set of fewer than `d*d'` maximally entangled
//! states whose orthogonal complement contains no maximally entangled
//! vector. This crate provides:
//!
//! - [`linalg`]: bipartite state containers, Schmidt decomposition, and
//!   orthogonal complements;
//! - [`construct`]: the two closed-form UMEB families, one of `q*d^2` states
//!   when `d' = q*d + r` with `r > 0`, one of `d*m` states for each
//!   admissible column shift `m`;
//! - [`verify`]: the three defining conditions as checks, with structural
//!   unextendibility certificates and a seeded numerical complement search.

pub mod construct;
pub mod error;
pub mod linalg;
pub mod verify;

pub use construct::{
    allowed_m_values, complement_product_kets, construct_prop1, construct_prop2, Provenance,
    StateLabel, StateSet,
};
pub use error::{Error, Result};
pub use linalg::{
    inner_product, orthonormal_complement, reshape, schmidt_rank, schmidt_spectrum, BipartiteDims,
    SchmidtSpectrum, StateVector, SubspaceBasis,
};
pub use verify::{
    check_maximally_entangled, check_orthonormal, mes_detection_threshold, numerical_search,
    structural_certificate, verify_umeb, NumericalCertificate, SearchConfig,
    StructuralCertificate, UnextendibilityCertificate, VerificationReport, VerifyConfig,
};
