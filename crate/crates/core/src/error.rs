use thiserror::Error;

/// Errors produced by state construction, linear algebra, and verification.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid bipartite dimensions d={d}, d'={d_prime}: require d >= 2 and d' >= d")]
    InvalidDims { d: usize, d_prime: usize },

    #[error("construction requires d' > d, got d={d}, d'={d_prime}")]
    RequiresRectangular { d: usize, d_prime: usize },

    #[error(
        "construction unavailable for d={d}, d'={d_prime}: d' = q*d with r = 0 \
         (the q*d^2 states would already span the whole space)"
    )]
    RZero { d: usize, d_prime: usize },

    #[error("m = {m} is not admissible for d={d}, d'={d_prime}; admissible values: {allowed:?}")]
    InadmissibleM {
        m: usize,
        d: usize,
        d_prime: usize,
        allowed: Vec<usize>,
    },

    #[error("amplitude vector has length {got}, expected d*d' = {expected}")]
    AmplitudeLength { expected: usize, got: usize },

    #[error("state vector is not normalized: |norm - 1| = {residual:e} exceeds {tol:e}")]
    NotNormalized { residual: f64, tol: f64 },

    #[error("cannot normalize a (near-)zero vector, norm = {norm:e}")]
    ZeroVector { norm: f64 },

    #[error("basis ket index ({i}, {j}) out of range for d={d}, d'={d_prime}")]
    KetOutOfRange {
        i: usize,
        j: usize,
        d: usize,
        d_prime: usize,
    },

    #[error("dimension mismatch: ({0}, {1}) vs ({2}, {3})", .left.0, .left.1, .right.0, .right.1)]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error(
        "vectors {i} and {j} are not orthonormal: |<v_{i}|v_{j}> - delta_ij| = {residual:e} \
         exceeds {tol:e}"
    )]
    NotOrthonormal {
        i: usize,
        j: usize,
        residual: f64,
        tol: f64,
    },

    #[error("subspace basis must contain between 1 and {max} vectors, got {got}")]
    BadBasisSize { got: usize, max: usize },

    #[error("orthogonal complement is empty: the {dim} input vectors already span the space")]
    EmptyComplement { dim: usize },

    #[error("state set is empty")]
    EmptySet,

    #[error("a set of {n} states in a {total}-dimensional space cannot be an unextendible basis")]
    TooManyStates { n: usize, total: usize },

    #[error("closed-form complement requires a generated set; this set has imported provenance")]
    ImportedProvenance,

    #[error("a {provenance} set must contain exactly {expected} states, got {got}")]
    ProvenanceCountMismatch {
        provenance: String,
        expected: usize,
        got: usize,
    },

    #[error("tolerance must be positive, got {0:e}")]
    InvalidTolerance(f64),

    #[error("numerical search requires at least one restart")]
    NoRestarts,
}

pub type Result<T> = std::result::Result<T, Error>;
