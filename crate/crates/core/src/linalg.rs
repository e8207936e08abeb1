//! Dense complex linear algebra for bipartite pure states.
//!
//! A state of `C^d (x) C^d'` is stored as a flat amplitude vector over the
//! computational product basis, with `|i>|j>` at flat index `i * d' + j`
//! (first-subsystem index is the major index). Reshaping that vector into a
//! `d x d'` matrix turns Schmidt coefficients into singular values, which is
//! how every entanglement question in this crate is answered.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Normalization tolerance for [`StateVector`].
pub const TOL_NORM: f64 = 1e-10;
/// Pairwise orthonormality tolerance for [`SubspaceBasis`].
pub const TOL_ORTH: f64 = 1e-10;
/// Default threshold separating zero from nonzero Schmidt coefficients.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Amplitudes below this are treated as zero when fixing the canonical phase.
const PHASE_EPS: f64 = 1e-12;

/// Subsystem dimensions `(d, d')` with `d <= d'`, plus the Euclidean division
/// `d' = q*d + r` derived on demand.
///
/// The generators in [`crate::construct`] require `d' > d` strictly; the
/// square case is admitted here so that verification can handle sets like
/// Bell states in `C^2 (x) C^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BipartiteDims {
    d: usize,
    d_prime: usize,
}

impl BipartiteDims {
    pub fn new(d: usize, d_prime: usize) -> Result<Self> {
        if d < 2 || d_prime < d {
            return Err(Error::InvalidDims { d, d_prime });
        }
        Ok(Self { d, d_prime })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn d_prime(&self) -> usize {
        self.d_prime
    }

    /// Quotient of `d' = q*d + r`.
    pub fn q(&self) -> usize {
        self.d_prime / self.d
    }

    /// Remainder of `d' = q*d + r`, in `[0, d)`.
    pub fn r(&self) -> usize {
        self.d_prime % self.d
    }

    /// Total space dimension `d * d'`.
    pub fn total(&self) -> usize {
        self.d * self.d_prime
    }

    /// Flat index of the product ket `|i>|j>`.
    pub fn flat_index(&self, i: usize, j: usize) -> usize {
        i * self.d_prime + j
    }
}

impl std::fmt::Display for BipartiteDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C^{} (x) C^{}", self.d, self.d_prime)
    }
}

/// A normalized pure state of `C^d (x) C^d'` in the flat-index convention.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: BipartiteDims,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps an amplitude vector that is already normalized within [`TOL_NORM`].
    pub fn new(dims: BipartiteDims, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::AmplitudeLength {
                expected: dims.total(),
                got: amplitudes.len(),
            });
        }
        let norm = l2_norm(&amplitudes);
        let residual = (norm - 1.0).abs();
        if residual > TOL_NORM {
            return Err(Error::NotNormalized {
                residual,
                tol: TOL_NORM,
            });
        }
        Ok(Self { dims, amplitudes })
    }

    /// Rescales an arbitrary nonzero amplitude vector to unit norm.
    pub fn normalized(dims: BipartiteDims, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::AmplitudeLength {
                expected: dims.total(),
                got: amplitudes.len(),
            });
        }
        let norm = l2_norm(&amplitudes);
        if norm < 1e-14 {
            return Err(Error::ZeroVector { norm });
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self { dims, amplitudes })
    }

    /// The product ket `|i>|j>`.
    pub fn basis_ket(dims: BipartiteDims, i: usize, j: usize) -> Result<Self> {
        if i >= dims.d() || j >= dims.d_prime() {
            return Err(Error::KetOutOfRange {
                i,
                j,
                d: dims.d(),
                d_prime: dims.d_prime(),
            });
        }
        let mut amplitudes = vec![Complex64::ZERO; dims.total()];
        amplitudes[dims.flat_index(i, j)] = Complex64::ONE;
        Ok(Self { dims, amplitudes })
    }

    /// Builds a state from `((i, j), amplitude)` terms; repeated kets accumulate.
    pub fn from_terms(dims: BipartiteDims, terms: &[((usize, usize), Complex64)]) -> Result<Self> {
        let mut amplitudes = vec![Complex64::ZERO; dims.total()];
        for &((i, j), a) in terms {
            if i >= dims.d() || j >= dims.d_prime() {
                return Err(Error::KetOutOfRange {
                    i,
                    j,
                    d: dims.d(),
                    d_prime: dims.d_prime(),
                });
            }
            amplitudes[dims.flat_index(i, j)] += a;
        }
        Self::new(dims, amplitudes)
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude of the product ket `|i>|j>`.
    pub fn amplitude(&self, i: usize, j: usize) -> Complex64 {
        self.amplitudes[self.dims.flat_index(i, j)]
    }

    /// Multiplies by the unit phase that makes the first nonzero amplitude
    /// (in flat-index order) real and positive. States equal up to a global
    /// phase have identical canonical forms.
    pub fn canonical_phase(&self) -> Self {
        let Some(first) = self.amplitudes.iter().find(|a| a.norm() > PHASE_EPS) else {
            return self.clone();
        };
        let phase = first.conj() / first.norm();
        let amplitudes = self.amplitudes.iter().map(|a| a * phase).collect();
        Self {
            dims: self.dims,
            amplitudes,
        }
    }

    /// Euclidean distance between amplitude vectors (no phase alignment).
    pub fn distance_to(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Schmidt coefficients of a state: the `d` singular values of its reshape,
/// sorted descending. Their squares sum to 1 for a normalized state.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    values: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min_value(&self) -> f64 {
        *self.values.last().expect("spectrum has d >= 2 entries")
    }

    /// Largest `|sigma_k - target|` over the spectrum.
    pub fn max_deviation_from(&self, target: f64) -> f64 {
        self.values
            .iter()
            .map(|v| (v - target).abs())
            .fold(0.0, f64::max)
    }
}

/// An orthonormal set of states spanning a subspace of `C^d (x) C^d'`.
///
/// Orthonormality (within [`TOL_ORTH`]) is validated at construction, so a
/// value of this type is always a legitimate basis of its span.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    dims: BipartiteDims,
    vectors: Vec<StateVector>,
    label: String,
}

impl SubspaceBasis {
    pub fn new(
        dims: BipartiteDims,
        vectors: Vec<StateVector>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if vectors.is_empty() || vectors.len() > dims.total() {
            return Err(Error::BadBasisSize {
                got: vectors.len(),
                max: dims.total(),
            });
        }
        for v in &vectors {
            if v.dims() != dims {
                return Err(Error::DimensionMismatch {
                    left: (dims.d(), dims.d_prime()),
                    right: (v.dims().d(), v.dims().d_prime()),
                });
            }
        }
        for i in 0..vectors.len() {
            for j in i..vectors.len() {
                let g = inner_product(&vectors[i], &vectors[j])?;
                let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
                let residual = (g - target).norm();
                if residual > TOL_ORTH {
                    return Err(Error::NotOrthonormal {
                        i,
                        j,
                        residual,
                        tol: TOL_ORTH,
                    });
                }
            }
        }
        Ok(Self {
            dims,
            vectors,
            label: label.into(),
        })
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    /// Number of basis vectors, i.e. the dimension of the spanned subspace.
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The orthogonal projector onto the spanned subspace, as a dense
    /// `(d*d') x (d*d')` matrix.
    pub fn projector(&self) -> DMatrix<Complex64> {
        let n = self.dims.total();
        let mut p = DMatrix::<Complex64>::zeros(n, n);
        for v in &self.vectors {
            let amps = v.amplitudes();
            for row in 0..n {
                for col in 0..n {
                    p[(row, col)] += amps[row] * amps[col].conj();
                }
            }
        }
        p
    }
}

/// `<a|b>`, conjugate-linear in the first argument.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch {
            left: (a.dims().d(), a.dims().d_prime()),
            right: (b.dims().d(), b.dims().d_prime()),
        });
    }
    Ok(a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// The `d x d'` matrix with entry `(i, j)` equal to the amplitude of `|i>|j>`.
pub fn reshape(s: &StateVector) -> DMatrix<Complex64> {
    let (d, dp) = (s.dims().d(), s.dims().d_prime());
    DMatrix::from_fn(d, dp, |i, j| s.amplitude(i, j))
}

/// Schmidt coefficients of `s`: singular values of [`reshape`]`(s)`, sorted
/// descending. Invariant under a global phase of `s`.
///
/// Panics if the SVD fails to converge, which at these sizes indicates an
/// internal defect rather than a recoverable condition.
pub fn schmidt_spectrum(s: &StateVector) -> SchmidtSpectrum {
    let svd = reshape(s).svd(false, false);
    let mut values: Vec<f64> = svd.singular_values.iter().copied().collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    SchmidtSpectrum { values }
}

/// Number of Schmidt coefficients exceeding `tol`; in `[1, d]` for any
/// normalized state and sensible tolerance.
pub fn schmidt_rank(s: &StateVector, tol: f64) -> Result<usize> {
    if tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    Ok(schmidt_spectrum(s).values().iter().filter(|&&v| v > tol).count())
}

/// An orthonormal basis of the orthogonal complement of `basis`'s span.
///
/// Computed from the spectral decomposition of the orthogonal projector
/// `I - sum_k |v_k><v_k|`; its eigenvalues are 0 and 1 separated by a unit
/// gap, so the eigenvector filter below is unambiguous. Each returned vector
/// is phase-canonicalized, making the output deterministic.
pub fn orthonormal_complement(basis: &SubspaceBasis) -> Result<SubspaceBasis> {
    let n = basis.dims().total();
    let k = basis.dim();
    if k == n {
        return Err(Error::EmptyComplement { dim: k });
    }

    let p = DMatrix::<Complex64>::identity(n, n) - basis.projector();
    let eigen = p.symmetric_eigen();

    let mut vectors = Vec::with_capacity(n - k);
    for (idx, &lambda) in eigen.eigenvalues.iter().enumerate() {
        if lambda > 0.5 {
            let col: Vec<Complex64> = eigen.eigenvectors.column(idx).iter().copied().collect();
            vectors.push(StateVector::new(basis.dims(), col)?.canonical_phase());
        }
    }
    debug_assert_eq!(vectors.len(), n - k);

    SubspaceBasis::new(
        basis.dims(),
        vectors,
        format!("{}_perp", basis.label()),
    )
}

fn l2_norm(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}
