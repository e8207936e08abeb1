//! Verification of the three UMEB conditions for an arbitrary state set:
//! pairwise orthonormality, maximal entanglement of every member, and
//! unextendibility of the set within its orthogonal complement.
//!
//! Unextendibility is decided structurally where possible: if the complement
//! basis touches fewer than `d` second-subsystem columns, no complement
//! vector can have full Schmidt rank, and the set is certified unextendible.
//! When the column-support argument is inconclusive, a seeded random-restart
//! ascent searches the complement for a vector whose smallest Schmidt
//! coefficient reaches `1/sqrt(d)`; finding one proves the set extendible,
//! while not finding one is evidence (not proof) of unextendibility.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::construct::{complement_product_kets, Provenance, StateSet};
use crate::error::{Error, Result};
use crate::linalg::{
    inner_product, reshape, schmidt_spectrum, StateVector, SubspaceBasis, TOL_ORTH,
};

/// Amplitudes below this do not count towards a complement column's support.
pub const SUPPORT_TOL: f64 = 1e-10;

/// How far below `1/sqrt(d)` the search optimum may fall while still counting
/// as a maximally entangled vector.
pub const MES_MARGIN: f64 = 1e-6;

/// Singular values closer than this are treated as a degenerate pair by the
/// search, which then ascends on their sum instead of the smallest alone.
const TIE_GAP: f64 = 1e-3;

/// Search value at or above this threshold exhibits a maximally entangled
/// vector in the complement.
pub fn mes_detection_threshold(d: usize) -> f64 {
    1.0 / (d as f64).sqrt() - MES_MARGIN
}

/// Outcome of the pairwise-orthonormality check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthonormalityCheck {
    pub pass: bool,
    /// Largest entrywise deviation of the Gram matrix from the identity.
    pub max_residual: f64,
}

/// Outcome of the per-state maximal-entanglement check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementCheck {
    pub pass: bool,
    /// Largest deviation of any Schmidt coefficient from `1/sqrt(d)`.
    pub worst_deviation: f64,
}

/// Column-support certificate for unextendibility.
///
/// Valid iff `rank_bound < d`: every complement vector is then confined to
/// fewer than `d` reshape columns, capping its Schmidt rank below `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralCertificate {
    /// Second-subsystem indices carrying amplitude anywhere in the complement.
    pub column_support: BTreeSet<usize>,
    /// `|column_support|`; each vector's Schmidt rank is at most
    /// `min(d, rank_bound)`.
    pub rank_bound: usize,
    pub complement_dim: usize,
    pub valid: bool,
}

/// Report of the numerical complement search.
#[derive(Debug, Clone)]
pub struct NumericalCertificate {
    /// Largest smallest-Schmidt-coefficient found over all restarts.
    pub best_min_schmidt: f64,
    /// Unit vector in the complement attaining `best_min_schmidt`,
    /// phase-canonicalized.
    pub best_vector: StateVector,
    pub restarts: u32,
    pub steps: u32,
    pub seed: u64,
    /// `mes_detection_threshold(d)` used for the verdict below.
    pub threshold: f64,
    /// True iff a maximally entangled complement vector was exhibited,
    /// proving the set extendible.
    pub extending_found: bool,
}

/// How condition (iii) was decided.
#[derive(Debug, Clone)]
pub enum UnextendibilityCertificate {
    Structural(StructuralCertificate),
    Numerical(NumericalCertificate),
}

/// Aggregated result of the three checks.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub members: usize,
    pub orthonormal: OrthonormalityCheck,
    pub maximally_entangled: EntanglementCheck,
    /// `None` when orthonormality failed and the complement is undefined.
    pub unextendible: Option<UnextendibilityCertificate>,
    pub unextendible_pass: bool,
    pub overall: bool,
}

/// Budget and seed for [`numerical_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub restarts: u32,
    pub steps: u32,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            steps: 500,
            seed: 0,
        }
    }
}

/// Tolerances and search budget for [`verify_umeb`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub tol_orth: f64,
    pub tol_ent: f64,
    pub search: SearchConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            tol_orth: 1e-10,
            tol_ent: 1e-10,
            search: SearchConfig::default(),
        }
    }
}

/// Checks `<phi_i|phi_j> = delta_ij` over the whole set.
pub fn check_orthonormal(set: &StateSet, tol: f64) -> OrthonormalityCheck {
    let states = set.states();
    let mut max_residual: f64 = 0.0;
    for i in 0..states.len() {
        for j in i..states.len() {
            let g = inner_product(&states[i].1, &states[j].1)
                .expect("dims agree within a StateSet");
            let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
            max_residual = max_residual.max((g - target).norm());
        }
    }
    OrthonormalityCheck {
        pass: max_residual <= tol,
        max_residual,
    }
}

/// Checks that every state's Schmidt coefficients all equal `1/sqrt(d)`.
pub fn check_maximally_entangled(set: &StateSet, tol: f64) -> EntanglementCheck {
    let target = 1.0 / (set.dims().d() as f64).sqrt();
    let worst_deviation = set
        .vectors()
        .map(|v| schmidt_spectrum(v).max_deviation_from(target))
        .fold(0.0, f64::max);
    EntanglementCheck {
        pass: worst_deviation <= tol,
        worst_deviation,
    }
}

/// Column-support certificate computed from an explicit complement basis.
pub fn support_certificate(complement: &SubspaceBasis) -> StructuralCertificate {
    let dims = complement.dims();
    let mut column_support = BTreeSet::new();
    for v in complement.vectors() {
        for i in 0..dims.d() {
            for j in 0..dims.d_prime() {
                if v.amplitude(i, j).norm() > SUPPORT_TOL {
                    column_support.insert(j);
                }
            }
        }
    }
    let rank_bound = column_support.len();
    StructuralCertificate {
        valid: rank_bound < dims.d(),
        column_support,
        rank_bound,
        complement_dim: complement.dim(),
    }
}

/// An orthonormal basis of the set's orthogonal complement.
///
/// Generated sets get their closed-form product-ket complement, after an
/// explicit re-check that the kets really are orthogonal to every state;
/// anything else (including a generated set whose amplitudes were tampered
/// with) falls back to the dense computation.
pub fn complement_of(set: &StateSet) -> Result<SubspaceBasis> {
    if !matches!(set.provenance(), Provenance::Imported) {
        if let Ok(comp) = complement_product_kets(set) {
            if closed_form_is_consistent(set, &comp) {
                return Ok(comp);
            }
        }
    }
    crate::linalg::orthonormal_complement(&set.as_subspace_basis("V1")?)
}

fn closed_form_is_consistent(set: &StateSet, comp: &SubspaceBasis) -> bool {
    if set.len() + comp.dim() != set.dims().total() {
        return false;
    }
    comp.vectors().iter().all(|ket| {
        set.vectors().all(|v| {
            inner_product(ket, v)
                .map(|g| g.norm() <= TOL_ORTH)
                .unwrap_or(false)
        })
    })
}

/// Column-support certificate for the set's complement. An invalid
/// certificate means the structural argument is inconclusive, not that the
/// set is extendible.
pub fn structural_certificate(set: &StateSet) -> Result<StructuralCertificate> {
    Ok(support_certificate(&complement_of(set)?))
}

/// Maximizes the smallest Schmidt coefficient over unit vectors of the
/// complement's span, by projected ascent from seeded random starts.
///
/// The result is deterministic in `(seed, restarts, steps)`. A returned
/// `best_min_schmidt` reaching [`mes_detection_threshold`] exhibits a
/// maximally entangled vector orthogonal to the original set.
pub fn numerical_search(
    complement: &SubspaceBasis,
    config: &SearchConfig,
) -> Result<NumericalCertificate> {
    if config.restarts == 0 {
        return Err(Error::NoRestarts);
    }

    let dims = complement.dims();
    let d = dims.d();
    let mats: Vec<DMatrix<Complex64>> = complement.vectors().iter().map(reshape).collect();
    let k = mats.len();
    let sigma_cap = 1.0 / (d as f64).sqrt();

    let mut best_sigma = f64::NEG_INFINITY;
    let mut best_coeffs = vec![Complex64::ZERO; k];
    let mut record = |sigma: f64, coeffs: &[Complex64]| {
        if sigma > best_sigma {
            best_sigma = sigma;
            best_coeffs.copy_from_slice(coeffs);
        }
    };

    for restart in 0..config.restarts {
        let mut rng = ChaCha12Rng::seed_from_u64(restart_seed(config.seed, restart));
        let mut coeffs = random_unit_coeffs(&mut rng, k);
        record(singular_values_ascending(&mats, &coeffs)[0], &coeffs);

        let mut step = 0.3;
        'steps: for _ in 0..config.steps {
            let m = assemble(&mats, &coeffs);
            let svd = m.svd(true, true);
            let sv = &svd.singular_values;
            let mut order: Vec<usize> = (0..sv.len()).collect();
            order.sort_by(|&a, &b| sv[a].partial_cmp(&sv[b]).expect("finite singular values"));
            let (lo, next) = (sv[order[0]], sv[order[1]]);
            record(lo, &coeffs);

            // sigma_min is capped by 1/sqrt(d) on unit vectors.
            if lo >= sigma_cap - 1e-12 {
                break;
            }

            // At a degenerate smallest pair, sigma_min is non-smooth; ascend
            // on the sum of the two smallest coefficients instead.
            let degenerate = next - lo < TIE_GAP;
            let mut gradient = singular_value_gradient(&mats, &svd, order[0]);
            if degenerate {
                for (g, extra) in gradient
                    .iter_mut()
                    .zip(singular_value_gradient(&mats, &svd, order[1]))
                {
                    *g += extra;
                }
            }
            let objective = |values: &[f64]| {
                if degenerate {
                    values[0] + values[1]
                } else {
                    values[0]
                }
            };
            let current = if degenerate { lo + next } else { lo };

            // Project onto the tangent space of the unit sphere (real
            // inner product of the stacked real/imaginary coordinates).
            let overlap: f64 = coeffs
                .iter()
                .zip(&gradient)
                .map(|(c, g)| (c.conj() * g).re)
                .sum();
            let mut tangent_norm_sq = 0.0;
            for (g, c) in gradient.iter_mut().zip(&coeffs) {
                *g -= c * overlap;
                tangent_norm_sq += g.norm_sqr();
            }
            if tangent_norm_sq.sqrt() < 1e-13 {
                break;
            }

            // Backtracking line search on the active objective.
            loop {
                let Some(candidate) = retract(&coeffs, &gradient, step) else {
                    step *= 0.5;
                    if step < 1e-13 {
                        break 'steps;
                    }
                    continue;
                };
                let values = singular_values_ascending(&mats, &candidate);
                record(values[0], &candidate);
                if objective(&values) > current {
                    coeffs = candidate;
                    step = (step * 1.5).min(2.0);
                    break;
                }
                step *= 0.5;
                if step < 1e-13 {
                    break 'steps;
                }
            }
        }
    }

    let witness = assemble_state(complement, &best_coeffs)?;
    let best_min_schmidt = schmidt_spectrum(&witness).min_value();
    let threshold = mes_detection_threshold(d);
    Ok(NumericalCertificate {
        best_min_schmidt,
        best_vector: witness,
        restarts: config.restarts,
        steps: config.steps,
        seed: config.seed,
        threshold,
        extending_found: best_min_schmidt >= threshold,
    })
}

/// Runs the three checks and aggregates them.
///
/// Condition (iii) is decided structurally first; the numerical search is
/// the fallback for sets whose complement touches every column. When the
/// orthonormality check fails, the complement is not well defined and (iii)
/// is skipped (`unextendible` is `None`).
pub fn verify_umeb(set: &StateSet, config: &VerifyConfig) -> Result<VerificationReport> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let total = set.dims().total();
    if set.len() >= total {
        return Err(Error::TooManyStates {
            n: set.len(),
            total,
        });
    }

    let orthonormal = check_orthonormal(set, config.tol_orth);
    let maximally_entangled = check_maximally_entangled(set, config.tol_ent);

    let (unextendible, unextendible_pass) = if !orthonormal.pass {
        (None, false)
    } else {
        let complement = complement_of(set)?;
        let structural = support_certificate(&complement);
        if structural.valid {
            (
                Some(UnextendibilityCertificate::Structural(structural)),
                true,
            )
        } else {
            let numerical = numerical_search(&complement, &config.search)?;
            let pass = !numerical.extending_found;
            (
                Some(UnextendibilityCertificate::Numerical(numerical)),
                pass,
            )
        }
    };

    Ok(VerificationReport {
        members: set.len(),
        overall: orthonormal.pass && maximally_entangled.pass && unextendible_pass,
        orthonormal,
        maximally_entangled,
        unextendible,
        unextendible_pass,
    })
}

fn restart_seed(seed: u64, restart: u32) -> u64 {
    seed ^ (u64::from(restart) + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn random_unit_coeffs(rng: &mut ChaCha12Rng, k: usize) -> Vec<Complex64> {
    loop {
        let coeffs: Vec<Complex64> = (0..k)
            .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
            .collect();
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return coeffs.into_iter().map(|c| c / norm).collect();
        }
    }
}

fn gaussian(rng: &mut ChaCha12Rng) -> f64 {
    // Box-Muller; the first uniform is kept away from zero.
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn assemble(mats: &[DMatrix<Complex64>], coeffs: &[Complex64]) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(mats[0].nrows(), mats[0].ncols());
    for (b, &c) in mats.iter().zip(coeffs) {
        m += b * c;
    }
    m
}

fn singular_values_ascending(mats: &[DMatrix<Complex64>], coeffs: &[Complex64]) -> Vec<f64> {
    let svd = assemble(mats, coeffs).svd(false, false);
    let mut values: Vec<f64> = svd.singular_values.iter().copied().collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite singular values"));
    values
}

/// Ascent direction of `sigma_j(M(c))` with respect to the complex
/// coefficients: `conj(u_j^H B_k v_j)` per coefficient `k`.
fn singular_value_gradient(
    mats: &[DMatrix<Complex64>],
    svd: &nalgebra::SVD<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
    j: usize,
) -> Vec<Complex64> {
    let u = svd.u.as_ref().expect("svd computed with vectors");
    let vt = svd.v_t.as_ref().expect("svd computed with vectors");
    let (rows, cols) = (u.nrows(), vt.ncols());
    mats.iter()
        .map(|b| {
            let mut t = Complex64::ZERO;
            for a in 0..rows {
                for p in 0..cols {
                    t += u[(a, j)].conj() * b[(a, p)] * vt[(j, p)].conj();
                }
            }
            t.conj()
        })
        .collect()
}

fn retract(coeffs: &[Complex64], direction: &[Complex64], step: f64) -> Option<Vec<Complex64>> {
    let moved: Vec<Complex64> = coeffs
        .iter()
        .zip(direction)
        .map(|(c, g)| c + g * step)
        .collect();
    let norm = moved.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-14 {
        return None;
    }
    Some(moved.into_iter().map(|c| c / norm).collect())
}

fn assemble_state(complement: &SubspaceBasis, coeffs: &[Complex64]) -> Result<StateVector> {
    let n = complement.dims().total();
    let mut amplitudes = vec![Complex64::ZERO; n];
    for (v, &c) in complement.vectors().iter().zip(coeffs) {
        for (a, &x) in amplitudes.iter_mut().zip(v.amplitudes()) {
            *a += x * c;
        }
    }
    Ok(StateVector::normalized(complement.dims(), amplitudes)?.canonical_phase())
}
