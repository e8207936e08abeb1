//! Generators for the two closed-form UMEB families in `C^d (x) C^d'` with
//! `d < d'`, written `d' = q*d + r`.
//!
//! Family one fills `q` blocks of `d` columns with generalized Bell states
//! and exists whenever `r > 0` (it produces `q*d^2` states, leaving the last
//! `r` columns untouched). Family two places Bell-like states on the first
//! `m` columns with the column index shifted mod `m`, for each admissible
//! `m`, producing `d*m` states. Both leave a complement spanned by product
//! kets whose second index lies beyond the construction's column range.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{BipartiteDims, StateVector, SubspaceBasis};

/// Identifies how a state was generated (or that it was supplied externally).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StateLabel {
    /// Family-one state with phase index `n`, row shift `m`, column block `l`.
    Prop1 { n: usize, m: usize, l: usize },
    /// Family-two state with phase index `i` and column shift `j`.
    Prop2 { i: usize, j: usize },
    External(String),
}

impl std::fmt::Display for StateLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateLabel::Prop1 { n, m, l } => write!(f, "prop1(n={n},m={m},l={l})"),
            StateLabel::Prop2 { i, j } => write!(f, "prop2(i={i},j={j})"),
            StateLabel::External(name) => write!(f, "{name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    Prop1,
    Prop2 { m: usize },
    Imported,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Prop1 => write!(f, "prop1"),
            Provenance::Prop2 { m } => write!(f, "prop2(m={m})"),
            Provenance::Imported => write!(f, "imported"),
        }
    }
}

/// An ordered set of labelled states with a common dimension pair.
#[derive(Debug, Clone)]
pub struct StateSet {
    dims: BipartiteDims,
    provenance: Provenance,
    states: Vec<(StateLabel, StateVector)>,
}

impl StateSet {
    /// Wraps externally supplied states. Orthonormality and entanglement are
    /// not checked here; that is the verifier's job.
    pub fn new_imported(
        dims: BipartiteDims,
        states: Vec<(StateLabel, StateVector)>,
    ) -> Result<Self> {
        Self::from_parts(dims, Provenance::Imported, states)
    }

    /// Reassembles a set (typically from a serialized document), enforcing
    /// the counting invariant of generator provenances: a family-one set has
    /// exactly `q*d^2` states and a family-two set exactly `d*m`.
    pub fn from_parts(
        dims: BipartiteDims,
        provenance: Provenance,
        states: Vec<(StateLabel, StateVector)>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptySet);
        }
        for (_, v) in &states {
            if v.dims() != dims {
                return Err(Error::DimensionMismatch {
                    left: (dims.d(), dims.d_prime()),
                    right: (v.dims().d(), v.dims().d_prime()),
                });
            }
        }
        let expected = match &provenance {
            Provenance::Prop1 => {
                if dims.d_prime() <= dims.d() {
                    return Err(Error::RequiresRectangular {
                        d: dims.d(),
                        d_prime: dims.d_prime(),
                    });
                }
                if dims.r() == 0 {
                    return Err(Error::RZero {
                        d: dims.d(),
                        d_prime: dims.d_prime(),
                    });
                }
                Some(dims.q() * dims.d() * dims.d())
            }
            Provenance::Prop2 { m } => {
                let allowed = allowed_m_values(dims)?;
                if !allowed.contains(m) {
                    return Err(Error::InadmissibleM {
                        m: *m,
                        d: dims.d(),
                        d_prime: dims.d_prime(),
                        allowed,
                    });
                }
                Some(dims.d() * m)
            }
            Provenance::Imported => None,
        };
        if let Some(expected) = expected {
            if states.len() != expected {
                return Err(Error::ProvenanceCountMismatch {
                    provenance: provenance.to_string(),
                    expected,
                    got: states.len(),
                });
            }
        }
        Ok(Self {
            dims,
            provenance,
            states,
        })
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The `m` parameter of a family-two set, if that is what this is.
    pub fn prop2_m(&self) -> Option<usize> {
        match self.provenance {
            Provenance::Prop2 { m } => Some(m),
            _ => None,
        }
    }

    pub fn states(&self) -> &[(StateLabel, StateVector)] {
        &self.states
    }

    pub fn vectors(&self) -> impl Iterator<Item = &StateVector> {
        self.states.iter().map(|(_, v)| v)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Reinterprets the states as an orthonormal basis of their span,
    /// validating orthonormality in the process.
    pub fn as_subspace_basis(&self, label: impl Into<String>) -> Result<SubspaceBasis> {
        SubspaceBasis::new(
            self.dims,
            self.vectors().cloned().collect(),
            label,
        )
    }

    /// Copy with state `index` removed. The result no longer satisfies a
    /// generator's counting invariant, so it is downgraded to imported.
    pub fn without_state(&self, index: usize) -> Self {
        let mut states = self.states.clone();
        states.remove(index);
        Self {
            dims: self.dims,
            provenance: Provenance::Imported,
            states,
        }
    }

    /// Copy with an extra state appended, downgraded to imported provenance.
    pub fn with_appended(&self, label: StateLabel, state: StateVector) -> Result<Self> {
        if state.dims() != self.dims {
            return Err(Error::DimensionMismatch {
                left: (self.dims.d(), self.dims.d_prime()),
                right: (state.dims().d(), state.dims().d_prime()),
            });
        }
        let mut states = self.states.clone();
        states.push((label, state));
        Ok(Self {
            dims: self.dims,
            provenance: Provenance::Imported,
            states,
        })
    }
}

/// `(k + shift) mod modulus`. Both generators wrap exactly one index and
/// leave every other index in plain integer arithmetic, so the modulus is
/// always explicit at the call site.
pub fn shift_mod(k: usize, shift: usize, modulus: usize) -> usize {
    (k + shift) % modulus
}

/// `exp(2*pi*i * e / d)` with the exponent reduced mod `d` first, so repeated
/// phases land on the identical float. Quarter-turn multiples are returned
/// exactly.
pub fn root_of_unity(d: usize, e: usize) -> Complex64 {
    let e = e % d;
    // 4e/d in {0,1,2,3} exactly: the axis-aligned roots.
    if (4 * e).is_multiple_of(d) {
        return match 4 * e / d {
            0 => Complex64::ONE,
            1 => Complex64::I,
            2 => -Complex64::ONE,
            3 => -Complex64::I,
            _ => unreachable!(),
        };
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / d as f64)
}

/// Generates the `q*d^2`-member family-one set for `d' = q*d + r`, `0 < r < d`.
///
/// State `(n, m, l)` has amplitude `zeta_d^{n*p} / sqrt(d)` on the ket
/// `|(p+m) mod d> |(l-1)*d + p>` for `p` in `[0, d)`. States are ordered
/// lexicographically by `(l, m, n)`.
pub fn construct_prop1(dims: BipartiteDims) -> Result<StateSet> {
    let (d, dp) = (dims.d(), dims.d_prime());
    if dp <= d {
        return Err(Error::RequiresRectangular { d, d_prime: dp });
    }
    if dims.r() == 0 {
        return Err(Error::RZero { d, d_prime: dp });
    }

    let inv_sqrt_d = 1.0 / (d as f64).sqrt();
    let mut states = Vec::with_capacity(dims.q() * d * d);
    for l in 1..=dims.q() {
        for m in 0..d {
            for n in 0..d {
                let terms: Vec<((usize, usize), Complex64)> = (0..d)
                    .map(|p| {
                        let ket = (shift_mod(p, m, d), (l - 1) * d + p);
                        (ket, root_of_unity(d, n * p) * inv_sqrt_d)
                    })
                    .collect();
                let state = StateVector::from_terms(dims, &terms)?;
                states.push((StateLabel::Prop1 { n, m, l }, state));
            }
        }
    }

    Ok(StateSet {
        dims,
        provenance: Provenance::Prop1,
        states,
    })
}

/// The column-shift parameters `m` for which the family-two construction is
/// known to give a UMEB, ascending.
///
/// For `d' >= 2d` these are `{d'-d+1, ..., d'-1}` (`d-1` values); for
/// `d < d' < 2d` with `r = d' - d` they are `{d'-r, ..., d'-1}` (`r` values,
/// the smallest of which is `m = d`).
pub fn allowed_m_values(dims: BipartiteDims) -> Result<Vec<usize>> {
    let (d, dp) = (dims.d(), dims.d_prime());
    if dp <= d {
        return Err(Error::RequiresRectangular { d, d_prime: dp });
    }
    let lo = if dp >= 2 * d {
        dp - d + 1
    } else {
        dp - (dp - d)
    };
    Ok((lo..dp).collect())
}

/// Generates the `d*m`-member family-two set for an admissible `m`.
///
/// State `(i, j)` has amplitude `zeta_d^{k*i} / sqrt(d)` on the ket
/// `|k> |(k+j) mod m>` for `k` in `[0, d)`; the wrap-around is mod `m`, not
/// mod `d'`, so all second-subsystem indices stay below `m`. States are
/// ordered lexicographically by `(j, i)`.
pub fn construct_prop2(dims: BipartiteDims, m_param: usize) -> Result<StateSet> {
    let allowed = allowed_m_values(dims)?;
    if !allowed.contains(&m_param) {
        return Err(Error::InadmissibleM {
            m: m_param,
            d: dims.d(),
            d_prime: dims.d_prime(),
            allowed,
        });
    }

    let d = dims.d();
    let inv_sqrt_d = 1.0 / (d as f64).sqrt();
    let mut states = Vec::with_capacity(d * m_param);
    for j in 0..m_param {
        for i in 0..d {
            let terms: Vec<((usize, usize), Complex64)> = (0..d)
                .map(|k| {
                    let ket = (k, shift_mod(k, j, m_param));
                    (ket, root_of_unity(d, k * i) * inv_sqrt_d)
                })
                .collect();
            let state = StateVector::from_terms(dims, &terms)?;
            states.push((StateLabel::Prop2 { i, j }, state));
        }
    }

    Ok(StateSet {
        dims,
        provenance: Provenance::Prop2 { m: m_param },
        states,
    })
}

/// The closed-form complement basis of a generated set: the product kets
/// `|i>|j>` with `j` in `[q*d, d')` for family one and `j` in `[m, d')` for
/// family two. Every state of the set has zero amplitude on these columns,
/// and dimension counting makes them a full complement basis.
pub fn complement_product_kets(set: &StateSet) -> Result<SubspaceBasis> {
    let dims = set.dims();
    let j_start = match set.provenance() {
        Provenance::Prop1 => dims.q() * dims.d(),
        Provenance::Prop2 { m } => *m,
        Provenance::Imported => return Err(Error::ImportedProvenance),
    };

    let mut kets = Vec::with_capacity(dims.d() * (dims.d_prime() - j_start));
    for i in 0..dims.d() {
        for j in j_start..dims.d_prime() {
            kets.push(StateVector::basis_ket(dims, i, j)?);
        }
    }
    SubspaceBasis::new(dims, kets, "V2")
}
