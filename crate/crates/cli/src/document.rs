//! The on-disk state-set format: JSON with amplitudes as `[re, im]` float64
//! pairs in flat-index order. Serialization is canonical (fixed key order,
//! two-space indent), so serialize -> parse -> serialize is byte-identical.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use umeb_core::construct::{Provenance, StateLabel, StateSet};
use umeb_core::linalg::{BipartiteDims, StateVector};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSetDocument {
    pub schema_version: String,
    pub d: usize,
    pub d_prime: usize,
    pub provenance: String,
    pub states: Vec<StateEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateEntry {
    pub label: String,
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("unsupported schema_version {got:?}, expected {SCHEMA_VERSION:?}")]
    UnsupportedSchema { got: String },

    #[error(
        "unknown provenance {got:?}; expected \"prop1\", \"prop2(m=<int>)\" or \"imported\""
    )]
    BadProvenance { got: String },

    #[error("state {index} ({label:?}): amplitudes field has {got} entries, expected d*d' = {expected}")]
    AmplitudeCount {
        index: usize,
        label: String,
        expected: usize,
        got: usize,
    },

    #[error("state {index} ({label:?}): {source}")]
    BadState {
        index: usize,
        label: String,
        source: umeb_core::Error,
    },

    #[error(transparent)]
    Core(#[from] umeb_core::Error),
}

impl StateSetDocument {
    pub fn from_set(set: &StateSet) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            d: set.dims().d(),
            d_prime: set.dims().d_prime(),
            provenance: set.provenance().to_string(),
            states: set
                .states()
                .iter()
                .map(|(label, v)| StateEntry {
                    label: label.to_string(),
                    amplitudes: v.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
                })
                .collect(),
        }
    }

    pub fn to_set(&self) -> Result<StateSet, DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::UnsupportedSchema {
                got: self.schema_version.clone(),
            });
        }
        let dims = BipartiteDims::new(self.d, self.d_prime)?;
        let provenance = parse_provenance(&self.provenance)?;

        let mut states = Vec::with_capacity(self.states.len());
        for (index, entry) in self.states.iter().enumerate() {
            if entry.amplitudes.len() != dims.total() {
                return Err(DocumentError::AmplitudeCount {
                    index,
                    label: entry.label.clone(),
                    expected: dims.total(),
                    got: entry.amplitudes.len(),
                });
            }
            let amps: Vec<Complex64> = entry
                .amplitudes
                .iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect();
            let vector = StateVector::new(dims, amps).map_err(|source| DocumentError::BadState {
                index,
                label: entry.label.clone(),
                source,
            })?;
            states.push((parse_label(&entry.label), vector));
        }

        Ok(StateSet::from_parts(dims, provenance, states)?)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}

fn parse_provenance(text: &str) -> Result<Provenance, DocumentError> {
    if text == "prop1" {
        return Ok(Provenance::Prop1);
    }
    if text == "imported" {
        return Ok(Provenance::Imported);
    }
    if let Some(inner) = text.strip_prefix("prop2(m=").and_then(|s| s.strip_suffix(')')) {
        if let Ok(m) = inner.parse::<usize>() {
            return Ok(Provenance::Prop2 { m });
        }
    }
    Err(DocumentError::BadProvenance {
        got: text.to_string(),
    })
}

/// Labels written by this tool parse back into their structured form; any
/// other string is kept verbatim.
fn parse_label(text: &str) -> StateLabel {
    if let Some(fields) = parse_fields(text, "prop1(", &["n", "m", "l"]) {
        return StateLabel::Prop1 {
            n: fields[0],
            m: fields[1],
            l: fields[2],
        };
    }
    if let Some(fields) = parse_fields(text, "prop2(", &["i", "j"]) {
        return StateLabel::Prop2 {
            i: fields[0],
            j: fields[1],
        };
    }
    StateLabel::External(text.to_string())
}

fn parse_fields(text: &str, prefix: &str, names: &[&str]) -> Option<Vec<usize>> {
    let inner = text.strip_prefix(prefix)?.strip_suffix(')')?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != names.len() {
        return None;
    }
    let mut values = Vec::with_capacity(names.len());
    for (part, name) in parts.iter().zip(names) {
        let value = part.strip_prefix(name)?.strip_prefix('=')?;
        values.push(value.parse().ok()?);
    }
    Some(values)
}
