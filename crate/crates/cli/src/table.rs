//! Plain-text tables of state sets, one row per state, columns headed by
//! product-ket labels.
//!
//! Symbolic mode undoes the `1/sqrt(d)` normalization and prints each entry
//! as a `d`-th root of unity (`1`, `-1`, `w`, `w^2`, ...) or `0`, matching
//! the usual presentation of these bases. Rows are phase-canonicalized
//! first, so two sets differing only by per-state global phases print the
//! same table. Amplitudes off the root-of-unity grid demote the whole table
//! to numeric rendering, with a warning.

use num_complex::Complex64;
use umeb_core::construct::{root_of_unity, Provenance, StateSet};
use umeb_core::linalg::BipartiteDims;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMode {
    Symbolic { unicode: bool },
    Numeric,
}

#[derive(Debug, Clone)]
pub struct RenderedTable {
    pub text: String,
    pub warnings: Vec<String>,
}

/// Grid tolerance: a symbolic cell must match a root of unity this closely.
const GRID_TOL: f64 = 1e-10;

/// Column order for a set's table.
///
/// Generated sets group columns the way their construction fills them:
/// family one lists each `d`-column block in turn, family two the first `m`
/// columns; the untouched complement columns trail at the end. Imported
/// sets get plain flat-index order.
pub fn column_order(set: &StateSet) -> Vec<(usize, usize)> {
    let dims = set.dims();
    let (d, dp) = (dims.d(), dims.d_prime());
    match set.provenance() {
        Provenance::Prop1 => {
            let mut cols = Vec::with_capacity(dims.total());
            for l in 1..=dims.q() {
                for i in 0..d {
                    for c in 0..d {
                        cols.push((i, (l - 1) * d + c));
                    }
                }
            }
            for i in 0..d {
                for j in dims.q() * d..dp {
                    cols.push((i, j));
                }
            }
            cols
        }
        Provenance::Prop2 { m } => {
            let mut cols = Vec::with_capacity(dims.total());
            for i in 0..d {
                for j in 0..*m {
                    cols.push((i, j));
                }
            }
            for i in 0..d {
                for j in *m..dp {
                    cols.push((i, j));
                }
            }
            cols
        }
        Provenance::Imported => (0..d)
            .flat_map(|i| (0..dp).map(move |j| (i, j)))
            .collect(),
    }
}

pub fn render_table(set: &StateSet, mode: TableMode) -> RenderedTable {
    let mut warnings = Vec::new();
    let mode = match mode {
        TableMode::Symbolic { unicode } => match try_symbolic_cells(set, unicode) {
            Some(cells) => return RenderedTable {
                text: layout(set, cells),
                warnings,
            },
            None => {
                warnings.push(
                    "amplitudes are not multiples of d-th roots of unity; \
                     falling back to numeric table"
                        .to_string(),
                );
                TableMode::Numeric
            }
        },
        numeric => numeric,
    };
    debug_assert_eq!(mode, TableMode::Numeric);

    let cols = column_order(set);
    let cells: Vec<Vec<String>> = set
        .states()
        .iter()
        .map(|(_, v)| {
            let v = v.canonical_phase();
            cols.iter()
                .map(|&(i, j)| format_complex(v.amplitude(i, j)))
                .collect()
        })
        .collect();
    RenderedTable {
        text: layout(set, cells),
        warnings,
    }
}

/// All rows as symbolic tokens, or `None` if any cell is off-grid.
fn try_symbolic_cells(set: &StateSet, unicode: bool) -> Option<Vec<Vec<String>>> {
    let cols = column_order(set);
    let scale = (set.dims().d() as f64).sqrt();
    set.states()
        .iter()
        .map(|(_, v)| {
            let v = v.canonical_phase();
            cols.iter()
                .map(|&(i, j)| symbolic_cell(v.amplitude(i, j) * scale, set.dims().d(), unicode))
                .collect()
        })
        .collect()
}

fn symbolic_cell(value: Complex64, d: usize, unicode: bool) -> Option<String> {
    if value.norm() <= GRID_TOL {
        return Some("0".to_string());
    }
    let exponent = (0..d).find(|&k| (value - root_of_unity(d, k)).norm() <= GRID_TOL)?;
    let omega = if unicode { "\u{03c9}" } else { "w" };
    Some(match exponent {
        0 => "1".to_string(),
        k if 2 * k == d => "-1".to_string(),
        1 => omega.to_string(),
        k => format!("{omega}^{k}"),
    })
}

fn format_complex(value: Complex64) -> String {
    format!("{:.4}{:+.4}i", value.re, value.im)
}

fn ket_label(dims: BipartiteDims, i: usize, j: usize) -> String {
    if dims.d_prime() <= 10 {
        format!("{i}{j}")
    } else {
        format!("{i}.{j}")
    }
}

/// Right-aligns every column to its widest cell, two spaces between columns.
fn layout(set: &StateSet, cells: Vec<Vec<String>>) -> String {
    let dims = set.dims();
    let headers: Vec<String> = column_order(set)
        .iter()
        .map(|&(i, j)| ket_label(dims, i, j))
        .collect();

    let mut widths: Vec<usize> = headers.iter().map(String::len).collect();
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }

    let mut out = String::new();
    let mut write_row = |row: &[String]| {
        for (idx, (cell, width)) in row.iter().zip(&widths).enumerate() {
            if idx > 0 {
                out.push_str("  ");
            }
            for _ in 0..(width - cell.chars().count()) {
                out.push(' ');
            }
            out.push_str(cell);
        }
        out.push('\n');
    };

    write_row(&headers);
    for row in &cells {
        write_row(row);
    }
    out
}
