//! Human-readable and JSON renderings of verification reports and search
//! results.
//!
//! The numerical path is one-sided: a witness at the threshold proves the
//! set extendible, while the absence of one is evidence of unextendibility,
//! not a proof. The renderings say so whenever that path decided the outcome.

use serde_json::{json, Value};
use umeb_core::linalg::{BipartiteDims, StateVector};
use umeb_core::verify::{
    NumericalCertificate, UnextendibilityCertificate, VerificationReport,
};

pub fn human_report(dims: BipartiteDims, provenance: &str, report: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "UMEB verification for d={}, d'={} ({} states, provenance {})\n",
        dims.d(),
        dims.d_prime(),
        report.members,
        provenance,
    ));
    out.push_str(&format!(
        "  orthonormal:          {}  (max Gram residual {:.3e})\n",
        pass_str(report.orthonormal.pass),
        report.orthonormal.max_residual,
    ));
    out.push_str(&format!(
        "  maximally entangled:  {}  (worst Schmidt deviation {:.3e})\n",
        pass_str(report.maximally_entangled.pass),
        report.maximally_entangled.worst_deviation,
    ));
    match &report.unextendible {
        None => out.push_str(
            "  unextendible:         skipped (set is not orthonormal, complement undefined)\n",
        ),
        Some(UnextendibilityCertificate::Structural(cert)) => {
            out.push_str(&format!(
                "  unextendible:         {}  (structural: complement columns {:?}, \
                 Schmidt rank of complement vectors <= {} < d = {})\n",
                pass_str(report.unextendible_pass),
                cert.column_support.iter().collect::<Vec<_>>(),
                cert.rank_bound,
                dims.d(),
            ));
        }
        Some(UnextendibilityCertificate::Numerical(cert)) => {
            out.push_str(&format!(
                "  unextendible:         {}  (numerical: best min Schmidt value {:.6e}, \
                 threshold {:.6e}; restarts={}, steps={}, seed={})\n",
                pass_str(report.unextendible_pass),
                cert.best_min_schmidt,
                cert.threshold,
                cert.restarts,
                cert.steps,
                cert.seed,
            ));
            if cert.extending_found {
                out.push_str(&format!(
                    "    extending maximally entangled vector found:\n      {}\n",
                    format_state(&cert.best_vector),
                ));
            } else {
                out.push_str(
                    "    no extending vector found; search evidence only, not a proof\n",
                );
            }
        }
    }
    out.push_str(&format!(
        "overall: {}\n",
        if report.overall { "PASS" } else { "FAIL" }
    ));
    out
}

pub fn json_report(dims: BipartiteDims, provenance: &str, report: &VerificationReport) -> Value {
    json!({
        "d": dims.d(),
        "d_prime": dims.d_prime(),
        "provenance": provenance,
        "members": report.members,
        "orthonormal": {
            "pass": report.orthonormal.pass,
            "max_residual": report.orthonormal.max_residual,
        },
        "maximally_entangled": {
            "pass": report.maximally_entangled.pass,
            "worst_deviation": report.maximally_entangled.worst_deviation,
        },
        "unextendible": unextendibility_json(report),
        "overall": report.overall,
    })
}

fn unextendibility_json(report: &VerificationReport) -> Value {
    match &report.unextendible {
        None => json!({
            "pass": false,
            "method": "skipped",
            "reason": "set is not orthonormal, complement undefined",
        }),
        Some(UnextendibilityCertificate::Structural(cert)) => json!({
            "pass": report.unextendible_pass,
            "method": "structural",
            "column_support": cert.column_support.iter().collect::<Vec<_>>(),
            "rank_bound": cert.rank_bound,
            "complement_dim": cert.complement_dim,
        }),
        Some(UnextendibilityCertificate::Numerical(cert)) => json!({
            "pass": report.unextendible_pass,
            "method": "numerical",
            "best_min_schmidt": cert.best_min_schmidt,
            "threshold": cert.threshold,
            "restarts": cert.restarts,
            "steps": cert.steps,
            "seed": cert.seed,
            "extending_found": cert.extending_found,
            "witness": amplitude_pairs(&cert.best_vector),
            "note": "a missing witness is evidence of unextendibility, not a proof",
        }),
    }
}

pub fn human_search(complement_dim: usize, cert: &NumericalCertificate) -> String {
    let mut out = String::new();
    out.push_str(&format!("complement dimension: {complement_dim}\n"));
    out.push_str(&format!(
        "best min Schmidt value: {:.9e} (threshold {:.9e}; restarts={}, steps={}, seed={})\n",
        cert.best_min_schmidt, cert.threshold, cert.restarts, cert.steps, cert.seed,
    ));
    if cert.extending_found {
        out.push_str(&format!(
            "maximally entangled vector found:\n  {}\n",
            format_state(&cert.best_vector),
        ));
    } else {
        out.push_str("no maximally entangled vector found (evidence, not a proof)\n");
    }
    out
}

pub fn json_search(complement_dim: usize, cert: &NumericalCertificate) -> Value {
    json!({
        "complement_dim": complement_dim,
        "best_min_schmidt": cert.best_min_schmidt,
        "threshold": cert.threshold,
        "restarts": cert.restarts,
        "steps": cert.steps,
        "seed": cert.seed,
        "extending_found": cert.extending_found,
        "witness": amplitude_pairs(&cert.best_vector),
    })
}

fn pass_str(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn amplitude_pairs(v: &StateVector) -> Vec<[f64; 2]> {
    v.amplitudes().iter().map(|a| [a.re, a.im]).collect()
}

/// Nonzero terms of a state, e.g. `0.707107|0,1> - 0.707107|1,0>`.
fn format_state(v: &StateVector) -> String {
    let dims = v.dims();
    let mut out = String::new();
    for i in 0..dims.d() {
        for j in 0..dims.d_prime() {
            let a = v.amplitude(i, j);
            if a.norm() <= 1e-8 {
                continue;
            }
            let real = a.im.abs() <= 1e-10;
            if out.is_empty() {
                if real && a.re < 0.0 {
                    out.push('-');
                }
            } else {
                out.push_str(if real && a.re < 0.0 { " - " } else { " + " });
            }
            if real {
                out.push_str(&format!("{:.6}", a.re.abs()));
            } else {
                out.push_str(&format!("({:.6}{:+.6}i)", a.re, a.im));
            }
            out.push_str(&format!("|{i},{j}>"));
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}
