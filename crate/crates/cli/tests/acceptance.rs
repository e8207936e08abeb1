//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! The reference tables are transcribed here independently of the renderer
//! and the golden fixtures; rows are compared modulo a global phase per row,
//! so either sign convention for rows like `01 - 10` is accepted.
//!
//! Run with `cargo test -p umeb-cli --test acceptance -- --nocapture`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::{Command, Output};
use std::time::Instant;

use num_complex::Complex64;
use umeb_core::construct::{
    allowed_m_values, construct_prop1, construct_prop2, root_of_unity, StateLabel, StateSet,
};
use umeb_core::linalg::{BipartiteDims, StateVector};
use umeb_core::verify::{
    check_maximally_entangled, check_orthonormal, complement_of, numerical_search,
    support_certificate, verify_umeb, SearchConfig, UnextendibilityCertificate, VerifyConfig,
};

const TABLE_1: (&str, &str) = (
    "00 01 10 11 02 03 12 13 04 14",
    "1 0 0 1 0 0 0 0 0 0
     1 0 0 -1 0 0 0 0 0 0
     0 1 1 0 0 0 0 0 0 0
     0 1 -1 0 0 0 0 0 0 0
     0 0 0 0 1 0 0 1 0 0
     0 0 0 0 1 0 0 -1 0 0
     0 0 0 0 0 1 1 0 0 0
     0 0 0 0 0 1 -1 0 0 0",
);

const TABLE_2: (&str, &str) = (
    "00 01 02 10 11 12 03 13",
    "1 0 0 0 1 0 0 0
     1 0 0 0 -1 0 0 0
     0 1 0 0 0 1 0 0
     0 1 0 0 0 -1 0 0
     0 0 1 1 0 0 0 0
     0 0 1 -1 0 0 0 0",
);

const TABLE_3: (&str, &str) = (
    "00 01 02 03 04 10 11 12 13 14 20 21 22 23 24 05 15 25",
    "1 0 0 0 0 0 1 0 0 0 0 0 1 0 0 0 0 0
     1 0 0 0 0 0 w 0 0 0 0 0 w^2 0 0 0 0 0
     1 0 0 0 0 0 w^2 0 0 0 0 0 w 0 0 0 0 0
     0 1 0 0 0 0 0 1 0 0 0 0 0 1 0 0 0 0
     0 1 0 0 0 0 0 w 0 0 0 0 0 w^2 0 0 0 0
     0 1 0 0 0 0 0 w^2 0 0 0 0 0 w 0 0 0 0
     0 0 1 0 0 0 0 0 1 0 0 0 0 0 1 0 0 0
     0 0 1 0 0 0 0 0 w 0 0 0 0 0 w^2 0 0 0
     0 0 1 0 0 0 0 0 w^2 0 0 0 0 0 w 0 0 0
     0 0 0 1 0 0 0 0 0 1 1 0 0 0 0 0 0 0
     0 0 0 1 0 0 0 0 0 w w^2 0 0 0 0 0 0 0
     0 0 0 1 0 0 0 0 0 w^2 w 0 0 0 0 0 0 0
     0 0 0 0 1 1 0 0 0 0 0 1 0 0 0 0 0 0
     0 0 0 0 1 w 0 0 0 0 0 w^2 0 0 0 0 0 0
     0 0 0 0 1 w^2 0 0 0 0 0 w 0 0 0 0 0 0",
);

fn umeb(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_umeb"))
        .args(args)
        .env_remove("UMEB_SEED")
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "umeb {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout");
    out
}

fn dims(d: usize, dp: usize) -> BipartiteDims {
    BipartiteDims::new(d, dp).unwrap()
}

fn token_value(token: &str, d: usize) -> Complex64 {
    match token {
        "0" => Complex64::ZERO,
        "1" => Complex64::ONE,
        "-1" => -Complex64::ONE,
        "w" => root_of_unity(d, 1),
        _ => {
            let k: usize = token
                .strip_prefix("w^")
                .unwrap_or_else(|| panic!("unknown table token {token:?}"))
                .parse()
                .unwrap();
            root_of_unity(d, k)
        }
    }
}

fn parse_table(text: &str, d: usize) -> (Vec<String>, Vec<Vec<Complex64>>) {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .expect("table has a header")
        .split_whitespace()
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|line| {
            line.split_whitespace()
                .map(|tok| token_value(tok, d))
                .collect()
        })
        .collect();
    (header, rows)
}

fn reference_table(spec: (&str, &str), d: usize) -> (Vec<String>, Vec<Vec<Complex64>>) {
    let text = format!("{}\n{}", spec.0, spec.1);
    parse_table(&text, d)
}

/// Row equality up to one global unit phase.
fn rows_equal_mod_phase(a: &[Complex64], b: &[Complex64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(pivot) = b.iter().position(|z| z.norm() > 1e-9) else {
        return a.iter().all(|z| z.norm() <= 1e-9);
    };
    if a[pivot].norm() <= 1e-9 {
        return false;
    }
    let phase = a[pivot] / b[pivot];
    if (phase.norm() - 1.0).abs() > 1e-9 {
        return false;
    }
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y * phase).norm() <= 1e-9)
}

fn assert_table_matches(output: &str, reference: (&str, &str), d: usize, what: &str) {
    let (header, rows) = parse_table(output, d);
    let (ref_header, ref_rows) = reference_table(reference, d);
    assert_eq!(header, ref_header, "{what}: column order differs");
    assert_eq!(rows.len(), ref_rows.len(), "{what}: row count differs");
    for (idx, (row, expected)) in rows.iter().zip(&ref_rows).enumerate() {
        assert!(
            rows_equal_mod_phase(row, expected),
            "{what}: row {} differs beyond a global phase",
            idx + 1
        );
    }
}

/// Every construction the generators offer for 2 <= d < d' <= 8.
fn sweep_sets() -> Vec<StateSet> {
    let mut sets = Vec::new();
    for d in 2..8 {
        for dp in (d + 1)..=8 {
            let dd = dims(d, dp);
            if dd.r() > 0 {
                sets.push(construct_prop1(dd).unwrap());
            }
            for m in allowed_m_values(dd).unwrap() {
                sets.push(construct_prop2(dd, m).unwrap());
            }
        }
    }
    sets
}

#[test]
fn criterion_1_golden_table_8_member_2x5() {
    let start = Instant::now();
    let out = umeb(&["construct", "--d", "2", "--dprime", "5", "--method", "prop1", "--format", "table"]);
    let elapsed = start.elapsed();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_table_matches(&text, TABLE_1, 2, "8-member table");
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "construction took {elapsed:?}, budget 1 s"
    );
    println!("criterion 1 PASS: 8-member 2x5 table reproduced (in {elapsed:?})");
}

#[test]
fn criterion_2_golden_table_6_member_2x4() {
    let out = umeb(&[
        "construct", "--d", "2", "--dprime", "4", "--method", "prop2", "--m", "3", "--format",
        "table",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_table_matches(&text, TABLE_2, 2, "6-member table");
    println!("criterion 2 PASS: 6-member 2x4 table reproduced");
}

#[test]
fn criterion_3_golden_table_15_member_3x6() {
    let out = umeb(&[
        "construct", "--d", "3", "--dprime", "6", "--method", "prop2", "--m", "5", "--format",
        "table",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_table_matches(&text, TABLE_3, 3, "15-member table");

    // Entries stay in {0, 1, w, w^2}.
    for token in text.lines().skip(1).flat_map(str::split_whitespace) {
        assert!(
            matches!(token, "0" | "1" | "w" | "w^2"),
            "unexpected entry {token:?}"
        );
    }
    println!("criterion 3 PASS: 15-member 3x6 table reproduced with entries in {{0, 1, w, w^2}}");
}

#[test]
fn criterion_4_sweep_verifies_every_construction() {
    let start = Instant::now();
    let sets = sweep_sets();
    assert!(!sets.is_empty());
    let config = VerifyConfig::default();
    for set in &sets {
        let report = verify_umeb(set, &config).unwrap();
        let tag = format!("{} {}", set.dims(), set.provenance());
        assert!(report.overall, "{tag}: verification failed");
        assert!(
            report.orthonormal.max_residual < 1e-10,
            "{tag}: residual {:e}",
            report.orthonormal.max_residual
        );
        assert!(
            report.maximally_entangled.worst_deviation < 1e-10,
            "{tag}: deviation {:e}",
            report.maximally_entangled.worst_deviation
        );
        match &report.unextendible {
            Some(UnextendibilityCertificate::Structural(cert)) => {
                assert!(cert.valid, "{tag}: structural certificate invalid")
            }
            other => panic!("{tag}: expected structural certificate, got {other:?}"),
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "sweep took {elapsed:?}, budget 30 s"
    );
    println!(
        "criterion 4 PASS: {} constructions verified structurally in {elapsed:?}",
        sets.len()
    );
}

#[test]
fn criterion_5_enumerate_counts_d_minus_1_sizes_at_dprime_2d() {
    for d in [3usize, 4, 5] {
        let dp = 2 * d;
        let out = umeb(&["enumerate", "--d", &d.to_string(), "--dprime", &dp.to_string()]);
        let text = String::from_utf8(out.stdout).unwrap();

        assert!(
            text.contains("prop1: unavailable"),
            "d={d}: prop1 should be unavailable at d' = 2d\n{text}"
        );

        let mut sizes = std::collections::BTreeSet::new();
        for line in text.lines() {
            if let Some(rest) = line.trim().strip_prefix("prop2 m=") {
                let (m, count) = rest.split_once(": ").unwrap();
                let m: usize = m.parse().unwrap();
                let count: usize = count.strip_suffix(" members").unwrap().parse().unwrap();
                assert_eq!(count, d * m);
                sizes.insert(count);
            }
        }
        let expected: std::collections::BTreeSet<usize> =
            ((dp - d + 1)..dp).map(|m| d * m).collect();
        assert_eq!(sizes, expected, "d={d}: sizes differ");
        assert_eq!(sizes.len(), d - 1, "d={d}: expected d-1 distinct sizes");
        assert!(
            text.contains(&format!("distinct UMEB sizes: {}", d - 1)),
            "d={d}:\n{text}"
        );
    }
    println!("criterion 5 PASS: d-1 distinct UMEB sizes reported for d in {{3,4,5}}, d' = 2d");
}

#[test]
fn criterion_6_member_counts() {
    assert_eq!(construct_prop1(dims(2, 5)).unwrap().len(), 8);
    assert_eq!(construct_prop1(dims(3, 7)).unwrap().len(), 18);
    assert_eq!(construct_prop2(dims(3, 6), 4).unwrap().len(), 12);
    assert_eq!(construct_prop2(dims(3, 6), 5).unwrap().len(), 15);
    for set in sweep_sets() {
        let dd = set.dims();
        let expected = match set.provenance() {
            umeb_core::Provenance::Prop1 => dd.q() * dd.d() * dd.d(),
            umeb_core::Provenance::Prop2 { m } => dd.d() * m,
            umeb_core::Provenance::Imported => unreachable!(),
        };
        assert_eq!(set.len(), expected, "{} {}", dd, set.provenance());
    }
    println!("criterion 6 PASS: member counts are q*d^2 (prop1) and d*m (prop2) across the sweep");
}

#[test]
fn criterion_7_oracle_cross_check() {
    // Negative direction: wherever the structural certificate applies, the
    // search cannot find anything entangled in the complement.
    let reduced = SearchConfig {
        restarts: 4,
        steps: 60,
        seed: 1,
    };
    let mut checked = 0;
    for set in sweep_sets() {
        let complement = complement_of(&set).unwrap();
        if !support_certificate(&complement).valid {
            continue;
        }
        let cert = numerical_search(&complement, &reduced).unwrap();
        assert!(
            cert.best_min_schmidt <= 1e-6,
            "{} {}: best {:e}",
            set.dims(),
            set.provenance(),
            cert.best_min_schmidt
        );
        checked += 1;
    }
    assert!(checked > 0);

    // Positive control: three Bell states leave the fourth in their
    // complement, and the search must find it with the default budget.
    let d = dims(2, 2);
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let bell = |terms: &[((usize, usize), Complex64)]| StateVector::from_terms(d, terms).unwrap();
    let set = StateSet::new_imported(
        d,
        vec![
            (StateLabel::External("phi+".into()), bell(&[((0, 0), h), ((1, 1), h)])),
            (StateLabel::External("phi-".into()), bell(&[((0, 0), h), ((1, 1), -h)])),
            (StateLabel::External("psi+".into()), bell(&[((0, 1), h), ((1, 0), h)])),
        ],
    )
    .unwrap();
    let complement = complement_of(&set).unwrap();
    let cert = numerical_search(&complement, &SearchConfig::default()).unwrap();
    assert!(
        cert.best_min_schmidt >= FRAC_1_SQRT_2 - 1e-5,
        "positive control best {:e}",
        cert.best_min_schmidt
    );
    let psi_minus = bell(&[((0, 1), h), ((1, 0), -h)]).canonical_phase();
    let distance = cert.best_vector.canonical_phase().distance_to(&psi_minus);
    assert!(distance <= 1e-4, "witness distance {distance:e}");

    println!(
        "criterion 7 PASS: search finds nothing over {checked} certified complements \
         and recovers the fourth Bell state as positive control"
    );
}

#[test]
fn criterion_8_definition_conditions_as_properties() {
    let cases = vec![
        construct_prop1(dims(2, 5)).unwrap(),
        construct_prop2(dims(2, 5), 4).unwrap(),
        construct_prop2(dims(3, 6), 4).unwrap(),
        construct_prop2(dims(3, 6), 5).unwrap(),
    ];
    let mut removals = 0;
    let mut appends = 0;
    for set in &cases {
        let d = set.dims().d() as f64;
        let report = verify_umeb(set, &VerifyConfig::default()).unwrap();
        assert!(report.overall);

        // Dropping any single state preserves orthonormality and maximal
        // entanglement of the remainder.
        for index in 0..set.len() {
            let smaller = set.without_state(index);
            assert!(check_orthonormal(&smaller, 1e-10).pass);
            assert!(check_maximally_entangled(&smaller, 1e-10).pass);
            removals += 1;
        }

        // Appending any complement product ket keeps the set orthonormal but
        // breaks maximal entanglement by a macroscopic margin: the deviation
        // formula max_k |sigma_k - 1/sqrt(d)| on a product ket's spectrum
        // (1, 0, ...) yields max(1 - 1/sqrt(d), 1/sqrt(d)) >= 1 - 1/sqrt(d).
        let complement = complement_of(set).unwrap();
        for ket in complement.vectors() {
            let bigger = set
                .with_appended(StateLabel::External("complement-ket".into()), ket.clone())
                .unwrap();
            assert!(check_orthonormal(&bigger, 1e-10).pass);
            let ent = check_maximally_entangled(&bigger, 1e-10);
            assert!(!ent.pass);
            let expected = (1.0 - 1.0 / d.sqrt()).max(1.0 / d.sqrt());
            assert!(ent.worst_deviation >= 1.0 - 1.0 / d.sqrt() - 1e-9);
            assert!((ent.worst_deviation - expected).abs() < 1e-9);
            appends += 1;
        }
    }
    println!(
        "criterion 8 PASS: {removals} single-state removals keep (i)(ii); \
         {appends} complement-ket appends break (i) and are detected"
    );
}
