//! Subcommand output against checked-in transcripts. Set `GALMOD_BLESS=1`
//! to rewrite them.

use std::path::PathBuf;

use galmod_core::cli::run_from;

const CASES: &[(&str, &str)] = &[
    ("decompose_c2", "--group C2 decompose"),
    ("decompose_s3", "--group S3 decompose"),
    ("decompose_d4", "--group D4 decompose"),
    ("decompose_a5_csv", "--group A5 --format csv decompose"),
    ("good_primes_s3", "--group S3 --subgroup S2 good-primes"),
    ("good_primes_d4", "--group D4 --subgroup tau good-primes"),
    (
        "good_primes_a5",
        "--group A5 --subgroup S3_twisted good-primes",
    ),
    ("rank_c2_imaginary", "--group C2 --places whole rank"),
    ("rank_d4_real", "--group D4 --places trivial rank"),
    ("rank_a5", "--group A5 --places trivial rank"),
    (
        "enumerate_c2",
        "--group C2 --primes 3 --trunc 1 --bound 27 enumerate",
    ),
    (
        "enumerate_s3",
        "--group S3 --primes 5 --trunc 1 --bound 625 enumerate",
    ),
    (
        "dist_c2_imaginary",
        "--group C2 --places whole --primes 3 --trunc 1 --bound 27 dist",
    ),
    (
        "dist_c2_real_csv",
        "--group C2 --places trivial --primes 3 --trunc 1 --bound 3 --format csv dist",
    ),
    (
        "dist_d4",
        "--group D4 --places trivial --primes 3 --trunc 1 --bound 81 dist",
    ),
    (
        "moments_c2",
        "--group C2 --places whole --primes 3 --trunc 2 --bound 81 moments",
    ),
    (
        "moments_s3",
        "--group S3 --places trivial --primes 5 --trunc 1 --bound 625 moments",
    ),
    (
        "invert_c2",
        "--group C2 --places whole --primes 3 --trunc 1 --bound 81 invert",
    ),
    (
        "sample_c2",
        "--group C2 --places whole --primes 3 --trunc 2 --bound 81 --seed 7 sample",
    ),
    (
        "sample_cokernel",
        "--seed 5 --primes 3 sample --cokernel --count 12",
    ),
    (
        "class_triples_c2",
        "--group C2 class-triples --module 2:3:(1)",
    ),
    (
        "class_triples_s3",
        "--group S3 class-triples --module 3:5:(1) --s (1,2)",
    ),
    ("hecke_s3", "--group S3 --subgroup S2 --primes 5 hecke"),
    ("hecke_d4", "--group D4 --subgroup tau --primes 3 hecke"),
    (
        "hecke_a5",
        "--group A5 --subgroup S3_twisted --primes 7 hecke",
    ),
    (
        "nongalois_s3",
        "--group S3 --subgroup S2 --places trivial --primes 2 --trunc 1 --bound 4 nongalois",
    ),
    (
        "nongalois_d4",
        "--group D4 --subgroup tau --places trivial --primes 3 --trunc 1 --bound 9 nongalois",
    ),
    (
        "independence_d4",
        "--group D4 --subgroup tau_center independence --delta center",
    ),
    (
        "compare_sample",
        "--group C2 --places whole --primes 3 --trunc 2 --bound 81 compare",
    ),
    ("bad_prime", "--group C2 --primes 4 enumerate"),
    ("unknown_group", "--group Q8 decompose"),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn transcript(args: &str) -> String {
    let mut argv = vec!["galmod".to_string()];
    argv.extend(args.split_whitespace().map(str::to_string));
    let out = run_from(argv);
    format!(
        "$ galmod {args}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        out.code, out.stdout, out.stderr
    )
}

#[test]
fn subcommand_transcripts() {
    let bless = std::env::var_os("GALMOD_BLESS").is_some();
    let dir = golden_dir();
    let mut stale = Vec::new();
    for (name, args) in CASES {
        let got = transcript(args);
        let path = dir.join(format!("{name}.txt"));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_default();
        if want != got {
            eprintln!("--- {name} differs\n{got}");
            stale.push(*name);
        }
    }
    assert!(stale.is_empty(), "transcripts differ: {stale:?}");
}

#[test]
fn transcripts_are_deterministic() {
    for (_, args) in CASES.iter().filter(|(n, _)| n.starts_with("sample")) {
        assert_eq!(transcript(args), transcript(args));
    }
}

#[test]
fn csv_output_parses_back() {
    let out = run_from([
        "galmod", "--group", "C2", "--places", "whole", "--primes", "3", "--trunc", "2", "--bound",
        "81", "--seed", "3", "--format", "csv", "sample", "--count", "25",
    ]);
    assert_eq!(out.code, 0);
    let path = std::env::temp_dir().join(format!("galmod-draws-{}.csv", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let data = galmod_core::cli::dataset::ingest_dataset(&path, true).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(data.rows.len(), 25);
    assert!(data
        .rows
        .iter()
        .all(|r| r.invariants.iter().all(|&d| d == 3 || d == 9)));
}
