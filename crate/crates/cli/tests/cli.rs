//! End-to-end checks of the command-line surface: exit codes, file formats
//! and round-trips.

use clap::Parser;
use realcy_cli::{run, Cli};
use std::fs;
use std::path::PathBuf;
use std::process::Command as Process;

fn run_args(args: &[&str]) -> Result<u8, realcy_cli::CliError> {
    let mut full = vec!["realcy"];
    full.extend_from_slice(args);
    run(Cli::parse_from(full))
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("realcy-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn find_twist_then_validate_round_trip() {
    let out = temp_path("twist.json");
    let code = run_args(&["find-twist", "--out", out.to_str().unwrap()]).unwrap();
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["rank_untwisted"], 73);
    assert_eq!(doc["verified"], true);
    assert!(!doc["twist"].as_array().unwrap().is_empty());
    assert_eq!(doc["seed"], 0);

    let code = run_args(&["validate-twist", out.to_str().unwrap(), "--json"]).unwrap();
    assert_eq!(code, 0);
    fs::remove_file(out).unwrap();
}

#[test]
fn validate_rejects_bad_twists_and_bad_files() {
    // A wrong twist: parses fine, fails verification (exit 1).
    let bad = temp_path("bad-twist.json");
    fs::write(&bad, r#"{ "twist": ["V0", "E01:2"] }"#).unwrap();
    let code = run_args(&["validate-twist", bad.to_str().unwrap()]).unwrap();
    assert_eq!(code, 1);
    fs::remove_file(&bad).unwrap();

    // A malformed file: input error (exit 2 at the binary boundary).
    let garbled = temp_path("garbled.json");
    fs::write(&garbled, "not json").unwrap();
    assert!(run_args(&["validate-twist", garbled.to_str().unwrap()]).is_err());
    fs::remove_file(&garbled).unwrap();

    // An unknown divisor id: also an input error.
    let unknown = temp_path("unknown.json");
    fs::write(&unknown, r#"{ "twist": ["V9"] }"#).unwrap();
    assert!(run_args(&["validate-twist", unknown.to_str().unwrap()]).is_err());
    fs::remove_file(&unknown).unwrap();

    // A facet-interior id is outside the hypersurface basis.
    let outside = temp_path("outside.json");
    fs::write(&outside, r#"{ "twist": ["G0:1"] }"#).unwrap();
    assert!(run_args(&["validate-twist", outside.to_str().unwrap()]).is_err());
    fs::remove_file(&outside).unwrap();
}

#[test]
fn table_output_is_reproducible_and_reloadable() {
    let a = temp_path("table-a.json");
    let b = temp_path("table-b.json");
    assert_eq!(
        run_args(&["table", "--out", a.to_str().unwrap()]).unwrap(),
        0
    );
    assert_eq!(
        run_args(&["table", "--integer", "--out", b.to_str().unwrap()]).unwrap(),
        0
    );
    let text_a = fs::read_to_string(&a).unwrap();
    let doc_a: serde_json::Value = serde_json::from_str(&text_a).unwrap();
    let doc_b: serde_json::Value = serde_json::from_str(&fs::read_to_string(&b).unwrap()).unwrap();

    // Identical core payload, with the integer values only where asked.
    assert_eq!(doc_a["basis"], doc_b["basis"]);
    assert_eq!(doc_a["triples"], doc_b["triples"]);
    assert!(doc_a.get("integer_triples").is_none());
    assert!(!doc_b["integer_triples"].as_array().unwrap().is_empty());
    assert_eq!(doc_a["basis"].as_array().unwrap().len(), 105);

    // Byte-identical on a second run.
    let a2 = temp_path("table-a2.json");
    assert_eq!(
        run_args(&["table", "--out", a2.to_str().unwrap()]).unwrap(),
        0
    );
    assert_eq!(text_a, fs::read_to_string(&a2).unwrap());

    // Reload reproduces the in-memory table exactly.
    let geometry = realcy::build_geometry(realcy::TriangulationVariant::Default).unwrap();
    let table = realcy::build_triple_table(&geometry).unwrap();
    let basis: Vec<String> = doc_a["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(
        basis,
        table
            .basis
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    let triples: Vec<[u8; 3]> = doc_a["triples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let t = t.as_array().unwrap();
            [
                t[0].as_u64().unwrap() as u8,
                t[1].as_u64().unwrap() as u8,
                t[2].as_u64().unwrap() as u8,
            ]
        })
        .collect();
    assert_eq!(triples, table.nonzero_triples().collect::<Vec<_>>());

    for p in [a, b, a2] {
        fs::remove_file(p).unwrap();
    }
}

#[test]
fn lattice_dump_has_the_right_shape() {
    let out = temp_path("lattice.json");
    assert_eq!(
        run_args(&["lattice", "--out", out.to_str().unwrap()]).unwrap(),
        0
    );
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["points"].as_array().unwrap().len(), 125);
    assert_eq!(doc["cells"].as_array().unwrap().len(), 625);
    let first = &doc["points"][0];
    assert_eq!(first["id"], "V0");
    assert_eq!(first["ambient"], serde_json::json!([-1, -1, -1, -1]));
    assert_eq!(first["bary"], serde_json::json!([5, 0, 0, 0, 0]));
    assert_eq!(first["carrier"], serde_json::json!([0]));
    for cell in doc["cells"].as_array().unwrap() {
        assert_eq!(cell.as_array().unwrap().len(), 4);
    }
    fs::remove_file(out).unwrap();
}

#[test]
fn betti_flags_and_input_errors() {
    let out = temp_path("betti.json");
    let code = run_args(&[
        "betti",
        "--kind",
        "twisted",
        "--preset",
        "mirror-quintic",
        "--rank",
        "0",
        "--json",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["b"], serde_json::json!([1, 101, 101, 1]));
    let flags = doc["open_flags"].as_array().unwrap();
    assert_eq!(flags.len(), 1);
    assert!(flags[0].as_str().unwrap().contains("OPEN"));
    fs::remove_file(out).unwrap();

    // Precondition breach is an input error.
    assert!(run_args(&["betti", "--kind", "twisted", "--rank", "101"]).is_err());

    // Overriding a dimension drops the discrepancy flag.
    let out2 = temp_path("betti-custom.json");
    let code = run_args(&[
        "betti",
        "--kind",
        "twisted",
        "--preset",
        "mirror-quintic",
        "--h11",
        "101",
        "--rank",
        "0",
        "--json",
        "--out",
        out2.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out2).unwrap()).unwrap();
    assert_eq!(doc["open_flags"].as_array().unwrap().len(), 0);
    fs::remove_file(out2).unwrap();
}

#[test]
fn faces_svg_files_match_the_pattern_report() {
    let twist = temp_path("faces-twist.json");
    run_args(&["find-twist", "--out", twist.to_str().unwrap()]).unwrap();

    let dir = temp_path("faces-svg");
    let report_path = temp_path("faces-report.json");
    let code = run_args(&[
        "faces",
        "--twist",
        twist.to_str().unwrap(),
        "--svg",
        dir.to_str().unwrap(),
        "--out",
        report_path.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(code, 0);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    let files = report["svg_files"].as_array().unwrap();
    assert_eq!(files.len(), 10);

    // Filled-point counts in the SVGs agree with the per-face masks.
    for (entry, per_face) in files.iter().zip(report["per_face"].as_array().unwrap()) {
        let svg = fs::read_to_string(entry.as_str().unwrap()).unwrap();
        let filled = svg.matches("class=\"pt-on\"").count();
        let mask = u32::from_str_radix(per_face["mask"].as_str().unwrap(), 16).unwrap();
        assert_eq!(filled, mask.count_ones() as usize);
    }

    // Determinism: a second export is byte-identical.
    let first = fs::read_to_string(files[0].as_str().unwrap()).unwrap();
    run_args(&[
        "faces",
        "--twist",
        twist.to_str().unwrap(),
        "--svg",
        dir.to_str().unwrap(),
        "--out",
        report_path.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(
        first,
        fs::read_to_string(files[0].as_str().unwrap()).unwrap()
    );

    fs::remove_file(twist).unwrap();
    fs::remove_file(report_path).unwrap();
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn check_core_and_beta_rank_succeed() {
    assert_eq!(run_args(&["check-core"]).unwrap(), 0);
    assert_eq!(run_args(&["check-core", "--json"]).unwrap(), 0);
    assert_eq!(run_args(&["beta-rank", "--json"]).unwrap(), 0);
}

#[test]
fn verify_gross_passes_on_both_variants() {
    for variant in ["default", "alternate"] {
        let code = run_args(&["verify-gross", "--triangulation", variant, "--json"]).unwrap();
        assert_eq!(code, 0, "variant {variant}");
    }
}

#[test]
fn reproduce_passes_end_to_end() {
    let code = run_args(&["reproduce", "--seed", "7"]).unwrap();
    assert_eq!(code, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_realcy");
    let quiet = |args: &[&str]| {
        Process::new(bin)
            .args(args)
            .stdout(std::process::Stdio::null())
            .stderr(std::process::Stdio::null())
            .status()
            .unwrap()
    };
    // Missing input file: exit 2.
    assert_eq!(
        quiet(&["validate-twist", "/nonexistent/twist.json"]).code(),
        Some(2)
    );
    // Unknown flag: clap reports a usage error, exit 2.
    assert_eq!(quiet(&["table", "--bogus"]).code(), Some(2));
    // A passing verification: exit 0.
    assert_eq!(quiet(&["check-core"]).code(), Some(0));
}
