use std::process::{Command, Output};

fn midprime(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_midprime")).args(args).output().expect("spawn midprime")
}

#[test]
fn constants_pass_with_exit_zero() {
    let out = midprime(&["constants"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], "midprime-report");
    assert_eq!(doc["schema_version"], 1);
    let rows = doc["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["a"]["tag"], "predicted");
    let a = rows[0]["a"]["value"].as_f64().unwrap();
    assert!((a - 0.493286).abs() < 5e-7);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(midprime(&["constants", "--bogus"]).status.code(), Some(2));
    assert_eq!(midprime(&["empirical", "--x", "2e9"]).status.code(), Some(2));
    assert_eq!(midprime(&["constants", "--budget-digits", "40"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "colour = 1\n").unwrap();
    assert_eq!(midprime(&["constants", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "mode = \"Omega\"\nx_list = [1000, 2000]\nformat = \"json\"\n").unwrap();
    let out = midprime(&["empirical", "--config", cfg.to_str().unwrap(), "--x-list", "3000"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["x"]["value"], 3000);
    assert_eq!(rows[0]["mode"], "Omega");
}

#[test]
fn empirical_ladder_shape_and_ratio_column() {
    let out = midprime(&["empirical", "--x-list", "1e4,1e5", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        let s = r["s_exact"]["value"].as_f64().unwrap();
        let j0 = r["s_pred_j0"]["value"].as_f64().unwrap();
        let ratio = r["ratio_j0"]["value"].as_f64().unwrap();
        assert!((ratio - s / j0).abs() <= 4.0 * f64::EPSILON * ratio);
        assert_eq!(r["s_exact"]["tag"], "exact");
    }
}

#[test]
fn empirical_matches_decomposition_oracle() {
    let out = midprime(&["empirical", "--x", "1e4", "--mode", "Omega", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let s = doc["tables"][0]["rows"][0]["s_exact"]["value"].as_f64().unwrap();
    let oracle = midprime::sieve::sum_log_middle_via_decomposition(10_000, midprime::NuMode::Multiplicity).unwrap();
    assert_eq!(s, oracle.total());
}

#[test]
fn csv_carries_header_block() {
    let out = midprime(&["lambda", "--p-list", "1009", "--mode", "omega"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# schema: midprime-report/1\n# command: lambda\n# config-sha256: "));
    assert!(text.contains("# provenance: p=exact,k=exact,mode=label,exact=exact"));
}

#[test]
fn prime_cache_directory_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_midprime"))
        .args(["empirical", "--x", "1e6", "--mode", "omega"])
        .env("MIDPRIME_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("primes_le_1001.u32le").exists());
}
