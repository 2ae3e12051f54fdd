use ringlab_cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ringlab").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn classify_modint4_csv() {
    let (code, out, _) = run(&["classify", "--ring", "catalog:modint:4", "--format", "csv"]);
    assert_eq!(code, 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ringlab_cli::CLASSIFY_COLUMNS);
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r[6] == "false"));
    // Z/4: (a, b) is unimodular iff a or b is odd, and free exactly then
    for r in &rows {
        let a: u32 = r[0].parse().unwrap();
        let b: u32 = r[1].parse().unwrap();
        let odd = a % 2 == 1 || b % 2 == 1;
        assert_eq!(r[2], odd.to_string(), "{r:?}");
        assert_eq!(r[4], odd.to_string(), "{r:?}");
        assert_eq!(r[5].is_empty(), odd, "{r:?}");
    }
}

#[test]
fn classify_example31_json_summary() {
    let (code, out, _) = run(&["classify", "--ring", "catalog:example31:2", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["order"], 16);
    assert_eq!(doc["summary"]["outliers"], 30);
    assert_eq!(doc["summary"]["free_outliers"], 24);
    assert_eq!(doc["summary"]["free_outlier_submodules"], 6);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 256);
}

#[test]
fn ternion_free_orbits() {
    let (code, out, _) = run(&["orbits", "--ring", "catalog:ternions:2", "--free-only", "--format", "csv"]);
    assert_eq!(code, 0);
    let (_, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 2);
    let (code, bfs, _) =
        run(&["orbits", "--ring", "catalog:ternions:2", "--free-only", "--mode", "bfs", "--format", "csv"]);
    assert_eq!(code, 0);
    let (_, bfs_rows) = csv_rows(&bfs);
    let sizes = |rows: &[Vec<String>]| rows.iter().map(|r| r[3].clone()).collect::<Vec<_>>();
    assert_eq!(sizes(&bfs_rows), sizes(&rows));
}

#[test]
fn orbit_json_lists_members() {
    let (code, out, _) = run(&["orbits", "--ring", "catalog:modint:4", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let orbits = doc["orbits"].as_array().unwrap();
    let total: u64 = orbits.iter().map(|o| o["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 16);
    for o in orbits {
        assert_eq!(o["members"].as_array().unwrap().len() as u64, o["size"].as_u64().unwrap());
    }
}

#[test]
fn ideals_of_example31() {
    let (code, out, _) = run(&["ideals", "--ring", "catalog:example31:2", "--format", "csv"]);
    assert_eq!(code, 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ringlab_cli::IDEAL_COLUMNS);
    let non_principal: Vec<&str> = rows.iter().filter(|r| r[2] == "false").map(|r| r[1].as_str()).collect();
    assert_eq!(non_principal, ["4", "8"]);
    assert!(rows.iter().all(|r| (r[2] == "true") != r[3].is_empty()));
}

#[test]
fn catalog_build_round_trips() {
    let (code, out, _) = run(&["catalog", "--build", "char_p2", "--p", "3"]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("ringlab-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("char_p2.json");
    std::fs::write(&path, &out).unwrap();
    let (code, from_file, _) = run(&["classify", "--ring", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0);
    let (_, direct, _) = run(&["classify", "--ring", "catalog:char_p2:3", "--format", "csv"]);
    let outliers = |s: &str| csv_rows(s).1.iter().filter(|r| r[6] == "true").count();
    assert_eq!(csv_rows(&from_file).1.len(), 81 * 81);
    assert_eq!(outliers(&from_file), outliers(&direct));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_listing() {
    let (code, out, _) = run(&["catalog", "--format", "csv"]);
    assert_eq!(code, 0);
    let (_, rows) = csv_rows(&out);
    assert_eq!(rows.len(), ringlab::catalog::CATALOG.len());
}

#[test]
fn verify_ex31_passes() {
    let (code, out, _) = run(&["verify", "--claims", "EX31", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["passed"], 3);
    assert_eq!(doc["failed"], 0);
    let outliers = doc["results"].as_array().unwrap().iter().find(|r| r["claim_id"] == "EX31-OUTLIERS").unwrap();
    assert_eq!(outliers["computed"], "outliers 30, free 24, free submodules 6, torsion 6");
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--claims", "EX31,TERNION,CHARP2,LOCAL", "--format", "json"];
    let hash = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap()["content_hash"].clone();
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(hash(&a), hash(&b));
}

#[test]
fn exhausted_budget_skips() {
    let (code, out, _) = run(&["verify", "--claims", "T3-GF3", "--budget-seconds", "0", "--format", "csv"]);
    assert_eq!(code, 1);
    let (_, rows) = csv_rows(&out);
    assert_eq!(rows[0][4], "skipped");
    let (code, _, _) = run(&["verify", "--claims", "T3-GF3", "--budget-seconds", "0", "--allow-skip"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["classify", "--ring", "catalog:nosuch:2"]).0, 2);
    assert_eq!(run(&["classify", "--ring", "catalog:modint"]).0, 2);
    assert_eq!(run(&["classify", "--ring", "/nonexistent/ring.json"]).0, 2);
    assert_eq!(run(&["verify", "--claims", "NOPE"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["orbits", "--ring", "catalog:modint:4", "--kind", "submodules"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn binary_runs() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(["classify", "--ring", "catalog:gf:3", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 10);
}
