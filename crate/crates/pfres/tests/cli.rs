//! End-to-end tests of the command-line interface: tables, exit codes,
//! export/verify round trips, and byte-for-byte determinism.

use std::process::Command;

fn pfres() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pfres"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = pfres().args(args).output().expect("spawn pfres");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn build_table_matches_known_example() {
    // bigraded table of the (2,6,2) complex
    let (code, stdout, _) = run(&["build", "-f", "6", "-g", "2", "--eps", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let p = &v["positions"];
    let as_pairs = |n: &str| -> Vec<(String, i64, i64, u64)> {
        p[n].as_array()
            .unwrap()
            .iter()
            .map(|s| {
                (
                    s["summand"].as_str().unwrap().to_string(),
                    s["twist"][0].as_i64().unwrap(),
                    s["twist"][1].as_i64().unwrap(),
                    s["rank"].as_u64().unwrap(),
                )
            })
            .collect()
    };
    assert_eq!(as_pairs("5"), vec![("B(6,1)".to_string(), -6, -3, 2)]);
    assert_eq!(
        as_pairs("4"),
        vec![("T(0,3)".to_string(), -4, -5, 4), ("B(5,1)".to_string(), -5, -3, 12)]
    );
    assert_eq!(
        as_pairs("2"),
        vec![
            ("T(0,2)".to_string(), -2, -4, 3),
            ("B(3,1)".to_string(), -3, -3, 40),
            ("B(5,0)".to_string(), -3, -2, 6)
        ]
    );
    assert_eq!(as_pairs("1"), vec![("B(4,0)".to_string(), -2, -2, 15)]);
}

#[test]
fn epsilon_window_violation_is_usage_error() {
    let (code, _, stderr) = run(&["build", "-f", "6", "-g", "3", "--eps", "9"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("⌈(δ-1)/2⌉"), "window constraint cited: {stderr}");
}

#[test]
fn verify_full_suite_and_subset() {
    let (code, stdout, _) = run(&["verify", "-f", "6", "-g", "3", "--eps", "1"]);
    assert_eq!(code, 0, "{stdout}");
    let (code, stdout, _) =
        run(&["verify", "-f", "5", "-g", "2", "--eps", "1", "--checks", "d2,chainmap"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.matches("pass").count(), 2, "exactly the selected checks ran: {stdout}");
    let (code, _, _) = run(&["verify", "-f", "5", "-g", "2", "--checks", "nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_catches_mutated_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cx");
    let (code, _, _) = run(&[
        "build", "-f", "4", "-g", "2", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let m_path = out.join("M.json");
    let (code, _, _) = run(&["verify", "--complex", m_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    // flip one differential entry
    let text = std::fs::read_to_string(&m_path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entry = &mut v["differentials"]["2"][0][2];
    let old = entry.as_str().unwrap().to_string();
    *entry = serde_json::Value::String(format!("{old} + T1"));
    std::fs::write(&m_path, serde_json::to_string(&v).unwrap()).unwrap();
    let (code, stdout, _) = run(&["verify", "--complex", m_path.to_str().unwrap()]);
    assert_eq!(code, 1, "tampered export must fail: {stdout}");
}

#[test]
fn hilbert_rows() {
    let (code, stdout, _) = run(&[
        "hilbert", "--g-min", "1", "--g-max", "3", "--f-min", "4", "--f-max", "9", "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let find = |g: u64, f: u64, eps: i64| {
        rows.iter()
            .find(|r| {
                r["g"].as_u64() == Some(g)
                    && r["f"].as_u64() == Some(f)
                    && r["epsilon"].as_i64() == Some(eps)
            })
            .unwrap()
    };
    let r = find(2, 6, 2);
    assert_eq!(r["h_vector"], serde_json::json!([1, 4, -2]));
    assert_eq!(r["multiplicity"], 3);
    assert_eq!(r["linear"], true);
    let r = find(3, 9, 3);
    assert_eq!(r["h_vector"], serde_json::json!([1, 6, 21, -18, 6]));
    assert_eq!(r["multiplicity"], 16);
    let r = find(1, 4, 2);
    assert!(r["status"].as_str().unwrap().contains("excluded"));
}

#[test]
fn unmixed_odd_even_and_bridge_paths() {
    let (code, stdout, _) = run(&["unmixed", "-f", "5", "-g", "2", "--eps", "1", "--format", "json"]);
    assert_eq!(code, 0, "{stdout}");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["c_generators"].as_array().unwrap().len(), 2);
    assert_eq!(v["content_equals_c"], true);
    assert_eq!(v["equality_chain"]["c_plus_minors_eq_colon"], true);
    assert_eq!(v["equality_chain"]["colon_eq_saturation"], true);
    assert!(v["equality_chain"]["grade_minors"].as_str().unwrap().contains("3"));

    let (code, stdout, _) = run(&["unmixed", "-f", "4", "-g", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["c_ideal"], "0");
    assert_eq!(v["colon_adds_nothing"], true);

    // (d,n) = (3,5): n+d even, the content ideal is empty
    let (code, stdout, _) = run(&["unmixed", "-f", "5", "-g", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["c_ideal"], "0");
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["build", "-f", "5", "-g", "2", "--eps", "1", "--format", "json"],
        vec!["hilbert", "--format", "json"],
        vec!["unmixed", "-f", "5", "-g", "2", "--eps", "1", "--format", "json"],
        vec!["verify", "-f", "4", "-g", "2", "--checks", "d2,bihom", "--format", "json"],
    ] {
        let (c1, out1, _) = run(&args);
        let (c2, out2, _) = run(&args);
        assert_eq!(c1, c2);
        assert_eq!(out1, out2, "nondeterministic output for {args:?}");
    }
}

#[test]
fn seed_file_roundtrip_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cx");
    let (code, _, _) = run(&[
        "build", "-f", "5", "-g", "2", "--eps", "1", "--rng-seed", "9", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let seed_path = out.join("seed.toml");
    assert!(seed_path.exists());
    let (code, stdout, _) = run(&[
        "build", "--seed-file", seed_path.to_str().unwrap(), "--format", "json",
    ]);
    assert_eq!(code, 0);
    let (_, direct, _) = run(&[
        "build", "-f", "5", "-g", "2", "--eps", "1", "--rng-seed", "9", "--format", "json",
    ]);
    assert_eq!(stdout, direct);
}

#[test]
fn emit_extra_complexes_and_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cx");
    let (code, _, _) = run(&[
        "build", "-f", "5", "-g", "2", "--eps", "1", "--out", out.to_str().unwrap(), "--emit",
        "l,tot-t,tot-b",
    ]);
    assert_eq!(code, 0);
    for name in ["M.json", "L.json", "TotT.json", "TotB.json", "seed.toml"] {
        assert!(out.join(name).exists(), "{name} missing");
    }
    for name in ["L.json", "TotT.json", "TotB.json"] {
        let (code, _, _) = run(&["verify", "--complex", out.join(name).to_str().unwrap()]);
        assert_eq!(code, 0, "re-verify of {name}");
    }
}

#[test]
fn hilbert_text_and_json_agree() {
    let (c1, text, _) = run(&["hilbert", "--g-min", "2", "--g-max", "3", "--f-min", "3", "--f-max", "7"]);
    let (c2, json, _) = run(&[
        "hilbert", "--g-min", "2", "--g-max", "3", "--f-min", "3", "--f-max", "7", "--format",
        "json",
    ]);
    assert_eq!((c1, c2), (0, 0));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows = v["rows"].as_array().unwrap();
    // one text line per row plus the header
    assert_eq!(text.lines().count(), rows.len() + 1);
    // every multiplicity printed in text appears in the json twin
    for r in rows {
        if let Some(e) = r["multiplicity"].as_i64() {
            let g = r["g"].as_u64().unwrap();
            let f = r["f"].as_u64().unwrap();
            let eps = r["epsilon"].as_i64().unwrap();
            let line = text
                .lines()
                .find(|l| {
                    let mut it = l.split_whitespace();
                    it.next() == Some(&g.to_string())
                        && it.next() == Some(&f.to_string())
                        && it.next() == Some(&eps.to_string())
                })
                .unwrap_or_else(|| panic!("no text row for ({g},{f},{eps})"));
            assert!(line.contains(&e.to_string()), "row ({g},{f},{eps}) missing e={e}");
        }
    }
}

#[test]
fn rational_seed_file_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let seed_path = dir.path().join("seed.toml");
    std::fs::write(
        &seed_path,
        r#"f = 4
g = 2
epsilon = 1
field = "rational"

[[alt]]
upper = ["1", "0", "2", "3", "1/2", "1"]

[[alt]]
upper = ["0", "1", "1", "2", "0", "3"]
"#,
    )
    .unwrap();
    let (code, stdout, stderr) = run(&[
        "verify", "--seed-file", seed_path.to_str().unwrap(), "--checks",
        "d2,bihom,chainmap,triangular,acyclicity",
    ]);
    assert_eq!(code, 0, "rational seed verify failed: {stdout} {stderr}");
    assert!(stdout.contains("skipped"), "acyclicity should be skipped over ℚ: {stdout}");
}
