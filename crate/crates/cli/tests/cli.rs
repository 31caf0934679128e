use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellcode"))
        .args(args)
        .env_remove("CELLCODE_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn params_of_shor() {
    let v = json(&["code", "params", "fig4_shor"]);
    assert_eq!(v["parameters"], "[[9,1,3,3]]");
    assert_eq!((v["n"].as_u64(), v["k"].as_u64(), v["d_x"].as_u64(), v["d_z"].as_u64()), (Some(9), Some(1), Some(3), Some(3)));
    assert_eq!(v["relations"], true);
    assert_eq!(v["commuting"], true);
    assert_eq!(stdout(&["code", "params", "fig4_shor"]), "[[9,1,3,3]]\nrelations: ok\ncommuting: ok\n");
}

#[test]
fn compare_nine_edge_codes() {
    let v = json(&["code", "compare", "fig2_nine_edge", "fig3_nine_edge"]);
    assert_eq!(v["verdict"], "inequivalent");
    assert_eq!(v["certificate"]["rank2_counts"], serde_json::json!([2, 3]));
    let v = json(&["code", "compare", "fig4_shor", "fig4_shor"]);
    assert_eq!(v["verdict"], "inconclusive");
    assert!(v["certificate"].is_null());
}

#[test]
fn verify_paper() {
    let v = json(&["search", "verify-paper"]);
    let censuses = v["censuses"].as_array().unwrap();
    assert_eq!(censuses.len(), 2);
    for (c, e) in censuses.iter().zip([5, 7]) {
        assert_eq!(c["stats"]["edges"], e);
        assert_eq!(c["stats"]["survivors"], 0);
        assert!(c["stats"]["classes"].as_u64().unwrap() > 0);
    }
    assert!(stdout(&["search", "verify-paper"]).starts_with("survivors: e=5: 0, e=7: 0\n"));
}

#[test]
fn catalog_commands() {
    let v = json(&["catalog", "list"]);
    let names: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|n| n.as_str().unwrap()).collect();
    assert!(names.contains(&"fig4_shor") && names.contains(&"planar_two_holes"));
    let v = json(&["catalog", "show", "fig1_hemi_icosahedron"]);
    assert_eq!(v["surface"]["surface_name"], "projective plane");
    assert_eq!(v["surface"]["edges"], 15);
    assert_eq!(v["cellulation"]["vertices"], 6);
    let v = json(&["catalog", "show", "toric(3,3)"]);
    assert_eq!(v["surface"]["euler_characteristic"], 0);
}

#[test]
fn stabilizers_and_invariants() {
    let text = stdout(&["code", "stabilizers", "fig4_shor"]);
    assert_eq!(text.lines().count(), 10);
    assert_eq!(text.lines().next(), Some("XXIIIIIII"));
    let v = json(&["code", "invariants", "fig4_shor"]);
    assert_eq!(v["rank2_pairs"].as_array().unwrap().len(), 9);
    assert_eq!(v["histogram"]["4"], 27);
    let dense = json(&["code", "invariants", "fig4_shor", "--dense"]);
    assert_eq!(dense, v);
}

#[test]
fn lattice_name_and_files() {
    let v = json(&["code", "params", "planar_two_holes"]);
    assert_eq!(v["k"], 2);
    assert!(v["d_z"].as_u64().unwrap() >= 3 && v["d_x"].as_u64().unwrap() >= 7);

    let dir = std::env::temp_dir().join(format!("cellcode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("shor.json");
    let shor = json(&["catalog", "show", "fig4_shor"]);
    std::fs::write(&path, shor["cellulation"].to_string()).unwrap();
    let v = json(&["code", "params", path.to_str().unwrap()]);
    assert_eq!(v["parameters"], "[[9,1,3,3]]");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn decoding() {
    let args = ["decode", "sweep", "fig4_shor", "--p", "0,0.05", "--trials", "400", "--seed", "9"];
    let csv = stdout(&args);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "p_x,p_z,trials,x_failures,z_failures,seed");
    assert_eq!(lines[1], "0,0,400,0,0,9");
    assert_eq!(lines.len(), 3);
    // Worker count does not change the result.
    let mut threaded = vec!["--workers", "3"];
    threaded.extend_from_slice(&args);
    assert_eq!(stdout(&threaded), csv);
    let v = json(&args);
    assert!(v["rng"].as_str().unwrap().contains("ChaCha8"));

    let v = json(&["decode", "exhaustive", "fig4_shor", "--weight", "1"]);
    let w1 = &v["weights"][1];
    assert_eq!((w1["patterns"].as_u64(), w1["x_failures"].as_u64(), w1["z_failures"].as_u64()), (Some(9), Some(0), Some(0)));
}

#[test]
fn planar_commands() {
    let v = json(&["planar", "puncture", "fig4_shor", "--face", "6", "--vertex", "1"]);
    assert_eq!(v["parameters"], "[[9,1,3,3]]");
    assert_eq!(v["unchanged"], true);
    assert_eq!(v["planarity"]["is_disk"], true);
    let spec = r#"{"width":3,"height":3,"holes":[{"x":1,"y":1,"width":1,"height":1}]}"#;
    let v = json(&["planar", "holes", "--spec", spec]);
    assert_eq!(v["parameters"], "[[24,1,2,4]]");
}

#[test]
fn census_filters() {
    let v = json(&["search", "census", "--edges", "9", "--vertices", "3", "--bigons", "6", "--survivors-only"]);
    assert_eq!(v["survivors"].as_array().unwrap().len(), 1);
    let v = json(&["search", "census", "--edges", "3", "--surface", "torus", "--min-systole", "1", "--min-dual-systole", "1"]);
    assert_eq!(v["stats"]["rooted_maps"], 20);
}

#[test]
fn json_is_byte_stable() {
    for args in [
        &["--json", "code", "invariants", "fig2_nine_edge"][..],
        &["--json", "search", "census", "--edges", "5"][..],
        &["--json", "decode", "sweep", "fig4_shor", "--p", "0.1", "--trials", "300", "--seed", "4"][..],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["code", "params"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["code", "params", "--coset-budget", "x", "fig4_shor"]).status.code(), Some(2));
    let out = run(&["code", "params", "no_such_entry"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no_such_entry"));
    assert_eq!(run(&["code", "params", "cube_sphere"]).status.code(), Some(0));
    assert_eq!(run(&["search", "census", "--edges", "11"]).status.code(), Some(1));
    assert_eq!(run(&["decode", "sweep", "fig4_shor", "--p", "2"]).status.code(), Some(1));
    assert_eq!(run(&["planar", "puncture", "fig4_shor", "--face", "99", "--vertex", "0"]).status.code(), Some(1));
}
