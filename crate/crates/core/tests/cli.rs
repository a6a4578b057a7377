use std::process::Command;

use polartwist::graphcore::from_graph6;
use polartwist::grassmann::twisted_grassmann_switch;
use serde_json::Value;

fn polartwist(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_polartwist")).args(args).env_remove("POLARTWIST_CACHE_DIR").output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json)
}

#[test]
fn grassmann_switch_passes_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("g.g6");
    let edges = dir.path().join("g.edges");
    let (code, report) = polartwist(&[
        "build",
        "grassmann-twist-switch",
        "--k",
        "2",
        "--verify",
        "gm,drg,cospectral,cliques",
        "--g6",
        g6.to_str().unwrap(),
        "--edges",
        edges.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["construction"], "grassmann-twist-switch");
    assert_eq!(report["parameters"]["vertices"], 155);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 4);
    assert!(checks.iter().all(|c| c["pass"] == true));
    let drg = checks.iter().find(|c| c["name"] == "drg").unwrap();
    assert_eq!(drg["details"]["value"]["b"], serde_json::json!([42, 24]));

    let g = from_graph6(&std::fs::read(&g6).unwrap()).unwrap();
    assert_eq!(g, twisted_grassmann_switch(2, 2).unwrap().switched);
    let lines = std::fs::read_to_string(&edges).unwrap();
    assert_eq!(lines.lines().count() as u64, g.edge_count());
    assert!(lines.lines().all(|l| {
        let (u, v) = l.split_once(' ').unwrap();
        g.has_edge(u.parse().unwrap(), v.parse().unwrap())
    }));
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_polartwist"))
            .args(["build", "d55-twist", "--verify", "srg,4vc", "--mode", "sampled", "--seed", "3", "--samples", "50", "--report"])
            .arg(&path)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    let a = run("a.json");
    assert_eq!(a, run("b.json"));
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["checks"][0]["seed"], 3);
    assert_eq!(v["checks"][0]["samples"], 50);
    assert_eq!(v["checks"][1]["details"]["value"], serde_json::json!({ "alpha": 1554, "beta": 315 }));
}

#[test]
fn config_and_budget_errors_exit_3() {
    let (code, err) = polartwist(&["build", "d55", "--q", "7"]);
    assert_eq!(code, 3);
    assert_eq!(err["error"]["kind"], "SizeBudgetExceeded");
    let (code, err) = polartwist(&["build", "d55", "--mode", "sampled"]);
    assert_eq!(code, 3);
    assert_eq!(err["error"]["kind"], "InvalidConfig");
    let (code, _) = polartwist(&["build", "grassmann", "--n", "4", "--k", "2", "--verify", "d2cert"]);
    assert_eq!(code, 3);
    let (code, _) = polartwist(&["build", "grassmann-twist-swap", "--k", "2", "--n", "6"]);
    assert_eq!(code, 3);
}

#[test]
fn failed_check_exits_2() {
    // J_2(6,3) has diameter 3, so it is not strongly regular
    let (code, report) = polartwist(&["build", "grassmann", "--n", "6", "--k", "3", "--verify", "srg"]);
    assert_eq!(code, 2);
    assert_eq!(report["checks"][0]["pass"], false);
    assert!(report["checks"][0]["details"]["counterexample"].is_object());
}
