use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn tcaco(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcaco")).args(args).env_remove("TCACO_OUT").output().unwrap()
}

fn write_config(dir: &Path, body: &str) -> String {
    let p = dir.join("cfg.json");
    fs::write(&p, body).unwrap();
    p.display().to_string()
}

fn listing(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    v.sort();
    v
}

const SMALL: &str = r#"{"node_count": 20, "max_cycles": 15, "packets_per_round": 5}"#;

#[test]
fn sweep_writes_one_csv_per_run_and_a_summary() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let out = tmp.path().join("out");
    let o = out.to_str().unwrap();
    let run = tcaco(&["--config", &cfg, "--protocol", "tc_aco,naive_minhop", "--replicates", "3", "--seed", "7", "--out", o]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let files = listing(&out);
    assert_eq!(files.len(), 7, "{files:?}");
    for p in ["tc_aco", "naive_minhop"] {
        for k in 0..3 {
            assert!(files.contains(&format!("{p}_r{k}_seed{}.csv", 7 + k)), "{files:?}");
        }
    }
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["base_seed"], 7);
    assert_eq!(summary["protocols"]["tc_aco"]["replicates"]["2"]["seed"], 9);
    let csv = fs::read_to_string(out.join("tc_aco_r0_seed7.csv")).unwrap();
    assert!(csv.starts_with("cycle,generated,delivered,"));
    assert_eq!(csv.lines().count(), 16);

    // same invocation, same bytes
    let again = tmp.path().join("again");
    let a = again.to_str().unwrap();
    assert!(tcaco(&["--config", &cfg, "--protocol", "tc_aco,naive_minhop", "--replicates", "3", "--seed", "7", "--out", a])
        .status
        .success());
    for f in &files {
        assert_eq!(fs::read(out.join(f)).unwrap(), fs::read(again.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn trust_and_route_dumps_on_request() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let out = tmp.path().join("out");
    let run = tcaco(&["--config", &cfg, "--protocol", "tc_aco", "--emit", "trust,routes", "--out", out.to_str().unwrap()]);
    assert!(run.status.success());
    let files = listing(&out);
    assert_eq!(files, vec!["tc_aco_r0_seed1_routes.txt", "tc_aco_r0_seed1_trust.csv"]);
    let trust = fs::read_to_string(out.join("tc_aco_r0_seed1_trust.csv")).unwrap();
    assert!(trust.starts_with("i,j,ne,ptr,pl,T_ij,classification\n"));
    assert!(trust.lines().skip(1).all(|l| l.ends_with(",trustworthy") || l.ends_with(",untrusted")));
    let routes = fs::read_to_string(out.join("tc_aco_r0_seed1_routes.txt")).unwrap();
    assert!(routes.lines().any(|l| l.contains(" delivered ") && l.ends_with("-bs")));
}

#[test]
fn malformed_config_exits_1_and_names_the_key() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), r#"{"rho": "high"}"#);
    let run = tcaco(&["--config", &cfg, "--out", tmp.path().join("o").to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&run.stderr).contains("rho"));
    assert!(!tmp.path().join("o").exists());
}

#[test]
fn invalid_values_exit_1() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), r#"{"rho": 2.0}"#);
    assert_eq!(tcaco(&["--config", &cfg]).status.code(), Some(1));
    assert_eq!(tcaco(&["--protocol", "bogus"]).status.code(), Some(1));
    assert_eq!(tcaco(&["--replicates", "0"]).status.code(), Some(1));
    assert_eq!(tcaco(&["--emit", "nothing"]).status.code(), Some(1));
    assert_eq!(tcaco(&["--config", tmp.path().join("missing.json").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn unreachable_base_station_exits_2() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), r#"{"radio_range": 1.0, "max_cycles": 5}"#);
    let out = tmp.path().join("o");
    let run = tcaco(&["--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(!out.join("summary.json").exists());
}

#[test]
fn unwritable_output_exits_3_without_summary() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let run = tcaco(&["--config", &cfg, "--protocol", "naive_minhop", "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(3));
    assert_eq!(listing(tmp.path()), vec!["cfg.json", "file"]);
}

#[test]
fn output_dir_from_environment() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let out = tmp.path().join("env_out");
    let run = Command::new(env!("CARGO_BIN_EXE_tcaco"))
        .args(["--config", &cfg, "--protocol", "dist_aco", "--max-cycles", "3"])
        .env("TCACO_OUT", &out)
        .output()
        .unwrap();
    assert!(run.status.success());
    assert_eq!(listing(&out), vec!["dist_aco_r0_seed1.csv", "summary.json"]);
    assert_eq!(fs::read_to_string(out.join("dist_aco_r0_seed1.csv")).unwrap().lines().count(), 4);
}

#[test]
fn help_exits_0() {
    let run = tcaco(&["--help"]);
    assert_eq!(run.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&run.stdout).contains("--protocol"));
}
