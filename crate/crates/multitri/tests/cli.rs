use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multitri")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn octagon_file() -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("multitri-cli-octagon-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"n":8,"k":2,"relevant":[[1,4],[1,5],[1,6],[2,5],[2,7],[4,7]]}"#).unwrap();
    path
}

#[test]
fn counts() {
    assert_eq!(stdout(&["count", "-n", "8", "-k", "2"]).trim(), "84");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["count", "-n", "10", "-k", "2", "--format", "json"])).unwrap();
    assert_eq!(json["hankel"], "4719");
    assert_eq!(json["product"], "4719");
    assert_eq!(stdout(&["enumerate", "-n", "7", "-k", "2"]).lines().count(), 14);
}

#[test]
fn diameters_and_polytopes() {
    assert_eq!(stdout(&["diameter", "-n", "8", "-k", "2", "--format", "csv"]), "n,k,count,diameter\n8,2,84,6\n");
    assert_eq!(stdout(&["diameter", "-n", "10", "-k", "1"]).trim(), "11");
    assert_eq!(stdout(&["fvector", "-n", "9", "-k", "2"]).trim(), "92,185,118,25");
    assert!(stdout(&["flipgraph", "-n", "5", "-k", "1", "--format", "dot"]).starts_with("graph"));
    assert_eq!(stdout(&["beam", "-n", "7", "-k", "2"]).lines().count(), 14);
}

#[test]
fn triangulation_inputs() {
    let path = octagon_file();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["greedy", "--triangulation", p]), "[2,7] -> [0,4]\n[2,5] -> [0,3]\n[4,7] -> [0,5]\n");
    assert!(stdout(&["dyck", "--triangulation", p]).contains("NENNNEEE NENNEENE"));
    std::fs::remove_file(path).ok();
}

#[test]
fn structure_commands() {
    assert!(stdout(&["rigidity", "--complete", "5", "-d", "4"]).contains("MinimallyRigid"));
    assert!(stdout(&["rigidity", "--double-banana", "-d", "3"]).contains("Flexible"));
    assert_eq!(stdout(&["surface", "-n", "10", "-k", "2"]).trim(), "genus 2 boundary 2 v 10 e 20 f 6");
    assert!(stdout(&["dyck", "-n", "8", "-k", "2"]).contains("collisions 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count", "-n", "4", "-k", "2"]).status.code(), Some(2));
    assert_eq!(run(&["greedy", "--triangulation", "/nonexistent/file.json"]).status.code(), Some(2));
    let out = run(&["enumerate", "-n", "12", "-k", "2", "--limit-nodes", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}
