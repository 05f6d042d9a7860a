use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn pconn(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pconn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pconn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const K4: &str = "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";

fn solution_ids(v: &Value) -> Vec<u64> {
    v["solution"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn verify_known_solution() {
    let sol = tmp("k4.sol", "1 2 3\n");
    let out = pconn(&["verify", "--solution", sol.to_str().unwrap(), "--p", "2"], Some(K4));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verification"]["ok"], true);
}

#[test]
fn verify_rejects_non_cover() {
    let sol = tmp("bad.sol", "1,2\n");
    let out = pconn(&["verify", "-", "--solution", sol.to_str().unwrap(), "--p", "1"], Some(K4));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verification"]["vertex_cover"], false);
}

#[test]
fn malformed_input_exits_two() {
    let out = pconn(&["solve", "--problem", "pcvc", "--p", "2"], Some("p edge 2 1\ne 1 3\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = pconn(&["approx", "--p", "0"], Some(K4));
    assert_eq!(out.status.code(), Some(2));
    let out = pconn(&["solve", "--problem", "pcvc", "--algo", "approx", "--p", "1"], Some(K4));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solvers_agree_on_planted_instance() {
    let g = pconn(&["gen", "planted", "--core", "6", "--fringe", "3", "--p", "2", "--seed", "4"], None);
    assert!(g.status.success());
    let text = String::from_utf8(g.stdout).unwrap();
    assert!(text.contains("c bound 6"));
    let brute = json(&pconn(&["solve", "--problem", "pecvc", "--algo", "brute", "--p", "2"], Some(&text)));
    let fpt = json(&pconn(&["solve", "--problem", "pecvc", "--algo", "fpt", "--p", "2", "--k", "6"], Some(&text)));
    let approx = json(&pconn(&["approx", "--p", "2", "--seed", "9"], Some(&text)));
    assert_eq!(brute["feasible"], true);
    assert_eq!(brute["size"], fpt["size"]);
    assert!(brute["size"].as_u64().unwrap() <= 6);
    assert!(approx["size"].as_u64().unwrap() <= 6 * brute["size"].as_u64().unwrap());
    assert_eq!(approx["seed"], 9);
    assert_eq!(fpt["verification"]["ok"], true);

    let vc = json(&pconn(&["solve", "--problem", "pcvc", "--p", "2"], Some(&text)));
    let vb = json(&pconn(&["solve", "--problem", "pcvc", "--algo", "brute", "--p", "2"], Some(&text)));
    assert_eq!(vc["size"], vb["size"]);
}

#[test]
fn infeasible_budget_reports_no_solution() {
    let out = pconn(&["solve", "--problem", "pecvc", "--p", "2", "--k", "2"], Some(K4));
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["feasible"], false);
    assert!(v["solution"].is_null());
}

#[test]
fn kernel_solve_lift_round_trip() {
    let g = pconn(&["gen", "planted", "--core", "5", "--fringe", "4", "--p", "2", "--seed", "2"], None);
    let graph = tmp("planted.g", &String::from_utf8(g.stdout).unwrap());
    let reduced = graph.with_extension("kernel.g");
    let gp = graph.to_str().unwrap();
    let opt = json(&pconn(&["solve", gp, "--problem", "pecvc", "--algo", "brute", "--p", "2"], None))["size"]
        .as_u64()
        .unwrap();
    let k = opt.to_string();
    let args = ["--k", &k, "--p", "2", "--epsilon", "1/2", "--variant", "edge"];

    let mut kernel_args = vec!["kernel", gp, "--out", reduced.to_str().unwrap()];
    kernel_args.extend(args);
    let kr = json(&pconn(&kernel_args, None));
    assert_eq!(kr["epsilon"], "1/2");
    assert_eq!(std::fs::read_to_string(&reduced).unwrap(), kr["graph"].as_str().unwrap());

    let on_reduced = json(&pconn(
        &["solve", reduced.to_str().unwrap(), "--problem", "pecvc", "--algo", "brute", "--p", "2"],
        None,
    ));
    let words: Vec<String> = solution_ids(&on_reduced).iter().map(u64::to_string).collect();
    let sol = tmp("reduced.sol", &words.join(" "));
    let mut lift_args = vec!["lift", gp, "--solution", sol.to_str().unwrap()];
    lift_args.extend(args);
    let lifted = json(&pconn(&lift_args, None));
    assert_eq!(lifted["reduced_solution_valid"], true);
    assert_eq!(lifted["verification"]["ok"], true);
    // (1 + 1/2) OPT, in integers
    assert!(2 * lifted["size"].as_u64().unwrap() <= 3 * opt);
}

#[test]
fn ghtree_has_n_minus_one_edges() {
    let out = pconn(&["ghtree"], Some(K4));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.starts_with("t ") && l.ends_with(" 3")));
    let out = pconn(&["ghtree"], Some("p edge 3 1\ne 1 2\n"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generators_are_seeded() {
    let a = pconn(&["gen", "random", "--n", "9", "--prob", "0.4", "--seed", "11"], None);
    let b = pconn(&["gen", "random", "--n", "9", "--prob", "0.4", "--seed", "11"], None);
    let c = pconn(&["gen", "random", "--n", "9", "--prob", "0.4", "--seed", "12"], None);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let r = pconn(&["gen", "rbds", "--reds", "4", "--blues", "3", "--prob", "0.5", "--k", "2", "--seed", "1"], None);
    let text = String::from_utf8(r.stdout).unwrap();
    assert!(text.contains("k 2"));
    let h = pconn(&["gen", "from-rbds", "--p", "2"], Some(&text));
    assert!(h.status.success(), "{}", String::from_utf8_lossy(&h.stderr));
}

#[test]
fn from_rbds_small_example() {
    let rbds = "r 1\nb 1\nb 2\ne 1 1\ne 1 2\nk 2\n";
    let out = pconn(&["gen", "from-rbds", "--p", "2"], Some(rbds));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("c budget 8"));
    let sol = json(&pconn(&["solve", "--problem", "pecvc", "--algo", "brute", "--p", "2", "--k", "8"], Some(&text)));
    assert_eq!(sol["feasible"], true);
    let from_cvc = pconn(&["gen", "from-cvc", "--k", "2", "--p", "2"], Some("p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n"));
    let text = String::from_utf8(from_cvc.stdout).unwrap();
    assert!(text.contains("c budget 3") && text.contains("p edge 4 6"));
}

#[test]
fn sweep_passes() {
    for variant in ["edge", "vertex"] {
        let out = pconn(&["sweep", "--p", "2", "--nmax", "7", "--count", "40", "--variant", variant], None);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert_eq!(v["ok"], true);
        assert_eq!(v["checked"]["kernel"], 40);
    }
    let out = pconn(&["sweep", "--p", "3", "--nmax", "3"], None);
    assert_eq!(out.status.code(), Some(2));
}
