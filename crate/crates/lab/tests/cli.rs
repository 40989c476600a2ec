use std::io::Write;
use std::process::{Command, Output};

const P3: &str = "elements: a b c; order: a<c b<c";

fn convlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convlab"))
        .args(args)
        .env_remove("CONVLAB_CAP_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn poset_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn paper_example_matches_the_recorded_output() {
    let o = convlab(&["paper-example"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("M(P) = {{a}, {b}, {c}, {a,b}}"));
    assert!(text.contains("≪_M = ≤: yes"));
    assert!(text.contains("M-continuous: yes"));
    assert!(text.contains("α(M)-continuous: no"));
}

#[test]
fn paper_example_json() {
    let o = convlab(&["--json", "paper-example"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["body"]["matches_recorded"], true);
    assert_eq!(v["body"]["m_continuous"]["holds"], true);
    assert_eq!(v["body"]["alpha_m_continuous"]["holds"], false);
}

#[test]
fn analyze_reads_a_file() {
    let f = poset_file("# the example\nelements: a b c\norder: a<c b<c\n");
    let o = convlab(&["analyze", f.path().to_str().unwrap(), "--selection", "ACh"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("M-continuous: yes"));
    assert!(text.contains("alphaM-continuous: no"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn analyze_json_with_a_pair() {
    let o = convlab(&["--json", "analyze", P3, "-s", "Dir", "--mn", "Filt"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["header"]["seed"], 0x5eed);
    assert_eq!(v["body"]["way_below_m_is_order"], true);
    assert!(v["body"]["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
    assert_eq!(v["body"]["mn"]["pair"], "(Dir,Filt)");
}

#[test]
fn topology_of_a_pair_is_discrete() {
    let o = convlab(&["topology", P3, "--mn", "Filt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("discrete: yes"));
    let o = convlab(&["topology", P3, "--dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn converge_decides_limits() {
    let net = r#"{"index_rel":[[0,1]],"values":["a","c"]}"#;
    let o = convlab(&["--json", "converge", P3, net, "--limit", "c"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["body"]["limits"][0]["converges"], true);

    let pair = convlab(&["converge", P3, net, "--mn", "Filt"]);
    let text = stdout(&pair);
    assert!(text.contains("c: converges yes"));
    assert!(text.contains("a: converges no"));
}

#[test]
fn malformed_net_is_a_usage_error() {
    let f = poset_file(r#"{"index_rel":[[0,1]"#);
    let o = convlab(&["converge", P3, f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let out_of_range = convlab(&["converge", P3, r#"{"index_rel":[[0,5]],"values":["a","c"]}"#]);
    assert_eq!(out_of_range.status.code(), Some(2));
    let bad_value = convlab(&["converge", P3, r#"{"index_rel":[],"values":["z"]}"#]);
    assert_eq!(bad_value.status.code(), Some(2));
}

#[test]
fn malformed_poset_reports_the_line() {
    let f = poset_file("elements: a b\n\norder: a<<b\n");
    let o = convlab(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let cyclic = convlab(&["analyze", "elements: a b; order: a<b b<a"]);
    assert_eq!(cyclic.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(convlab(&["bogus"]).status.code(), Some(2));
    assert_eq!(convlab(&["analyze", P3, "-s", "Nope"]).status.code(), Some(2));
    assert_eq!(convlab(&["analyze", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(convlab(&["mine", "--n", "2", "--properties", "nope"]).status.code(), Some(2));
    assert_eq!(convlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn enumerate_lists_every_labelled_poset() {
    let o = convlab(&["enumerate", "--n", "3"]);
    assert_eq!(stdout(&o).lines().count(), 19);
    let o = convlab(&["enumerate", "--n", "4", "--unlabeled"]);
    assert_eq!(stdout(&o).lines().count(), 16);
}

#[test]
fn enumeration_cap_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_convlab"))
        .args(["enumerate", "--n", "3"])
        .env("CONVLAB_CAP_N", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_convlab"))
        .args(["enumerate", "--n", "7", "--unlabeled"])
        .env("CONVLAB_CAP_N", "nonsense")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mine_reports_the_antichain_counterexample() {
    let o = convlab(&["--json", "mine", "--n", "3", "--selections", "ACh,Dir"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["body"]["audit_mismatches"], 0);
    let archive = v["body"]["archive"].as_array().unwrap();
    assert!(archive.iter().any(|w| w["selection"] == "ACh"));
    assert!(archive.iter().all(|w| w["selection"] != "Dir"));

    let text = stdout(&convlab(&["mine", "--n", "3", "--selections", "ACh"]));
    assert!(text.contains("elements: 0 1 2; order: 0<2 1<2"));
}

#[test]
fn kelley_holds_on_the_example() {
    let o = convlab(&["kelley", P3, "-s", "ACh", "--mn", "Filt", "--nets", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[ok]"));
}

#[test]
fn dot_draws_the_hasse_diagram() {
    let text = stdout(&convlab(&["dot", P3]));
    assert!(text.contains("\"a\" -> \"c\""));
    assert!(!text.contains("\"a\" -> \"b\""));
}

#[test]
fn stdin_is_accepted() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_convlab"))
        .args(["dot", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(P3.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("digraph"));
}

#[test]
fn mining_is_reproducible() {
    let args = ["--json", "mine", "--n", "4", "--selections", "ACh,Ch", "--audit-rate", "0.5", "--seed", "7"];
    let first = convlab(&args);
    let second = convlab(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["header"]["seed"], 7);
}
