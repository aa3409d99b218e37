use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn distrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// Parses a JSON report and checks that it re-serializes byte for byte.
fn report(o: &Output) -> Value {
    let text = stdout(o);
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    assert_eq!(v["exit_code"].as_i64().unwrap() as i32, code(o));
    v
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Self {
            dir: TempDir::new().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn generated(&self, family: &str, n: Option<usize>) -> PathBuf {
        let path = self.path(&format!(
            "{family}{}.txt",
            n.map_or(String::new(), |n| n.to_string())
        ));
        let mut args = vec!["generate", family];
        let n_text = n.map(|n| n.to_string());
        if let Some(n) = &n_text {
            args.extend(["--n", n]);
        }
        args.extend(["--out", path.to_str().unwrap()]);
        assert_eq!(code(&distrep(&args)), 0);
        path
    }

    fn colored(&self, graph: &Path) -> PathBuf {
        let out = graph.with_extension("coloring");
        let o = distrep(&[
            "color",
            graph.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        out
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let path = self.path(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_summaries() {
    let f = Files::new();
    let out = f.path("c.txt");
    let o = distrep(&["generate", "crown", "--n", "5", "--out", s(&out)]);
    assert_eq!(stdout(&o), "n 10 edges 20\n");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.ends_with('\n') && !text.ends_with("\n\n"));

    let o = distrep(&["generate", "hs2nd", "--out", s(&f.path("h.txt"))]);
    assert_eq!(stdout(&o), "n 42 edges 126\n");

    let o = distrep(&["generate", "crown", "--n", "2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad parameter"));

    let o = distrep(&["generate", "crown", "--n", "4", "--json"]);
    let v = report(&o);
    assert_eq!(v["result"]["edges"], 12);
}

#[test]
fn generate_to_stdout_is_the_edge_list() {
    let o = distrep(&["generate", "icosahedron"]);
    let text = stdout(&o);
    assert!(text.starts_with("n 12\n"));
    assert_eq!(text.lines().count(), 31);
}

#[test]
fn analyze_examples() {
    let f = Files::new();
    let v = report(&distrep(&["analyze", s(&f.generated("heawood", None))]));
    assert_eq!(v["result"]["intersection_array"], "{3,2,2;1,1,3}");
    assert_eq!(v["result"]["algebra"], "28_65");

    let v = report(&distrep(&["analyze", s(&f.generated("sylvester", None))]));
    assert_eq!(v["result"]["intersection_array"], "{5,4,2;1,1,4}");

    let p4 = f.write("p4.txt", "n 4\n0 1\n1 2\n2 3\n");
    let o = distrep(&["analyze", s(&p4)]);
    let v = report(&o);
    assert_eq!(code(&o), 0);
    assert_eq!(v["result"]["distance_regular"], false);
    assert_eq!(
        v["result"]["witness"]["triple"],
        serde_json::json!([1, 1, 2])
    );

    let split = f.write("split.txt", "n 4\n0 1\n2 3\n");
    let o = distrep(&["analyze", s(&split)]);
    assert_eq!(code(&o), 2);
    assert_eq!(report(&o)["status"], "error");

    let o = distrep(&["analyze", s(&f.write("bad.txt", "n 3\n0 x\n"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn cycle_table_examples() {
    for (array, name) in [
        ("6,5,1;1,1,6", "30_65"),
        ("110,81,12;1,18,90", "57_65"),
        ("5,2,1;1,2,5", "27_65"),
        ("{4,3,1;1,3,4}", "26_65"),
    ] {
        let o = distrep(&["cycle-table", array]);
        assert_eq!(code(&o), 0, "{array}");
        assert_eq!(report(&o)["result"]["algebra"], name, "{array}");
    }
    let v = report(&distrep(&["cycle-table", "6,5,1;1,1,6"]));
    assert_eq!(v["result"]["entries"]["p^2_22"], 21);
    assert_eq!(
        v["result"]["composition"],
        "a;a = 1' + a + b + c\na;b = a + b + c\na;c = a + b\nb;b = 1' + a\nb;c = a\nc;c = 1' + c\n"
    );

    let o = distrep(&["cycle-table", "4,1,1;1,2,1"]);
    assert_eq!(code(&o), 2);
    assert!(report(&o)["result"]["error"]
        .as_str()
        .unwrap()
        .contains("p^1_22"));
    assert_eq!(code(&distrep(&["cycle-table", "6;5"])), 2);
}

#[test]
fn verify_rep_examples() {
    let f = Files::new();
    let hs2 = f.colored(&f.generated("hs2nd", None));
    let o = distrep(&["verify-rep", s(&hs2), "30_65"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["result"]["status"], "pass");

    let o = distrep(&["verify-rep", s(&hs2), "31_65"]);
    assert_eq!(code(&o), 1);
    let v = report(&o);
    assert_eq!(v["result"]["violations"][0]["kind"], "missing-mandatory");
    assert_eq!(
        v["result"]["violations"][0]["triple"],
        serde_json::json!([1, 1, 1])
    );

    let o = distrep(&["verify-rep", s(&hs2), "aaa,ccc,abb,baa,caa,abc"]);
    assert_eq!(code(&o), 0);

    let pl = f.colored(&f.generated("petersen_line", None));
    assert_eq!(code(&distrep(&["verify-rep", s(&pl), "31₆₅"])), 0);

    let k3 = f.colored(&f.write("k3.txt", "n 3\n0 1\n0 2\n1 2\n"));
    let o = distrep(&["verify-rep", s(&k3), "30_65"]);
    assert_eq!(code(&o), 2);
    assert!(report(&o)["result"]["error"]
        .as_str()
        .unwrap()
        .contains("colors"));
    assert_eq!(code(&distrep(&["verify-rep", s(&hs2), "99_65"])), 2);
}

#[test]
fn check_dt_examples() {
    let f = Files::new();
    let v = report(&distrep(&["check-dt", s(&f.generated("crown", Some(5)))]));
    assert_eq!(v["result"]["distance_transitive"], true);
    assert_eq!(v["result"]["algebraic"], true);
    assert_eq!(v["result"]["group_order"], "240");

    let k4 = f.write("k4.txt", "n 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let v = report(&distrep(&["check-dt", s(&k4)]));
    assert_eq!(v["result"]["distance_transitive"], true);
    assert_eq!(v["result"]["diameter"], 1);

    // computed answer; the iff holds either way
    let v = report(&distrep(&[
        "check-dt",
        s(&f.generated("petersen_line", None)),
    ]));
    assert_eq!(v["result"]["distance_transitive"], v["result"]["algebraic"]);
    assert_eq!(v["result"]["orbital_count"], 4);
    assert_eq!(v["result"]["iff_holds"], true);
}

#[test]
fn size_guard_and_force() {
    let f = Files::new();
    let edges: String = (0..201)
        .map(|i| format!("{} {}\n", i.min((i + 1) % 201), i.max((i + 1) % 201)))
        .collect();
    let c201 = f.write("c201.txt", &format!("n 201\n{edges}"));
    let o = distrep(&["check-dt", s(&c201)]);
    assert_eq!(code(&o), 2);
    assert!(report(&o)["result"]["error"]
        .as_str()
        .unwrap()
        .contains("200"));
    let o = distrep(&["check-dt", s(&c201), "--force"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["result"]["distance_transitive"], true);
}

#[test]
fn automorphism_generators_format() {
    let f = Files::new();
    let o = distrep(&["automorphisms", s(&f.generated("petersen", None))]);
    let text = stdout(&o);
    assert!(text.starts_with("# order 120\nn 10\n"));
    assert!(text.lines().skip(2).all(|l| l.starts_with("g: ")));
    let o = distrep(&["automorphisms", s(&f.generated("heawood", None)), "--json"]);
    let v = report(&o);
    assert_eq!(v["result"]["order"], "336");
    assert_eq!(v["result"]["orbitals"]["count"], 4);
}

#[test]
fn reproduce_table_reports_the_petersen_line_disagreement() {
    let a = distrep(&["reproduce-table"]);
    let b = distrep(&["reproduce-table"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(code(&a), 1);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("Line graph of Petersen"));
    assert!(text.contains("Yes (expected No)"));
    assert!(text.ends_with("mismatches: 1\n"));

    let v = report(&distrep(&["reproduce-table", "--json"]));
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 8);
    assert_eq!(
        v["result"]["rows"][7]["distance_transitive"]["status"],
        "skipped"
    );
    assert_eq!(v["result"]["rows"][7]["algebra"]["status"], "match");
}

#[test]
fn reproduce_table_detects_injected_fault() {
    let o = distrep(&["reproduce-table", "--inject-fault", "--json"]);
    assert_eq!(code(&o), 1);
    let v = report(&o);
    assert!(v["result"]["mismatches"].as_u64().unwrap() > 1);
    assert_eq!(
        v["result"]["rows"][2]["algebra"]["produced"],
        "not distance-regular"
    );
}

#[test]
fn reproduce_table_with_supplied_edges() {
    let f = Files::new();
    let wrong = f.generated("icosahedron", None);
    let o = distrep(&["reproduce-table", "--moscow-soicher", s(&wrong), "--json"]);
    let v = report(&o);
    assert_eq!(v["result"]["rows"][7]["source"], "graph");
    assert_eq!(v["result"]["rows"][7]["vertices"]["status"], "mismatch");
    assert_eq!(
        code(&distrep(&[
            "reproduce-table",
            "--moscow-soicher",
            "/nonexistent"
        ])),
        2
    );
}

#[test]
fn reports_are_deterministic() {
    let f = Files::new();
    let g = f.generated("hamming33", None);
    let a = distrep(&["analyze", s(&g)]);
    let b = distrep(&["analyze", s(&g)]);
    assert_eq!(a.stdout, b.stdout);
    let v = report(&a);
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(v["result"]["algebra"], "61_65");
}
