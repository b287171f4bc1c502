use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn permsort(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permsort"))
        .args(args)
        .env_remove("PERMSORT_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Files(TempDir);

impl Files {
    fn new() -> Files {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }
}

const EQ4: &str = "n 4\n3 4 2\n1 3 4\n2 4 7\n1 4 12\n1 2 15\n2 3 23\n";

const SPARSE: &str = "# five labels, three cheap pairs\nn 5\n2 4 1\n2 5 1\n3 5 1\n\
1 2 100\n1 3 100\n1 4 100\n1 5 100\n2 3 100\n3 4 100\n4 5 100\n";

fn ring10() -> String {
    let mut s = String::from("n 10\n");
    for i in 1..=10 {
        s.push_str(&format!("{} {} 1\n", i, i % 10 + 1));
    }
    s
}

fn mod5() -> String {
    let mut s = String::from("n 5\n");
    for a in 1..=5 {
        for b in a + 1..=5 {
            let v = if (b - a) % 5 == 1 || (b - a) % 5 == 4 { 3 } else { 1 };
            s.push_str(&format!("{a} {b} {v}\n"));
        }
    }
    s
}

fn line<'a>(out: &'a str, prefix: &str) -> &'a str {
    out.lines()
        .find(|l| l.starts_with(prefix))
        .unwrap_or_else(|| panic!("no {prefix:?} line in:\n{out}"))
}

#[test]
fn optimize_reports_lowered_pairs() {
    let f = Files::new();
    let costs = f.put("eq4.txt", EQ4);
    for method in ["both", "alg1", "bellman-ford"] {
        let o = permsort(&["optimize", &costs, "--method", method]);
        assert!(o.status.success(), "{}", stderr(&o));
        let out = stdout(&o);
        assert!(out.contains("\n1 4 8\n") && out.contains("\n2 3 11\n"), "{out}");
        assert!(out.contains("2 entries changed"));
    }
    let dest = f.0.path().join("opt.txt");
    let o = permsort(&["optimize", &costs, "-o", dest.to_str().unwrap()]);
    assert!(o.status.success());
    let written = fs::read_to_string(&dest).unwrap();
    assert!(written.starts_with("n 4\n") && written.contains("1 4 8"));
}

#[test]
fn optimize_metric_input_is_unchanged() {
    let f = Files::new();
    let costs = f.put("path.txt", "path\n3 1 2 4\n1 2 3\n");
    let o = permsort(&["optimize", &costs]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 entries changed"));
}

#[test]
fn parse_errors_name_the_line() {
    let f = Files::new();
    let costs = f.put("bad.txt", "n 3\n1 2 1\n# comment\n1 3 x\n");
    let o = permsort(&["optimize", &costs]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let o = permsort(&["optimize", "/nonexistent/costs.txt"]);
    assert_eq!(o.status.code(), Some(1));
    let o = permsort(&["decompose"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn decompose_ring_example() {
    let f = Files::new();
    let costs = f.put("ring.txt", &ring10());
    let perm = f.put("perm.txt", "(1 7 3 9 5)(2 8 4 10 6)\n");
    let cost = |extra: &[&str]| {
        let mut args = vec!["decompose", costs.as_str(), perm.as_str()];
        args.extend_from_slice(extra);
        let o = permsort(&args);
        assert!(o.status.success(), "{}", stderr(&o));
        let out = stdout(&o);
        assert!(out.contains("applied right-to-left"));
        line(&out, "cost: ").to_string()
    };
    assert_eq!(cost(&[]), "cost: 40");
    assert_eq!(cost(&["--method", "std"]), "cost: 56");
    assert_eq!(cost(&["--method", "merge", "--join", "1,2"]), "cost: 38");
    assert_eq!(cost(&["--method", "merge"]), "cost: 38");
    assert_eq!(cost(&["--method", "mld", "--expand"]), "cost: 40");
}

#[test]
fn decompose_expands_into_raw_moves() {
    let f = Files::new();
    let costs = f.put("sparse.txt", SPARSE);
    let o = permsort(&["decompose", &costs, "-p", "(1 2 3 4 5)", "--method", "mld", "--expand"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(line(&out, "cost: "), "cost: 105");
    assert_eq!(line(&out, "length: "), "length: 6");
    assert!(out.contains("(1 2)(2 4)(2 5)(2 4)(3 5)(2 5)"), "{out}");
    assert_eq!(line(&out, "lower bound: "), "lower bound: 103.5");
}

#[test]
fn decompose_identity() {
    let f = Files::new();
    let costs = f.put("eq4.txt", EQ4);
    let o = permsort(&["decompose", &costs, "-p", "1 2 3 4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(line(&out, "cost: "), "cost: 0");
    assert_eq!(line(&out, "length: "), "length: 0");
}

#[test]
fn decompose_infeasible_and_contract_exits() {
    let f = Files::new();
    let costs = f.put("split.txt", "n 4\n1 2 1\n3 4 1\n");
    let o = permsort(&["decompose", &costs, "-p", "(1 3)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("(1 3)"), "{}", stderr(&o));

    let o = permsort(&["decompose", &costs, "-p", "(1 2)", "--method", "metric-exact"]);
    assert_eq!(o.status.code(), Some(2));

    let o = permsort(&["decompose", &costs, "-p", "(1 2)(3 4)", "--method", "merge", "--join", "1,2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn decompose_metric_exact() {
    let f = Files::new();
    let costs = f.put("path.txt", "path\n2 4 1 3 5\n1 3 2 2\n");
    let o = permsort(&["decompose", &costs, "-p", "(1 5 2)(3 4)", "--method", "metric-exact"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    // half of the summed path distances: (1 5 2) → 4+8+4, (3 4) → 5+5
    assert_eq!(line(&out, "cost: "), "cost: 13");
    assert_eq!(line(&out, "lower bound: "), "lower bound: 13");
}

#[test]
fn bench_is_deterministic() {
    let f = Files::new();
    let a = f.0.path().join("a.csv");
    let b = f.0.path().join("b.csv");
    for dest in [&a, &b] {
        let o = permsort(&["bench", "--kmin", "3", "--kmax", "6", "--trials", "50", "--seed", "9", "-o", dest.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,trials,mean_raw,mean_opt"));
    for row in lines {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 4);
        assert_eq!(cols[2].split('.').nth(1).map(str::len), Some(6));
        let raw: f64 = cols[2].parse().unwrap();
        let opt: f64 = cols[3].parse().unwrap();
        assert!(opt <= raw);
    }
    let o = permsort(&["bench", "--kmin", "2", "--kmax", "4", "--trials", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_reports_the_chain() {
    let f = Files::new();
    let costs = f.put("mod5.txt", &mod5());
    let o = permsort(&["oracle", &costs, "-p", "(1 2 3 4 5)"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("M=6 L=8 S=12 chain OK"), "{}", stdout(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_permsort"))
        .args(["oracle", &costs, "-p", "(1 2 3 4 5)"])
        .env("PERMSORT_LIMIT", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn oracle_refuses_large_instances() {
    let f = Files::new();
    let costs = f.put("ring.txt", &ring10());
    let o = permsort(&["oracle", &costs, "-p", "(1 7 3 9 5)(2 8 4 10 6)"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("limit 7"), "{}", stderr(&o));
}
