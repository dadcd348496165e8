use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn vcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vcover")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

struct Scratch(TempDir);

impl Scratch {
    fn new() -> Self {
        Scratch(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_owned()
    }

    fn gen(&self, name: &str, args: &[&str]) -> String {
        let mut full = vec!["gen"];
        full.extend_from_slice(args);
        let o = vcover(&full);
        assert_eq!(code(&o), 0);
        self.file(name, &stdout(&o))
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn virtual_trefoil_has_no_integer_numbering() {
    let t = Scratch::new();
    let vt = t.gen("vt.gauss", &["vtrefoil"]);
    let o = vcover(&["number", &vt, "--mod", "0"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("no numbering mod 0: cycle with residual"));

    let o = vcover(&["--json", "number", &vt, "--mod", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["solved"], false);
    assert_eq!(v["defect_gcd"], 1);
}

#[test]
fn knot_cover_has_three_lines() {
    let t = Scratch::new();
    let knot = t.gen("k.gauss", &["torus2q", "5"]);
    let o = vcover(&["cover", &knot, "-m", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn iso_of_a_file_with_itself() {
    let t = Scratch::new();
    let a = t.gen("a.gauss", &["hopf"]);
    assert_eq!(code(&vcover(&["iso", &a, &a])), 0);
    let b = t.file("b.gauss", "O7+ U9+\nU7+ O9+\n");
    assert_eq!(code(&vcover(&["iso", &a, &b])), 0);
    let c = t.gen("c.gauss", &["vtrefoil"]);
    assert_eq!(code(&vcover(&["iso", &a, &c])), 1);
}

#[test]
fn covers_are_numberable_end_to_end() {
    let t = Scratch::new();
    let inputs = [
        t.gen("t3.gauss", &["torus2q", "3"]),
        t.gen("vt.gauss", &["vtrefoil"]),
        t.gen("r1.gauss", &["random", "5", "1", "7"]),
        t.gen("r2.gauss", &["random", "6", "2", "8"]),
    ];
    for (i, f) in inputs.iter().enumerate() {
        for m in ["2", "3", "5"] {
            let out = t.path(&format!("cover{i}_{m}.gauss"));
            assert_eq!(code(&vcover(&["cover", f, "-m", m, "-o", s(&out), "--trace"])), 0);
            assert!(t.path(&format!("cover{i}_{m}.gauss.trace.json")).exists());
            assert_eq!(code(&vcover(&["number", s(&out), "--mod", m])), 0, "{f} m={m}");
        }
    }
}

#[test]
fn obstruction_statuses() {
    let t = Scratch::new();
    let vt = t.gen("vt.gauss", &["vtrefoil"]);
    let o = vcover(&["obstruct", &vt, "-m", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("Obstructed"));
    let t3 = t.gen("t3.gauss", &["torus2q", "3"]);
    let o = vcover(&["obstruct", &t3, "-m", "3"]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "Inconclusive"));
    assert_eq!(code(&vcover(&["obstruct", &t3, "-m", "1"])), 2);
}

#[test]
fn cut_systems() {
    let t = Scratch::new();
    let vt = t.gen("vt.gauss", &["vtrefoil"]);
    let o = vcover(&["cutsys", &vt, "--canonical"]);
    assert_eq!(stdout(&o).trim(), "O1+ !+ O2+ U1+ !- U2+ !- !+");
    let marked = t.file("m.gauss", &stdout(&o));
    assert_eq!(code(&vcover(&["cutsys", &marked, "--check"])), 0);
    let bad = t.file("bad.gauss", "O1+ !+ U1+\n");
    assert_eq!(code(&vcover(&["cutsys", &bad, "--check"])), 1);
    assert_eq!(code(&vcover(&["cutsys", &bad])), 2);
}

#[test]
fn input_errors_exit_two() {
    let t = Scratch::new();
    let bad = t.file("bad.gauss", "O1+ U2+\n");
    let o = vcover(&["validate", &bad]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).lines().count(), 2);
    for args in [
        vec!["number", bad.as_str(), "--mod", "2"],
        vec!["number", "/nonexistent.gauss", "--mod", "2"],
        vec!["number", bad.as_str()],
        vec!["frobnicate"],
    ] {
        let o = vcover(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let garbage = t.file("g.gauss", "O1+ X2\n");
    assert_eq!(code(&vcover(&["validate", &garbage])), 2);
}

#[test]
fn moves_replay_from_their_log() {
    let t = Scratch::new();
    let k = t.gen("k.gauss", &["random", "4", "2", "3"]);
    let out = t.path("moved.gauss");
    let log = t.path("log.json");
    let o = vcover(&["move", &k, "--random", "12", "--seed", "9", "-o", s(&out), "--log", s(&log)]);
    assert_eq!(code(&o), 0);
    let spec = fs::read_to_string(&log).unwrap();
    let o = vcover(&["move", &k, "--spec", spec.trim()]);
    assert_eq!(code(&o), 0);
    let replayed: String = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    assert_eq!(replayed, fs::read_to_string(&out).unwrap());
    // the moved diagram keeps its invariants
    let a = vcover(&["--json", "invariants", &k]);
    let b = vcover(&["--json", "invariants", s(&out)]);
    let fa: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let fb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(fa["fingerprint"], fb["fingerprint"]);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let t = Scratch::new();
    let files: Vec<String> = (0..6)
        .map(|i| t.gen(&format!("r{i}.gauss"), &["random", "5", &(1 + i % 3).to_string(), &i.to_string()]))
        .collect();
    let f = files[0].as_str();
    let runs: Vec<Vec<&str>> = vec![
        vec!["validate", f],
        vec!["number", f, "--mod", "3"],
        vec!["--json", "number", f, "--mod", "0"],
        vec!["cutsys", f, "--canonical"],
        vec!["cover", f, "-m", "3", "--trace"],
        vec!["--json", "cover", f, "-m", "2"],
        vec!["obstruct", f, "-m", "2"],
        vec!["--json", "obstruct", f, "-m", "3"],
        vec!["move", f, "--random", "10", "--seed", "4"],
        vec!["gen", "random", "7", "2", "99"],
    ];
    for args in runs {
        let (a, b) = (vcover(&args), vcover(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status, b.status);
    }
    let mut inv = vec!["--json", "invariants"];
    inv.extend(files.iter().map(String::as_str));
    let one = vcover(&[inv.clone(), vec!["--jobs", "1"]].concat());
    let four = vcover(&[inv, vec!["--jobs", "4"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn canonical_output_round_trips() {
    let t = Scratch::new();
    for seed in 0..10 {
        let f = t.gen("r.gauss", &["random", "6", "2", &seed.to_string()]);
        let text = stdout(&vcover(&["cutsys", &f, "--canonical"]));
        let g = t.file("c.gauss", &text);
        assert_eq!(stdout(&vcover(&["cutsys", &g, "--canonical"])), text);
        assert_eq!(code(&vcover(&["cutsys", &g, "--check"])), 0);
    }
}
