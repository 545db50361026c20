use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn thicket(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thicket"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn status(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn line_doc(bars: &[&str]) -> String {
    let body: String = bars.iter().map(|b| format!("bar {b}\n")).collect();
    format!("thicket/1\nfield 2\nspace line\nbarcode\n{body}end\n")
}

const ABS: &str = "thicket/1\nfield 2\nspace line\nmap\nleft affine\nright affine\npoint -1 1\npoint 0 0\npoint 1 1\nend\n";

#[test]
fn thicken_closed_interval() {
    let d = Dir::new();
    let f = d.file("f", &line_doc(&["[0,2] 0"]));
    let out = d.path("out");
    stdout(&thicket(&["thicken", "--a", "1", s(&f), s(&out)]));
    assert_eq!(std::fs::read_to_string(out).unwrap(), line_doc(&["[-1,3] 0"]));
    let shrunk = stdout(&thicket(&["thicken", "--a", "-1", s(&f)]));
    assert_eq!(shrunk, line_doc(&["{1} 0"]).replace("{1}", "[1,1]"));
}

#[test]
fn distance_row_for_skyscraper() {
    let d = Dir::new();
    let f = d.file("f", &line_doc(&["[0,2] 0"]));
    let g = d.file("g", &line_doc(&["{1} 0"]));
    let csv = stdout(&thicket(&["distance", s(&f), s(&g)]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("inputs,lower,upper,exact,verdict,micros"));
    let row: Vec<&str> = lines.next().unwrap().rsplitn(6, ',').collect();
    assert_eq!(row[..5], ["0", "pass", "true", "1", "1"]);
}

#[test]
fn fourier_sato_round_trips_documents() {
    let d = Dir::new();
    let docs = [
        "thicket/1\nfield 2\nspace circle 4\nsheaf\nspiral [0,5) 0\nspiral (1,2) 1\nend\n",
        "thicket/1\nfield 3\nspace circle 4\nsheaf\nspiral [1/2,1/2] -1\nband 0 2 0 1 1 1\nend\n",
        "thicket/1\nfield 2\nspace circle 4\nsheaf\nend\n",
    ];
    for (i, text) in docs.iter().enumerate() {
        let f = d.file(&format!("c{i}"), text);
        let once = d.path(&format!("c{i}.fs"));
        stdout(&thicket(&["fs", s(&f), s(&once)]));
        let back = stdout(&thicket(&["fs", "--inverse", s(&once)]));
        assert_eq!(back, *text);
    }
}

#[test]
fn dual_and_sections() {
    let d = Dir::new();
    let f = d.file("f", &line_doc(&["[0,1] 0", "(2,3) 0", "[4,inf) 0"]));
    let dual = stdout(&thicket(&["dual", s(&f)]));
    assert!(dual.contains("bar (0,1) 0") && dual.contains("bar [2,3] 0") && dual.contains("bar (4,inf) 0"), "{dual}");
    assert_eq!(stdout(&thicket(&["rgamma", s(&f)])).trim(), "{0: 2, 1: 1}");
    assert_eq!(stdout(&thicket(&["rgamma", "--compact", s(&f)])).trim(), "{0: 1, 1: 1}");
}

#[test]
fn pushforward_of_the_line_under_absolute_value() {
    let d = Dir::new();
    let m = d.file("m", ABS);
    let f = d.file("f", &line_doc(&["(-inf,inf) 0"]));
    let out = stdout(&thicket(&["push", "--map", s(&m), s(&f)]));
    assert_eq!(out, line_doc(&["[0,inf) 0", "(0,inf) 0"]));
}

#[test]
fn stability_and_lipschitz_reports() {
    let d = Dir::new();
    let dom = "domain [-1,1]\n";
    let f = d.file("f", &ABS.replace("right affine\n", &format!("right affine\n{dom}")));
    let g = d.file(
        "g",
        &ABS.replace("right affine\n", &format!("right affine\n{dom}"))
            .replace("point -1 1", "point -1 9/8")
            .replace("point 0 0", "point 0 1/8")
            .replace("point 1 1", "point 1 9/8"),
    );
    let x = d.file("x", &line_doc(&["[-1,1] 0"]));
    let report = stdout(&thicket(&["stability", "--f", s(&f), "--g", s(&g), s(&x)]));
    assert!(report.contains("verdict pass") && report.contains("bound sup_distance 1/8"), "{report}");

    let half = d.file("half", "thicket/1\nfield 2\nspace line\nmap\nleft affine\nright affine\npoint 0 0\npoint 2 1\nend\n");
    let (x1, x2) = (d.file("x1", &line_doc(&["[0,2] 0"])), d.file("x2", &line_doc(&["{1} 0"])));
    let cert = d.path("cert");
    stdout(&thicket(&["interleave", "--a", "1", s(&x1), s(&x2), s(&cert)]));
    let r = stdout(&thicket(&["lipschitz", "--map", s(&half), "--a", "1", "--certificate", s(&cert), s(&x1), s(&x2)]));
    assert!(r.contains("verdict pass") && r.contains("bound delta*a 1/2") && r.contains("certificate 1/2"), "{r}");
    // The reports are documents in their own right.
    let again = d.file("again", &r);
    assert_eq!(status(&thicket(&["lipschitz", "--map", s(&half), "--a", "1", "--certificate", s(&again), s(&x1), s(&x2)])), 1);
}

#[test]
fn interleave_refuses_below_the_distance() {
    let d = Dir::new();
    let (x1, x2) = (d.file("x1", &line_doc(&["[0,2] 0"])), d.file("x2", &line_doc(&["{1} 0"])));
    let r = stdout(&thicket(&["interleave", "--a", "1/2", s(&x1), s(&x2)]));
    assert!(r.contains("verdict fail") && !r.contains("\ncertificate "), "{r}");
}

#[test]
fn circle_commands() {
    let d = Dir::new();
    let f = d.file("f", "thicket/1\nfield 2\nspace circle 4\nsheaf\nspiral [0,1] 0\nend\n");
    let g = d.file("g", "thicket/1\nfield 2\nspace circle 4\nsheaf\nspiral {1/2} 0\nend\n");
    let thick = stdout(&thicket(&["circle-thicken", "--a", "1/2", s(&f)]));
    assert!(thick.contains("spiral [-1/2,3/2] 0") || thick.contains("spiral [7/2,11/2] 0"), "{thick}");
    let csv = stdout(&thicket(&["circle-distance", s(&f), s(&g)]));
    assert!(csv.lines().nth(1).unwrap().ends_with(",1/2,1/2,true,pass,0"), "{csv}");
}

#[test]
fn extend_matches_thicken_and_faults_exit_70() {
    let d = Dir::new();
    let seed = d.file("seed", "thicket/1\nfield 2\nspace line\nseed\nalpha 1\nmode two-sided\nend\n");
    let f = d.file("f", &line_doc(&["[0,1] 0", "(0,3) 1"]));
    for a in ["0", "3/4", "5/2", "-5/2"] {
        let e = stdout(&thicket(&["extend", "--seed", s(&seed), "--a", a, s(&f)]));
        assert_eq!(e, stdout(&thicket(&["thicken", "--a", a, s(&f)])), "a = {a}");
    }
    let o = thicket(&["extend", "--seed", s(&seed), "--a", "1", "--fault", "zero-restriction", s(&f)]);
    assert_eq!(status(&o), 70);
    assert!(String::from_utf8_lossy(&o.stderr).contains("naturality"));
}

#[test]
fn exit_statuses() {
    let d = Dir::new();
    let f = d.file("f", &line_doc(&["[0,1] 0"]));
    assert_eq!(status(&thicket(&["thicken", s(&f)])), 2);
    assert_eq!(status(&thicket(&["no-such-command"])), 2);
    assert_eq!(status(&thicket(&["thicken", "--a", "x/0", s(&f)])), 2);
    let bad = d.file("bad", &line_doc(&["[2,1] 0"]));
    let o = thicket(&["dual", s(&bad)]);
    assert_eq!(status(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
    let old = d.file("old", "thicket/0\n");
    assert_eq!(status(&thicket(&["dual", s(&old)])), 1);
    assert_eq!(status(&thicket(&["dual", s(&d.path("missing"))])), 1);
    let c = d.file("c", "thicket/1\nfield 2\nspace circle 4\nsheaf\nend\n");
    assert_eq!(status(&thicket(&["thicken", "--a", "1", s(&c)])), 1);
    assert_eq!(status(&thicket(&["suite", "unknown"])), 1);
}

#[test]
fn suites_are_reproducible() {
    let d = Dir::new();
    let run = |seed: &str, workers: &str, out: &str| {
        let path = d.path(out);
        let o = Command::new(env!("CARGO_BIN_EXE_thicket"))
            .args(["suite", "semigroup", "--seed", seed, "--out", s(&path)])
            .env("THICKET_WORKERS", workers)
            .output()
            .unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(path).unwrap()
    };
    let a = run("7", "1", "a.csv");
    assert_eq!(a, run("7", "3", "b.csv"));
    assert_ne!(a, run("8", "2", "c.csv"));
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 501);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",pass,0")));
    assert!(stdout(&thicket(&["suite", "list"])).lines().any(|l| l.starts_with("oracle\t")));
    let bad_workers = Command::new(env!("CARGO_BIN_EXE_thicket"))
        .args(["suite", "skyscraper"])
        .env("THICKET_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(status(&bad_workers), 1);
}

#[test]
fn plots() {
    let d = Dir::new();
    let f = d.file("f", &line_doc(&["[0,1) 0", "(1,2] 1"]));
    let out = d.path("f.svg");
    stdout(&thicket(&["plot", s(&f), "--out", s(&out)]));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("cap-closed") && svg.contains("cap-open"));
    assert!(svg.contains(">deg 0<") && svg.contains(">deg 1<"));
    let c = d.file("c", "thicket/1\nfield 2\nspace circle 4\nsheaf\nspiral [0,6] 0\nband 0 1 1\nend\n");
    stdout(&thicket(&["plot", s(&c), "--out", s(&out)]));
    assert!(std::fs::read_to_string(&out).unwrap().contains("class=\"band\""));
}
