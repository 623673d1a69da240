use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SUCC: &str = "ufa 1\ntracks 2\nstates 2\nstart 0\naccept 1\ntrans 0 _1 1\ntrans 0 11 0\n";

fn ufa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ufa"))
        .args(args)
        .env_remove("UFA_MAX_K")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.0.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eval_membership() {
    let d = Dir::new();
    let succ = d.file("succ.ufa", SUCC);
    let o = ufa(&["eval", &succ, "4", "5"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "true\n"));
    let o = ufa(&["eval", &succ, "4", "6"]);
    assert_eq!(stdout(&o), "false\n");
    let o = ufa(&["eval", &succ, "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("ArityMismatch"));
}

#[test]
fn closure_then_eval() {
    let d = Dir::new();
    let succ = d.file("succ.ufa", SUCC);
    let leq = d.path("leq.ufa");
    let o = ufa(&["closure", "--star", &succ, "-o", s(&leq)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("certificate: k="));
    assert_eq!(stdout(&ufa(&["eval", s(&leq), "2", "7"])), "true\n");
    assert_eq!(stdout(&ufa(&["eval", s(&leq), "7", "2"])), "false\n");

    let lt = d.path("lt.ufa");
    ufa(&["closure", "--plus", &succ, "-o", s(&lt)]);
    assert_eq!(stdout(&ufa(&["eval", s(&lt), "2", "2"])), "false\n");
    let eq = d.path("eq.ufa");
    ufa(&["closure", "--equiv", &succ, "-o", s(&eq)]);
    assert_eq!(stdout(&ufa(&["eval", s(&eq), "9", "2"])), "true\n");
}

#[test]
fn closure_budget_from_environment() {
    let d = Dir::new();
    let succ = d.file("succ.ufa", SUCC);
    let o = Command::new(env!("CARGO_BIN_EXE_ufa"))
        .args(["closure", "--star", &succ])
        .env("UFA_MAX_K", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("ClosureBudgetExceeded"));
}

#[test]
fn queries() {
    let d = Dir::new();
    let succ = d.file("succ.ufa", SUCC);
    let rel = format!("R={succ}");
    let o = ufa(&["query", "--rel", &rel, "E x. R(x,x)"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "false\n"));
    let o = ufa(&["query", "--rel", &rel, "A x. E y. R(x,y)"]);
    assert_eq!(stdout(&o), "true\n");
    let o = ufa(&["query", "--rel", &rel, "R(x,y)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("NotASentence"));
    let two = d.path("two.ufa");
    let o = ufa(&[
        "query",
        "--rel",
        &rel,
        "E y. (R(x,y) & R(y,z))",
        "-o",
        s(&two),
    ]);
    assert_eq!(stdout(&o), "vars: x,z\n");
    assert_eq!(stdout(&ufa(&["eval", s(&two), "3", "5"])), "true\n");
    let o = ufa(&["query", "--rel", &rel, "E x. Q(x,x)"]);
    assert!(stderr(&o).starts_with("UnknownRelation"));
    let o = ufa(&["query", "--rel", &rel, "E x. (R(x,x)"]);
    assert!(stderr(&o).starts_with("SyntaxError"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(ufa(&[]).status.code(), Some(2));
    assert_eq!(ufa(&["closure", "x.ufa"]).status.code(), Some(2));
    assert_eq!(
        ufa(&["closure", "--star", "--plus", "x.ufa"]).status.code(),
        Some(2)
    );
    assert_eq!(ufa(&["eval", "x.ufa", "a"]).status.code(), Some(2));
    assert_eq!(
        ufa(&["render", "--format", "svg", "x.ufa"]).status.code(),
        Some(2)
    );
}

#[test]
fn bad_files_are_domain_errors() {
    let d = Dir::new();
    let bad = d.file("bad.ufa", "ufa 1\ntracks 2\nbogus\n");
    let o = ufa(&["info", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("FormatError"));
    let o = ufa(&["info", s(&d.path("missing.ufa"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn info_and_render() {
    let d = Dir::new();
    let succ = d.file("succ.ufa", SUCC);
    let o = ufa(&["info", &succ]);
    assert_eq!(
        stdout(&o),
        "tracks: 2\nstates: 2\nminimal_states: 2\npumping_constant: 3\nloop_lengths: 1\nfinite: false\n"
    );
    let dot = stdout(&ufa(&["render", "--format", "dot", &succ]));
    assert!(dot.starts_with("digraph") && dot.contains("label=\"_1\""));
    let grid = stdout(&ufa(&[
        "render",
        "--format",
        "grid",
        &succ,
        "--columns",
        "1",
    ]));
    assert!(grid.starts_with("rows: 0..2\ncolumns: 0..1\n"));
    assert!(grid.contains("(0,0) -> (0,1)\n") && grid.contains("(0,2) -> (1,0)\n"));
    assert_eq!(grid.lines().count(), 2 + 5);
}

#[test]
fn output_is_byte_stable() {
    let d = Dir::new();
    // a non-minimal automaton for SUCC
    let redundant = d.file(
        "r.ufa",
        "ufa 1\ntracks 2\nstates 3\nstart 0\naccept 2\ntrans 0 11 1\ntrans 1 11 0\ntrans 0 _1 2\ntrans 1 _1 2\n",
    );
    let (a, b) = (d.path("a.ufa"), d.path("b.ufa"));
    ufa(&["closure", "--star", &redundant, "-o", s(&a)]);
    ufa(&["closure", "--star", &redundant, "-o", s(&b)]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let succ = d.file("succ.ufa", SUCC);
    let c = d.path("c.ufa");
    ufa(&["closure", "--star", &succ, "-o", s(&c)]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn classify_reports() {
    let d = Dir::new();
    let succ = d.file("succ.ufa", SUCC);
    let leq = d.path("leq.ufa");
    ufa(&["closure", "--star", &succ, "-o", s(&leq)]);
    let o = ufa(&["classify", "--kind", "order", s(&leq)]);
    assert_eq!(
        stdout(&o),
        "kind: order\npumping_constant: 3\ntrivial: 3\nascending_chains: 3\ndescending_chains: 0\nantichains: 0\nstrongly_connected: 0\n"
    );
    let o = ufa(&["classify", "--kind", "order", &succ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("NotAQuasiOrder"));
    let o = ufa(&["classify", "--kind", "map", &succ]);
    let text = stdout(&o);
    assert!(text.contains("total: true\n") && text.contains("surjective: false\n"));
    assert!(
        text.contains("infinite_orbits: 1\n") && text.contains("orbit[0].path_type: outward\n")
    );
    let o = ufa(&["classify", "--kind", "components", &succ]);
    assert!(stdout(&o).contains("infinite_components: 1\nfinite_size_bound: 0\n"));
    let lt = d.path("lt.ufa");
    ufa(&["closure", "--plus", &succ, "-o", s(&lt)]);
    let o = ufa(&["classify", "--kind", "tournament", s(&lt)]);
    assert!(stdout(&o).contains("complete_ascending: 3\ncomplete_descending: 0\n"));
}

#[test]
fn propagate_and_extract() {
    let d = Dir::new();
    let chain = d.file(
        "chain.ufr",
        "qprime 0\nseeds 1\nconn S+1 P0 P0\nconn S+inf P0 P0\n",
    );
    let lt = d.path("lt.ufa");
    let o = ufa(&["propagate", &chain, "-o", s(&lt)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&ufa(&["eval", s(&lt), "3", "9"])), "true\n");
    assert_eq!(stdout(&ufa(&["eval", s(&lt), "9", "3"])), "false\n");

    let ufr = d.path("back.ufr");
    let o = ufa(&["extract", s(&lt), "-o", s(&ufr)]);
    assert_eq!(stdout(&o), "pumping_constant: 3\n");
    let again = d.path("again.ufa");
    ufa(&["propagate", s(&ufr), "-o", s(&again)]);
    assert_eq!(fs::read(&lt).unwrap(), fs::read(&again).unwrap());

    let broken = d.file("broken.ufr", "seeds 1\nedge P0.1 P0.2\n");
    let o = ufa(&["propagate", &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("ConnectionViolation"));
}

#[test]
fn builds() {
    let d = Dir::new();
    let succ = d.file("succ.ufa", SUCC);
    let empty = d.file("empty.ufa", "ufa 1\ntracks 2\nstates 1\nstart 0\naccept\n");
    let u = d.path("u.ufa");
    ufa(&["build", "union", &succ, &empty, "-o", s(&u)]);
    assert_eq!(stdout(&ufa(&["eval", s(&u), "4", "6"])), "true\n");
    assert_eq!(stdout(&ufa(&["eval", s(&u), "4", "5"])), "false\n");

    let edge = d.file("edge.txt", "vertex 2\nedge 0 1\n");
    let c = d.path("c.ufa");
    ufa(&["build", "copies", &edge, "-o", s(&c)]);
    assert_eq!(stdout(&ufa(&["eval", s(&c), "6", "7"])), "true\n");
    assert_eq!(stdout(&ufa(&["eval", s(&c), "7", "8"])), "false\n");

    let star = d.file("star.tpl", "vertex 2\nedge 0 1\nt0 1\nt1 1\n");
    let st = d.path("star.ufa");
    ufa(&["build", "star", &star, "-o", s(&st)]);
    assert_eq!(stdout(&ufa(&["eval", s(&st), "10", "1"])), "true\n");
    let o = ufa(&["build", "path", &star]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("BadTemplate"));

    let path = d.file("path.tpl", "vertex 2\nedge 0 1\nt0 0\nt1 1\n");
    let p = d.path("path.ufa");
    ufa(&["build", "path", &path, "-o", s(&p)]);
    assert_eq!(stdout(&ufa(&["eval", s(&p), "3", "5"])), "true\n");

    let o = ufa(&["build", "quotient", &succ, &succ]);
    assert!(stderr(&o).starts_with("NotEquivalence"));
    let one = d.file(
        "one.ufa",
        "ufa 1\ntracks 2\nstates 2\nstart 0\naccept 1\ntrans 0 _1 1\n",
    );
    let a = d.path("a.ufa");
    let o = ufa(&["build", "attach", &one, "1", &one, "0", "-o", s(&a)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&ufa(&["eval", s(&a), "1", "3"])), "true\n");
}
