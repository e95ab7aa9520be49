use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use coha_cli::doc::{ArrowDecl, Build, QuiverDocument};
use coha_cli::expr::parse_element;
use coha_core::symmetric::SymBasis;
use coha_core::{catalog, DimVec, QPolynomial, Rational, Torus};
use proptest::prelude::*;

fn coha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coha")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_doc(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coha-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

type Record = BTreeMap<String, String>;

fn machine_records(s: &str, cmd: &str) -> Vec<Record> {
    s.lines()
        .map(|l| {
            let mut r: Record = l
                .split(' ')
                .map(|kv| {
                    let (k, v) = kv.split_once('=').expect("key=value");
                    (k.to_owned(), v.to_owned())
                })
                .collect();
            assert_eq!(r.remove("cmd").as_deref(), Some(cmd));
            r
        })
        .collect()
}

fn text_records(s: &str) -> Vec<Record> {
    let mut out = Vec::new();
    for block in s.split("\n\n") {
        let mut lines = block.lines();
        let Some(header) = lines.next() else { continue };
        let keys: Vec<&str> = header.split_whitespace().collect();
        for l in lines {
            let vals: Vec<&str> = l.split_whitespace().collect();
            assert_eq!(vals.len(), keys.len(), "row {l:?}");
            out.push(keys.iter().zip(vals).map(|(k, v)| (k.to_string(), v.to_string())).collect());
        }
    }
    out
}

fn same_content(args: &[&str], cmd: &str) {
    let text = coha(args);
    assert!(text.status.success(), "{args:?}: {}", String::from_utf8_lossy(&text.stderr));
    let mut margs = args.to_vec();
    margs.push("--machine");
    let machine = coha(&margs);
    assert!(machine.status.success());
    let t = text_records(&stdout(&text));
    let m = machine_records(&stdout(&machine), cmd);
    assert!(!t.is_empty());
    assert_eq!(t, m, "{args:?}");
}

#[test]
fn text_and_machine_reports_agree() {
    same_content(&["--preset", "jordan", "bps", "--dim", "2", "--deg-max", "6"], "bps");
    same_content(&["--preset", "jordan", "basis", "--d", "6", "--dim", "2", "--deg-max", "3"], "basis");
    same_content(&["--preset", "arrowless", "pbw-check", "--dim-max", "2", "--deg-max", "2", "--d-max", "5"], "pbw-check");
    same_content(&["--preset", "tripled-jordan", "conjecture", "--dim-max", "2", "--deg-max", "2"], "conjecture");
    same_content(&["--preset", "jordan", "kac", "--dim", "2"], "kac");
    same_content(&["--preset", "symmetric-a2", "kernel"], "kernel");
    same_content(&["--preset", "tripled-jordan", "spherical", "--degrees", "0,1", "--degrees", "1,0"], "spherical");
    same_content(&["--preset", "jordan", "bracket", "z[1,1]", "1"], "bracket");
}

#[test]
fn documented_examples() {
    let o = coha(&["--preset", "arrowless", "--machine", "member", "--d", "3", "z[1,1]"]);
    assert_eq!(stdout(&o), "cmd=member n=(1) d=3 method=direct member=true\n");
    let o = coha(&["--preset", "arrowless", "--machine", "product", "1", "z[1,1]"]);
    assert_eq!(stdout(&o), "cmd=product n=(2) deg=0 poly=1\n");
    let o = coha(&["--preset", "jordan", "--machine", "bps", "--dim", "2", "--deg-max", "6"]);
    let recs = machine_records(&stdout(&o), "bps");
    assert_eq!(recs.len(), 7);
    assert!(recs.iter().all(|r| r["dim"] == "0" && r.contains_key("ambient")));
}

#[test]
fn quiver_files() {
    let p = temp_doc("a2.quiver", "# symmetric A2\nvertices: v w\narrow a: v -> w\narrow b: w -> v\ntorus: generic\n");
    let o = coha(&["--quiver", p.to_str().unwrap(), "--machine", "member", "--d", "1", "(1,0): 1"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("member=true\n"));

    let p = temp_doc("bad.quiver", "vertices: v\narrow a: v -> w\n");
    let o = coha(&["--quiver", p.to_str().unwrap(), "kernel"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 1"));
}

#[test]
fn exit_statuses() {
    assert_eq!(coha(&["kernel"]).status.code(), Some(2));
    assert_eq!(coha(&["--preset", "jordan", "member", "--d", "1", "z[1,1"]).status.code(), Some(2));
    assert_eq!(coha(&["--preset", "jordan", "member", "--d", "1", "z[1,1]^2+z[1,2]"]).status.code(), Some(2));
    assert_eq!(coha(&["--preset", "jordan", "member", "--d", "0", "1"]).status.code(), Some(3));
    assert_eq!(coha(&["--preset", "jordan", "wheel-check", "(3): 1"]).status.code(), Some(3));
    assert_eq!(coha(&["--preset", "a2", "kernel"]).status.code(), Some(3));
    assert_eq!(coha(&["--preset", "jordan", "kac", "--dim", "1", "--q", "7"]).status.code(), Some(3));
    assert_eq!(coha(&["--quiver", "/nonexistent/q", "kernel"]).status.code(), Some(1));
    let o = coha(&["--preset", "tripled-jordan", "--machine", "wheel-check", "(3): 1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("wheel=false\n"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--preset", "tripled-jordan", "--seed", "11", "conjecture", "--dim-max", "2", "--deg-max", "3"];
    let a = coha(&args);
    let b = coha(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = coha(&["--jobs", "1", "--preset", "tripled-jordan", "--seed", "11", "conjecture", "--dim-max", "2", "--deg-max", "3"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn kac_counts() {
    let o = coha(&["--preset", "a2", "--machine", "kac", "--dim", "1,1", "--q", "2"]);
    assert_eq!(stdout(&o), "cmd=kac n=(1,1) q=2 classes=2 indec=1 absindec=1\n");
    let o = coha(&["--preset", "jordan", "--machine", "kac", "--dim", "2"]);
    assert!(stdout(&o).contains("kac=q at1=1"));
}

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,4}".prop_filter("reserved", |s| !["x", "y", "z", "hbar", "param"].contains(&s.as_str()))
}

fn document() -> impl Strategy<Value = QuiverDocument> {
    (prop::collection::btree_set(name(), 1..4), prop::collection::vec((any::<u8>(), any::<u8>(), any::<bool>()), 0..4), 0..3u8, any::<bool>())
        .prop_map(|(vs, arrows, build, generic)| {
            let vertices: Vec<String> = vs.into_iter().collect();
            let arrows = arrows
                .into_iter()
                .enumerate()
                .map(|(k, (s, t, named))| ArrowDecl {
                    name: format!("e{k}"),
                    source: vertices[s as usize % vertices.len()].clone(),
                    target: vertices[t as usize % vertices.len()].clone(),
                    param: named.then(|| format!("t{k}")),
                })
                .collect();
            let build = [Build::AsIs, Build::Double, Build::Triple][build as usize];
            let torus = if generic { Torus::Generic } else { Torus::Trivial };
            QuiverDocument { vertices, arrows, build, torus }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn documents_round_trip(doc in document()) {
        let printed = doc.to_string();
        let parsed = QuiverDocument::parse(&printed).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(&parsed.to_string(), &printed);
        let inline = printed.trim_end().replace('\n', "; ");
        prop_assert_eq!(QuiverDocument::parse(&inline).unwrap(), doc);
    }

    #[test]
    fn elements_round_trip(n in 1u32..4, degree in 0u32..4, coeffs in prop::collection::vec((-5i64..6, 1i64..4, 0u32..2), 1..6)) {
        let k = catalog::jordan();
        let n = DimVec::new(vec![n]);
        let basis = SymBasis::new(&n, degree);
        let u: QPolynomial = coha_core::Polynomial::var(coha_core::Var::param("u_a"));
        let mut p = QPolynomial::zero();
        for (t, (num, den, upow)) in coeffs.into_iter().enumerate() {
            let c = Rational::new(num.into(), den.into());
            p += &basis.element::<Rational>(t % basis.len()).scale(&c) * &u.pow(upow);
        }
        let e = coha_core::ShuffleElement::new(n, p).unwrap();
        let text = e.to_string();
        prop_assert_eq!(parse_element(&k, &text).unwrap(), e);
    }
}
