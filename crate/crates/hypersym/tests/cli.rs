//! The binary: exit codes, outputs and file round trips.

use std::path::PathBuf;
use std::process::Command;

use hypersym::bicrossproduct::{Factor, MatchedPairSpec};
use hypersym::classify2d::CanonicalTarget;
use hypersym::cli::{MatchedPairFile, StructureFile};
use hypersym::{BilinearForm, Matrix};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypersym"))
}

fn structures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/structures")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn path(name: &str) -> String {
    structures().join(name).display().to_string()
}

#[test]
fn verify_canonical_passes() {
    let (code, out, _) = run(&["verify", &path("r4_canonical.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.contains("pass")));
    assert_eq!(out.lines().count(), 13);
}

#[test]
fn verify_identity_metric_fails_at_compatibility() {
    let (code, out, _) = run(&["verify", &path("r4_identity_metric.json")]);
    assert_eq!(code, 1);
    let fails: Vec<&str> = out.lines().filter(|l| l.contains("fail")).collect();
    assert_eq!(fails.len(), 1);
    assert!(fails[0].starts_with("g(Ex,Ey) = -g(x,y)"));
}

#[test]
fn classify2d_nabla1() {
    let (code, out, _) = run(&["classify2d", &path("nabla1_aff.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("aff (a) alpha=0"));
    assert!(out.contains("nabla1"));
    assert!(out.contains("incomplete"));
}

#[test]
fn bicross_emits_a_verifiable_structure() {
    let (code, out, _) = run(&["bicross", &path("b2_matched_pair.json")]);
    assert_eq!(code, 0);
    let f = StructureFile::parse(&out).unwrap();
    assert_eq!(f.dim, 4);
    let tmp = std::env::temp_dir().join("hypersym_cli_b2.json");
    std::fs::write(&tmp, &out).unwrap();
    let (code, out, _) = run(&["verify", tmp.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["curvature", tmp.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("flat: false"));
}

#[test]
fn bicross_rejects_incompatible_pair() {
    // nabla1 against nabla2 with identity phi: no matched pair exists for this pairing.
    let f = |t: CanonicalTarget| Factor::new(t.connection(), BilinearForm::wedge(2, 0, 1)).unwrap();
    let spec = MatchedPairSpec::new(f(CanonicalTarget::Nabla1), f(CanonicalTarget::Nabla2), Matrix::identity(2)).unwrap();
    let mp = MatchedPairFile::from_spec(&spec);
    let tmp = std::env::temp_dir().join("hypersym_cli_c2.json");
    std::fs::write(&tmp, mp.to_json()).unwrap();
    let (code, out, _) = run(&["bicross", tmp.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("matched pair identity"));
}

#[test]
fn geodesic_csv() {
    let (code, out, err) = run(&["geodesic", &path("nabla1_aff.json"), "--x0", "1,-1", "--horizon", "0.5"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t,e1,e2,norm"));
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(first, vec![0.0, 1.0, -1.0, 2f64.sqrt()]);
    assert!(err.contains("verdict"));
}

#[test]
fn input_errors_exit_2() {
    let tmp = std::env::temp_dir().join("hypersym_cli_bad.json");
    std::fs::write(&tmp, r#"{"schema_version":1,"dim":2,"labels":["a","b"],"colour":"red"}"#).unwrap();
    let (code, _, err) = run(&["verify", tmp.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown field") && err.contains("line 1"));
    let (code, _, _) = run(&["verify", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    std::fs::write(&tmp, r#"{"schema_version":1,"dim":2,"labels":["a","b"],"metric":[["1","0"],["0","x"]]}"#).unwrap();
    let (code, _, err) = run(&["curvature", tmp.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn shipped_files_round_trip() {
    for entry in std::fs::read_dir(structures()).unwrap() {
        let p = entry.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap();
        if let Ok(f) = StructureFile::parse(&text) {
            assert_eq!(StructureFile::parse(&f.to_json()).unwrap(), f, "{}", p.display());
        } else {
            let f = MatchedPairFile::parse(&text).unwrap();
            assert_eq!(MatchedPairFile::parse(&f.to_json()).unwrap(), f, "{}", p.display());
        }
    }
}

#[test]
fn paper_suite_is_deterministic() {
    let a = hypersym::cli::cmd_paper_suite();
    let b = hypersym::cli::cmd_paper_suite();
    assert_eq!(a, b);
    let mut ids: Vec<&str> = a.checks.iter().map(|c| c.id.as_str()).collect();
    let n = ids.len();
    ids.dedup();
    assert_eq!(ids.len(), n, "duplicate check ids");
}
