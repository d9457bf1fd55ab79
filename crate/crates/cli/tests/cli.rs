use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuchsian"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_fixture(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fuchsian-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn katz_rank_one() {
    let o = run(&["katz", "fixtures/modules/exp-rank1.toml"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("rank 1\n"));
    assert!(out.contains("leading_poly x - 1\n"));

    let o = run(&["katz", "fixtures/modules/trivial.toml"]);
    let out = stdout(&o);
    assert!(out.contains("rank 0\n") && out.contains("divisor 0\n"));
}

#[test]
fn malformed_scalar_exits_2_with_position() {
    let p = temp_fixture("bad.toml", "[module]\ntheta = [[\"1//x\"]]\n");
    let o = run(&["katz", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(
        err.contains("katz") && err.contains("position") && err.contains("1//x"),
        "{err}"
    );

    let p = temp_fixture("garbage.toml", "[module\n");
    assert_eq!(run(&["katz", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn resolve_examples() {
    let o = run(&["resolve", "fixtures/germs/cusp.toml"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("events 3\n"));
    assert!(
        out.contains("[-3, 0, 1]\n")
            && out.contains("[0, -2, 1]\n")
            && out.contains("[1, 1, -1]\n")
    );
    assert!(out.contains("negative definite: yes"));

    for f in ["axes", "three-lines"] {
        let out = stdout(&run(&["resolve", &format!("fixtures/germs/{f}.toml")]));
        assert!(
            out.contains("events 1\n") && out.contains("  [-1]\n"),
            "{f}"
        );
    }
}

#[test]
fn step_limit_exits_4() {
    let o = run(&["resolve", "--max-steps", "1", "fixtures/germs/cusp.toml"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "fixtures/verify/log-cusp.toml"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.ends_with("verdict\n  regular\n"));
    assert!(out.contains("exponents: [2*c1 + 3*c2]"));

    assert_eq!(
        run(&["verify", "fixtures/verify/irregular-along-z.toml"])
            .status
            .code(),
        Some(5)
    );
    assert_eq!(
        run(&["verify", "fixtures/verify/trivial.toml"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn verify_json_has_the_text_sections() {
    let o = run(&["verify", "--json", "fixtures/verify/log-cusp.toml"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let out = &v["output"];
    for k in [
        "resolution",
        "components",
        "inequalities",
        "definiteness",
        "pullback",
        "verdict",
    ] {
        assert!(out.get(k).is_some(), "{k}");
    }
    assert_eq!(out["verdict"], "regular");
    assert_eq!(out["pullback"]["exponents"][0], "2*c1 + 3*c2");
}

#[test]
fn exponents_and_saturation_cap() {
    let o = run(&["exponents", "fixtures/modules/log-c1.toml"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exponents [c1]"));
    // Below the minimum cap is a computation error, not a verdict.
    let o = run(&[
        "exponents",
        "--saturation-cap",
        "0",
        "fixtures/modules/log-c1.toml",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(
        run(&["exponents", "fixtures/modules/exp-rank1.toml"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn flatness_reports_curvature() {
    let o = run(&["flatness", "fixtures/models/two-blocks-scrambled.toml"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("flat yes\n"));
    let p = temp_fixture(
        "curved.toml",
        "[connection]\nax = [[\"0\", \"1\"], [\"0\", \"0\"]]\nay = [[\"0\", \"0\"], [\"1\", \"0\"]]\n",
    );
    let o = run(&["flatness", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("curvature [[1, 0], [0, -1]]"));
}

#[test]
fn corpus_mode_is_ordered_and_isolated() {
    let o = run(&["verify", "--corpus", "fixtures/verify"]);
    // The negative control sets the worst exit code.
    assert_eq!(o.status.code(), Some(5));
    let out = stdout(&o);
    let heads: Vec<&str> = out.lines().filter(|l| l.starts_with("== ")).collect();
    let mut sorted = heads.clone();
    sorted.sort();
    assert_eq!(heads, sorted);
    assert!(heads.len() >= 12);

    let o = run(&["verify", "--json", "--corpus", "fixtures/verify"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), heads.len());
}

#[test]
fn file_and_corpus_are_exclusive() {
    assert_eq!(
        run(&[
            "verify",
            "--corpus",
            "fixtures/verify",
            "fixtures/verify/trivial.toml"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}
