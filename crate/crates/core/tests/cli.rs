use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use szabo_core::cli::run;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn szabo(args: &[&str]) -> Out {
    let mut argv = vec!["szabo"];
    argv.extend_from_slice(args);
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = run(argv, &mut o, &mut e);
    Out {
        code,
        stdout: String::from_utf8(o).unwrap(),
        stderr: String::from_utf8(e).unwrap(),
    }
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("szabo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn fixture(name: &str, args: &[&str]) -> String {
    let mut a = args.to_vec();
    a.extend(["gen-fixture", name]);
    let o = szabo(&a);
    assert_eq!(o.code, 0, "{}", o.stderr);
    o.stdout
}

fn json(o: &Out) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

#[test]
fn check_symmetries_exit_codes() {
    let zero = scratch(
        "zero.json",
        &fixture("zero-tensor", &["--signature", "1,2"]),
    );
    assert_eq!(szabo(&["check-symmetries", zero.to_str().unwrap()]).code, 0);

    let text = fixture("tensor", &["--signature", "1,2", "--seed", "4"]);
    let good = scratch("good.json", &text);
    assert_eq!(szabo(&["check-symmetries", good.to_str().unwrap()]).code, 0);

    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["entries"][0]["coef"] = Value::String("12345/1".into());
    let bad = scratch("bad.json", &v.to_string());
    let o = szabo(&[
        "--format",
        "json",
        "check-symmetries",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 1);
    let j = json(&o);
    assert!(j["violations"].as_u64().unwrap() > 0);
    assert!(!j["witnesses"].as_array().unwrap().is_empty());

    let broken = scratch("broken.json", "{\"signature\": [1,");
    assert_eq!(
        szabo(&["check-symmetries", broken.to_str().unwrap()]).code,
        2
    );
    assert_eq!(
        szabo(&["check-symmetries", "/nonexistent/file.json"]).code,
        2
    );
    assert_eq!(
        szabo(&[
            "--signature",
            "2,2",
            "check-symmetries",
            good.to_str().unwrap()
        ])
        .code,
        2
    );
}

#[test]
fn szabo_point_and_polynomial() {
    let zero = scratch(
        "zero3.json",
        &fixture("zero-tensor", &["--signature", "1,2"]),
    );
    let o = szabo(&[
        "--format",
        "json",
        "szabo",
        zero.to_str().unwrap(),
        "--at",
        "1,2,3",
    ]);
    assert_eq!(o.code, 0);
    assert!(json(&o)["entries"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap())
        .all(|c| c == "0/1"));

    let t = scratch(
        "t.json",
        &fixture("tensor", &["--signature", "2,1", "--seed", "9"]),
    );
    let t = t.to_str().unwrap();
    let at = |v: &str| {
        let o = szabo(&["--format", "json", "szabo", t, "--at", v]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        szabo_core::json::OperatorJson::matrix(&serde_json::from_str(&o.stdout).unwrap()).unwrap()
    };
    let a = at("1,-1/2,2");
    assert_eq!(
        at("2,-1,4"),
        a.scale(&szabo_core::exactpoly::rational::int(8))
    );

    let o = szabo(&["--format", "json", "szabo", t, "--poly"]);
    let poly = szabo_core::json::polymap_from_str(&o.stdout).unwrap();
    let v = szabo_core::json::parse_vector("1,-1/2,2").unwrap();
    assert_eq!(poly.eval(&v).unwrap(), a);

    // the emitted map is itself a valid input
    let pm = scratch("pm.json", &o.stdout);
    let o = szabo(&["--format", "json", "pclass", pm.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["member"], true);
    assert_eq!(szabo(&["szabo", t]).code, 2);
}

#[test]
fn nilpotency_reports() {
    let zero_t = scratch("z12.json", &fixture("zero-tensor", &["--signature", "1,2"]));
    let o = szabo(&[
        "--format",
        "json",
        "szabo",
        zero_t.to_str().unwrap(),
        "--poly",
    ]);
    let zero_map = scratch("zmap.json", &o.stdout);
    let o = szabo(&["--format", "json", "nilpotency", zero_map.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["vanishing_order"], 1);

    let n = scratch("nro.json", &fixture("null-rank-one", &[]));
    let o = szabo(&["--format", "json", "nilpotency", n.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["vanishing_order"], 2);
    assert_eq!(json(&o)["cube_vanishes"], true);

    let sp = scratch("sp.json", &fixture("split-plane", &[]));
    let o = szabo(&["nilpotency", sp.to_str().unwrap()]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("inadmissible"));
}

#[test]
fn dependence_chains() {
    let c = scratch("const.json", &fixture("family-constants", &[]));
    let o = szabo(&["--format", "json", "dependence", c.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["k"], 0);
    assert!(json(&o)["chain"].as_array().unwrap().is_empty());

    let q = scratch("q.json", &fixture("family-q", &[]));
    let o = szabo(&["--format", "json", "dependence", q.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    let j = json(&o);
    assert_eq!(j["k"], 1);
    let chain = j["chain"].as_array().unwrap();
    assert_eq!(chain.len(), 1);
    assert_eq!(chain[0]["after"], 0);
    assert_eq!(chain[0]["identity_verified"], true);

    let e = scratch("eq.json", &fixture("family-equal", &[]));
    let o = szabo(&["dependence", e.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("zero ideal"));
}

#[test]
fn spectral_profiles() {
    let c = scratch("cl.json", &fixture("clifford-profile", &[]));
    let o = szabo(&["--format", "json", "spectral", c.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let j = json(&o);
    assert_eq!(j["identity"]["holds"], true);
    assert_eq!(j["profile"]["l"], 1);

    let g = scratch("g.json", &fixture("generic-rank-one", &[]));
    let o = szabo(&["spectral", g.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("S*A = 0: false"));

    let o = szabo(&["spectral", c.to_str().unwrap(), "--source", "1,1,0"]);
    assert_eq!(o.code, 3, "{}", o.stderr);
}

#[test]
fn verdicts() {
    let o = szabo(&["--signature", "3,3", "wolf"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().next(), Some("locally symmetric"));
    let o = szabo(&["--signature", "8,8", "wolf"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.starts_with("inconclusive"));
    assert_eq!(szabo(&["wolf"]).code, 2);

    let o = szabo(&[
        "obstruction",
        "--case",
        "3",
        "--n",
        "12",
        "--k",
        "10",
        "--r",
        "4",
    ]);
    assert_eq!(o.code, 0);
    assert_eq!(
        o.stdout.lines().next(),
        Some("infeasible: rank forced to 0")
    );
    assert!(o.stdout.contains("[ko-halving]"));

    let o = szabo(&[
        "--format",
        "json",
        "obstruction",
        "--case",
        "3",
        "--n",
        "12",
        "--k",
        "9",
        "--r",
        "4",
    ]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("k >= 10 fails"));
    assert_eq!(
        szabo(&["obstruction", "--case", "2", "--n", "7", "--r", "2"]).code,
        3
    );
    assert_eq!(
        szabo(&["obstruction", "--case", "1", "--n", "4", "--r", "3"]).code,
        3
    );
    assert_eq!(
        szabo(&["obstruction", "--case", "4", "--n", "4", "--r", "1"]).code,
        2
    );
}

#[test]
fn json_traces_replay() {
    let o = szabo(&[
        "--format",
        "json",
        "--seed",
        "17",
        "--signature",
        "2,11",
        "wolf",
    ]);
    let j = json(&o);
    assert_eq!(j["command"], "wolf");
    assert_eq!(j["seed"], 17);
    let trace: szabo_core::obstruction::ProofTrace =
        serde_json::from_value(j["trace"].clone()).unwrap();
    assert!(szabo_core::obstruction::replay(&trace).unwrap().is_none());
    assert_eq!(
        trace.verdict,
        szabo_core::obstruction::Verdict::LocallySymmetric
    );
}

#[test]
fn output_is_deterministic() {
    let t = scratch(
        "det.json",
        &fixture("tensor", &["--signature", "1,2", "--seed", "2"]),
    );
    let o = szabo(&["--format", "json", "szabo", t.to_str().unwrap(), "--poly"]);
    let pm = scratch("detpm.json", &o.stdout);
    for args in [
        vec![
            "--seed",
            "5",
            "--format",
            "json",
            "spectral",
            pm.to_str().unwrap(),
        ],
        vec!["--seed", "5", "gen-fixture", "tensor"],
        vec![
            "--format",
            "json",
            "dependence",
            scratch("detq.json", &fixture("family-q", &[]))
                .to_str()
                .unwrap(),
        ],
    ] {
        let a = szabo(&args);
        let b = szabo(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.code, b.code);
    }
    assert_ne!(
        fixture("tensor", &["--seed", "1"]),
        fixture("tensor", &["--seed", "2"])
    );
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_szabo");
    let st = Command::new(exe)
        .args(["--signature", "3,3", "wolf"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&st.stdout).starts_with("locally symmetric"));
    let st = Command::new(exe)
        .args(["pclass", "/nonexistent"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(exe).arg("--help").output().unwrap();
    assert_eq!(st.status.code(), Some(0));
}
