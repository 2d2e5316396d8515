//! Drives the built binary end to end through temp files.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_plgroups"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("plgroups-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn out_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn encode_add_divides_round_trip() {
    let dir = workdir("arith");
    let path = |n: &str| dir.join(n).to_str().unwrap().to_owned();
    for k in [2, 3, 5, 12] {
        let out = bin()
            .args([
                "arith",
                "encode",
                &k.to_string(),
                "-o",
                &path(&format!("e{k}.map")),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let add = bin()
        .args([
            "arith",
            "add",
            &path("e2.map"),
            &path("e3.map"),
            &path("e5.map"),
        ])
        .output()
        .unwrap();
    assert_eq!(out_str(&add).trim(), "true");
    let add_bad = bin()
        .args([
            "arith",
            "add",
            &path("e2.map"),
            &path("e3.map"),
            &path("e12.map"),
        ])
        .output()
        .unwrap();
    assert_eq!(out_str(&add_bad).trim(), "false");
    let div = bin()
        .args([
            "arith",
            "divides",
            &path("e3.map"),
            &path("e12.map"),
            "--witness",
        ])
        .output()
        .unwrap();
    assert!(out_str(&div).starts_with("true"));
    let dec = bin()
        .args(["arith", "decode", &path("e12.map")])
        .output()
        .unwrap();
    assert_eq!(out_str(&dec).trim(), "12");
}

#[test]
fn map_algebra_and_wreath() {
    let dir = workdir("maps");
    let path = |n: &str| dir.join(n).to_str().unwrap().to_owned();
    let gens = bin()
        .args([
            "generators",
            "--alpha0",
            "1/2",
            "--s",
            "2",
            "--t",
            "1",
            "--out-dir",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(gens.status.success());
    let ab = bin()
        .args([
            "map",
            "compose",
            &path("a.map"),
            &path("b.map"),
            "-o",
            &path("ab.map"),
        ])
        .output()
        .unwrap();
    assert!(ab.status.success());
    let eval = bin()
        .args(["map", "eval", &path("ab.map"), "0"])
        .output()
        .unwrap();
    assert_eq!(out_str(&eval).trim(), "0");
    let decomp = bin()
        .args([
            "wreath",
            "decompose",
            &path("ab.map"),
            "--alpha0",
            "1/2",
            "--s",
            "2",
            "--t",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out_str(&decomp).trim(), "a^1 | {-1: 1}");
    let word = bin().args(["wreath", "eval", "a^-1 b a"]).output().unwrap();
    assert_eq!(out_str(&word).trim(), "a^0 | {1: 1}");
    // the standard-pair instance decomposes its own generator product
    let thompson = bin()
        .args(["wreath", "decompose", &path("ab.map"), "--thompson"])
        .output()
        .unwrap();
    assert!(thompson.status.success());
}

#[test]
fn selftest_is_deterministic_and_green() {
    let run = || {
        let out = bin()
            .args(["selftest", "--seed", "5", "--trials", "12"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out_str(&out)
    };
    let a = run();
    assert!(a.contains("0 failed"));
    assert!(!a.contains(" FAIL "));
    assert_eq!(a, run(), "same seed must give a byte-identical report");
}

#[test]
fn exit_codes() {
    let dir = workdir("errs");
    let id = dir.join("id.map");
    fs::write(&id, "2 1\n0 0\n1 1\n").unwrap();
    let domain = bin()
        .args(["map", "eval", id.to_str().unwrap(), "7/2"])
        .output()
        .unwrap();
    assert_eq!(domain.status.code(), Some(1));
    let usage = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let ok = bin()
        .args(["map", "eval", id.to_str().unwrap(), "1/3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(out_str(&ok).trim(), "1/3");
}

#[test]
fn plot_emission() {
    let dir = workdir("plot");
    let id = dir.join("id.map");
    fs::write(&id, "2 1\n0 0\n1/2 1/4\n3/4 1/2\n1 1\n").unwrap();
    let csv = dir.join("g.csv");
    let svg = dir.join("g.svg");
    let out = bin()
        .args(["plot", id.to_str().unwrap()])
        .arg("--csv")
        .arg(&csv)
        .arg("--svg")
        .arg(&svg)
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv_text = fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("x,y\n"));
    assert_eq!(csv_text.lines().count(), 5);
    let svg_text = fs::read_to_string(&svg).unwrap();
    assert!(svg_text.contains("<polyline"));
    assert!(svg_text.contains("</svg>"));
}

#[test]
fn logic_subcommands() {
    let dir = workdir("logic");
    let st = dir.join("m.structure");
    fs::write(&st, "structure 4\nrel even/1\n0\n2\nend\n").unwrap();
    let f = dir.join("f.formula");
    fs::write(&f, "exists x even(x)\n").unwrap();
    let eval = bin()
        .args(["logic", "eval", st.to_str().unwrap(), f.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out_str(&eval).trim(), "true");
    let pkg = dir.join("pkg.txt");
    fs::write(
        &pkg,
        "dim 1\ntarget rel same/2\nphi y0 : y0 = y0\npsi u0 | v0 : even(u0) <-> even(v0)\n\
         xi same p0 | q0 : even(p0) <-> even(q0)\n",
    )
    .unwrap();
    let sentence = dir.join("s.formula");
    fs::write(&sentence, "forall x same(x, x)\n").unwrap();
    let reduce = bin()
        .args([
            "logic",
            "reduce",
            pkg.to_str().unwrap(),
            sentence.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(reduce.status.success());
    assert!(out_str(&reduce).contains("forall x@1"));
    let check = bin()
        .args(["logic", "check-interp", "--seed", "3", "--trials", "60"])
        .output()
        .unwrap();
    assert!(check.status.success());
    assert!(out_str(&check).contains("reduce-equivalence PASS"));
}
