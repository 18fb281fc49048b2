use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn pcfheight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcfheight"))
        .args(args)
        .env_remove("PCFHEIGHT_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pcfheight-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    dir
}

#[test]
fn height_of_two_under_squaring_is_log_two() {
    let o = pcfheight(&["height", "z^2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0.693147"), "{}", stdout(&o));
    assert!(stdout(&o).contains('±'));
}

#[test]
fn finite_orbits_have_height_zero() {
    let o = pcfheight(&["height", "z^3 - 3*z", "1", "--verbose"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("h_f(z) = 0 ± 0"), "{}", stdout(&o));
    assert!(stdout(&o).contains("preperiodic"));
}

#[test]
fn verbose_lists_places_and_exact_prints_dyadics() {
    // 7/5 escapes at every place, so each local term is decided
    let o = pcfheight(&["height", "1,0,1/6", "7/5", "--verbose", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("lambda_inf") && text.contains("lambda_2") && text.contains("lambda_3"), "{text}");
    assert!(text.lines().next().unwrap().contains("*2^"), "{text}");
}

#[test]
fn json_height_parses() {
    let o = pcfheight(&["--format", "json", "height", "z^2 - 2z", "1+sqrt(2)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["complete"], true);
    assert_eq!(v["preperiodic"], true);
}

#[test]
fn malformed_input_exits_two_with_a_position() {
    let o = pcfheight(&["height", "z^2 +* 1", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("cannot parse polynomial") && err.contains('^'), "{err}");
    assert_eq!(pcfheight(&["height", "z^2", "1/0"]).status.code(), Some(2));
    assert_eq!(pcfheight(&["certify", "--cubic", "x", "1"]).status.code(), Some(2));
}

#[test]
fn bounded_orbits_without_a_repeat_exit_three() {
    // the real orbit of 1/3 under z^2 - 1 stays bounded, so the archimedean term is only bounded above
    let o = pcfheight(&["height", "z^2 - 1", "1/3", "--iterations", "2"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("undecided"));
}

#[test]
fn certify_exit_codes() {
    let o = pcfheight(&["certify", "--cubic", "-3", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict_label"], "pcf");

    let o = pcfheight(&["certify", "--cubic", "1", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict_label"], "not_pcf");

    let o = pcfheight(&["certify", "--quadratic", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"-2\""));

    assert_eq!(pcfheight(&["certify", "--cubic", "-3/4", "3/4"]).status.code(), Some(0));
    assert_eq!(pcfheight(&["certify", "z^2 + 1"]).status.code(), Some(1));
    assert_eq!(pcfheight(&["certify", "--cubic", "-3", "0", "--iterations", "1"]).status.code(), Some(3));
}

#[test]
fn enumerate_cubics() {
    let base = scratch("cubic");
    let o = pcfheight(&["enumerate", "--degree", "3", "--out", base.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("3895 -> 86 -> 15 -> 6 -> 7 "), "{text}");
    assert!(text.contains("A =  -3/4  B =   3/4"), "{text}");
    let run = fs::read_dir(&base).unwrap().next().unwrap().unwrap().path();
    assert!(run.join("candidates.csv").exists() && run.join("summary.json").exists());

    let o = pcfheight(&["enumerate", "--n-arch", "5", "--out", base.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let weak = stdout(&o);
    let arch: usize = weak.split(" -> ").nth(1).unwrap().parse().unwrap();
    assert!(arch > 86);
    assert!(weak.lines().next().unwrap().contains("-> 6 -> 7 "), "{weak}");
    assert_eq!(fs::read_dir(&base).unwrap().count(), 2, "one run directory per config digest");
    fs::remove_dir_all(&base).unwrap();
}

#[test]
fn enumerate_quadratics_and_strict_failure() {
    let base = scratch("quadratic");
    let out = base.to_str().unwrap();
    let o = pcfheight(&["enumerate", "--degree", "2", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PCF: {-2, -1, 0}"), "{}", stdout(&o));
    let o = pcfheight(&["--format", "csv", "enumerate", "--degree", "2", "--out", out]);
    assert!(stdout(&o).starts_with("c,verdict,witness,orbit_len\n"));
    assert_eq!(stdout(&o).lines().count(), 6);

    let cfg = base.join("starved.cfg");
    fs::write(&cfg, "certify_iterations = 1\n").unwrap();
    let o = pcfheight(&["enumerate", "--degree", "2", "--strict", "--config", cfg.to_str().unwrap(), "--out", out]);
    assert_eq!(o.status.code(), Some(4));
    fs::write(&cfg, "primes = 2, 4\n").unwrap();
    let o = pcfheight(&["enumerate", "--config", cfg.to_str().unwrap(), "--out", out]);
    assert_eq!(o.status.code(), Some(2));
    fs::remove_dir_all(&base).unwrap();
}

#[test]
fn family_scan_csv() {
    let o = pcfheight(&["family-scan", "--family", "unicritical", "--degree", "3", "--c-list", "10,1000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("c,h_c_lo"));
    assert!(lines[2].ends_with(",2/3,ok"));

    let o = pcfheight(&["family-scan", "--family", "superattracting", "--c-list", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);

    assert_eq!(pcfheight(&["family-scan", "--family", "cubic"]).status.code(), Some(2));
}

#[test]
fn precision_comes_from_the_environment() {
    let run = |prec: &str| {
        Command::new(env!("CARGO_BIN_EXE_pcfheight"))
            .args(["--format", "json", "height", "z^2 + 1", "1/3"])
            .env("PCFHEIGHT_PRECISION", prec)
            .output()
            .unwrap()
    };
    let width = |o: &Output| {
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["value"].clone()
    };
    let (coarse, fine) = (run("32"), run("256"));
    assert_eq!(coarse.status.code(), Some(0));
    assert_ne!(width(&coarse), width(&fine));
    assert_eq!(run("8").status.code(), Some(2));
}
