use std::process::{Command, Output};

fn dirinfo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirinfo")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn body(o: &Output) -> Vec<String> {
    stdout(o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect()
}

#[test]
fn oracle_coupled_values() {
    let o = dirinfo(&["oracle", "coupled-bsc", "--alpha", "0.1", "--beta", "0.2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("# dirinfo "));
    assert!(out.contains("# source=coupled-bsc(alpha=0.1,beta=0.2)"));
    assert_eq!(body(&o), vec!["di=0.3578 rev=0.1048 mi=0.4626"]);
}

#[test]
fn oracle_other_values() {
    let o = dirinfo(&["oracle", "markov-bsc", "--p", "0.3", "--eps", "0.2", "--digits", "5"]);
    assert_eq!(body(&o), vec!["i_y_to_x=0.23611"]);
    let o = dirinfo(&["oracle", "binary-entropy", "--p", "0.25"]);
    assert_eq!(body(&o), vec!["h=0.8113"]);
    let o = dirinfo(&["oracle", "ctw-bound", "--n", "256"]);
    assert_eq!(body(&o), vec!["bound=6.0000"]);
    // alpha above 1/2 is outside the closed form's range
    assert_eq!(dirinfo(&["oracle", "coupled-bsc", "--alpha", "0.7"]).status.code(), Some(2));
}

#[test]
fn delay_scan_detects_isi_delay() {
    let o = dirinfo(&["delay-scan", "isi", "--delay", "2", "--depth", "6", "--n", "100000"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("# depth=6\n"));
    assert!(out.ends_with("# detected_delay=2\n"), "{out}");
    assert_eq!(body(&o)[0], "d,bits");
    assert_eq!(body(&o).len(), 7);
}

#[test]
fn causality_on_coupled_pair() {
    let o = dirinfo(&["causality", "coupled-bsc", "--n", "50000"]);
    assert!(o.status.success());
    let b = body(&o);
    assert_eq!(b[0], "di,reverse_di,mi,classification,tau,rho");
    assert!(b[1].contains(",x-causes-y,0.02,2"), "{}", b[1]);
}

#[test]
fn convergence_csv() {
    let o = dirinfo(&[
        "convergence", "markov-bsc", "--p", "0.3", "--eps", "0.2", "--depth", "3", "--n", "5000", "--seeds", "3",
    ]);
    assert!(o.status.success());
    let b = body(&o);
    assert_eq!(b[0], "method,seed,n,bits,analytic");
    // 4 methods x 3 seeds x grid {1000, 2000, 5000}
    assert_eq!(b.len(), 1 + 4 * 3 * 3);
    assert!(b[1].ends_with(",0.236113927"));
    assert!(stdout(&o).contains("# seeds=1,2,3\n"));
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["estimate", "coupled-bsc", "--n", "3000", "--seed", "9"];
    assert_eq!(dirinfo(&args).stdout, dirinfo(&args).stdout);
    let args = ["convergence", "iid", "--n", "2000", "--seeds", "2"];
    assert_eq!(dirinfo(&args).stdout, dirinfo(&args).stdout);
}

#[test]
fn simulate_then_estimate_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let (x, y) = (dir.path().join("x.csv"), dir.path().join("y.csv"));
    let (xs, ys) = (x.to_str().unwrap(), y.to_str().unwrap());
    let sim = dirinfo(&["simulate", "coupled-bsc", "--n", "4000", "--seed", "3", "--x-out", xs, "--y-out", ys]);
    assert!(sim.status.success());
    assert_eq!(body(&sim).len(), 4001);

    let from_files = dirinfo(&["estimate", "files", "--x", xs, "--y", ys, "--depth", "2"]);
    let direct = dirinfo(&["estimate", "coupled-bsc", "--n", "4000", "--seed", "3", "--depth", "2"]);
    assert!(from_files.status.success());
    assert_eq!(body(&from_files), body(&direct));
    assert_eq!(body(&direct)[0], "method,di,reverse_di,mi");
    assert_eq!(body(&direct).len(), 5);

    let trace = dirinfo(&["estimate", "files", "--x", xs, "--y", ys, "--depth", "2", "--method", "4", "--trace"]);
    let t = body(&trace);
    assert_eq!(t[0], "method,i,bits");
    assert_eq!(t.len(), 1 + 3998);
    assert!(t[1].starts_with("4,3,"));
}

#[test]
fn quantize_and_price_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    std::fs::write(&a, "date,close\n2021-01-04,100\n2021-01-05,102\n2021-01-06,101\n2021-01-07,101.5\n").unwrap();
    std::fs::write(&b, "2021-01-04,50\n2021-01-05,49\n2021-01-07,51\n").unwrap();
    let o = dirinfo(&["quantize", "--input", a.to_str().unwrap()]);
    assert_eq!(body(&o), vec!["date,symbol", "2021-01-05,2", "2021-01-06,0", "2021-01-07,1"]);
    let o = dirinfo(&["quantize", "--input", a.to_str().unwrap(), "--pair", b.to_str().unwrap()]);
    assert!(stdout(&o).contains("# dropped_input=1\n# dropped_pair=0\n"));
    assert_eq!(body(&o), vec!["date,x,y", "2021-01-05,2,0", "2021-01-07,1,2"]);

    let out = dir.path().join("q.csv");
    let o = dirinfo(&["quantize", "--input", a.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("2021-01-06,0"));
}

#[test]
fn exit_codes() {
    assert_eq!(dirinfo(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dirinfo(&["estimate", "markov-bsc", "--p", "2"]).status.code(), Some(2));
    assert_eq!(dirinfo(&["estimate", "markov-bsc", "--method", "5"]).status.code(), Some(2));
    assert_eq!(dirinfo(&["simulate", "files", "--x", "a", "--y", "b"]).status.code(), Some(2));
    let missing = dirinfo(&["estimate", "files", "--x", "/nonexistent/x.csv", "--y", "/nonexistent/y.csv"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "2021-01-04,100\n2021-01-04,90\n").unwrap();
    let o = dirinfo(&["quantize", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2021-01-04"));
    // too short for the requested depth
    assert_eq!(dirinfo(&["estimate", "iid", "--n", "3", "--depth", "5"]).status.code(), Some(1));
}

#[test]
fn help_marks_artifact_defaults() {
    for cmd in ["estimate", "delay-scan", "causality", "convergence", "quantize"] {
        let o = dirinfo(&[cmd, "--help"]);
        assert!(o.status.success());
        assert!(stdout(&o).contains("[artifact default"), "{cmd}");
    }
    let o = dirinfo(&["delay-scan", "isi", "--help"]);
    let h = stdout(&o);
    assert!(h.contains("[default: 0.1]") && h.contains("[artifact default]"), "{h}");
}
