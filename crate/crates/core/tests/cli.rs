use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chi18")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn discriminant_command() {
    let o = run(&["discr", data("fermat.quartic").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("discriminant: 18014398509481984/1"));
    let o = run(&["discr", data("singular.quartic").to_str().unwrap()]);
    assert!(stdout(&o).contains("smooth: false"));
}

#[test]
fn singular_input_exits_with_2() {
    let o = run(&["periods", data("singular.quartic").to_str().unwrap(), "--prec", "20"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["delta", "--quartic", data("singular.quartic").to_str().unwrap(), "--prec", "20"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn singular_omega_exits_with_3() {
    let tau = data("identity.tau");
    let o = run(&["delta", "--tau", tau.to_str().unwrap(), "--omega1", data("zero.omega").to_str().unwrap(), "--prec", "30"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn failed_scan_check_exits_with_4() {
    let o = run(&[
        "scan",
        "--conic",
        data("unit.conic").to_str().unwrap(),
        "--quartic",
        data("fermat.quartic").to_str().unwrap(),
        "--t",
        "1/2",
        "--prec",
        "25",
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("# degeneration scan"));
}

#[test]
fn chi18_and_delta_from_tau() {
    let tau = data("identity.tau");
    let o = run(&["chi18", "--tau", tau.to_str().unwrap(), "--prec", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("convention: classical") && out.contains("vanishing_nulls: 9"), "{out}");
    let o = run(&["chi18", "--tau", tau.to_str().unwrap(), "--prec", "30", "--paper-literal"]);
    assert!(stdout(&o).contains("convention: paper_literal"));

    let o = run(&["delta", "--tau", tau.to_str().unwrap(), "--omega1", data("unit.omega").to_str().unwrap(), "--prec", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: hyperelliptic_or_decomposable"));
}

#[test]
fn twist_round_trip() {
    let dir = std::env::temp_dir().join(format!("chi18-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let o = run(&["delta", "--quartic", data("fermat.quartic").to_str().unwrap(), "--prec", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let first = dir.join("fermat.report");
    std::fs::write(&first, &o.stdout).unwrap();

    let o = run(&["twist", "--report", first.to_str().unwrap(), "-D", "3"]);
    assert!(stdout(&o).contains("verdict: twisted_non_jacobian"));
    let second = dir.join("twisted.report");
    std::fs::write(&second, &o.stdout).unwrap();
    let o = run(&["twist", "--report", second.to_str().unwrap(), "-D", "3"]);
    assert!(stdout(&o).contains("verdict: jacobian"));

    let o = run(&["twist", "--report", first.to_str().unwrap(), "-D", "9"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["twist", "--report", first.to_str().unwrap(), "-D", "-1"]);
    assert!(stdout(&o).contains("twist: -1/1"));
}
