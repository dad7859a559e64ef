use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str], script: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_divlift"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(script.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const BRIDGE: &str = "ring N=2 p=5
ideal m: x1, x2
tower T: blowup chart=0 point=(0,0)
bridge T m
";

#[test]
fn bridge_golden_line() {
    let (code, out, _) = run(&[], BRIDGE);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "k_E=1 k_F=3 shift_ok=true v_ok=true"), "{out}");
}

#[test]
fn output_is_deterministic() {
    assert_eq!(run(&[], BRIDGE), run(&[], BRIDGE));
    assert_eq!(run(&["--format", "json"], BRIDGE), run(&["--format", "json"], BRIDGE));
}

#[test]
fn json_output_parses() {
    let (code, out, _) = run(&["--format", "json"], BRIDGE);
    assert_eq!(code, 0);
    assert!(out.contains("\"k_F\": 3"), "{out}");
}

#[test]
fn lct_of_the_maximal_ideal() {
    let (code, out, _) = run(&[], "ring N=2 Q\nideal m: x1, x2\nlct m\n");
    assert_eq!(code, 0);
    assert!(out.contains("lct_estimate=2/1 m=1"), "{out}");
}

#[test]
fn no_admissible_point_exits_with_resource_code() {
    let script = "ring N=2 p=2
ideal a: x1*x2 + x2^2
tower T: blowup chart=0 point=(0,0)
bridge T a
";
    let (code, _, err) = run(&[], script);
    assert_eq!(code, 3);
    assert!(err.contains("GeneralPointNotFound"), "{err}");
}

#[test]
fn perturbed_lift_exits_with_check_code() {
    let script = "ring N=2 p=5
ideal m: x1, x2
tower T: blowup chart=0 point=(0,0)
verifylift T m = x1, x2
verifylift T m = x1 + x1^5*x2, x2
";
    let (code, out, err) = run(&[], script);
    assert_eq!(code, 1);
    assert!(out.contains("verified=true"), "{out}");
    assert!(err.contains("BridgeIdentityFailed"), "{err}");
}

#[test]
fn syntax_error_exits_with_input_code() {
    let (code, _, err) = run(&[], "ring N=2 p=5\nideal a: x1 + x3\n");
    assert_eq!(code, 2);
    assert!(err.contains("SyntaxError at 2:"), "{err}");
}
