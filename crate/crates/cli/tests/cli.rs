use std::io::Write;
use std::process::{Command, Output, Stdio};

use nrhw_cli::Report;

fn nrhw(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nrhw"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn example(args: &[&str]) -> String {
    let o = nrhw(args, None);
    assert!(o.status.success());
    stdout(&o)
}

fn json_report(args: &[&str], stdin: &str) -> (Report, String, i32) {
    let o = nrhw(args, Some(stdin));
    let s = stdout(&o);
    (Report::from_json(&s).unwrap(), s, o.status.code().unwrap())
}

#[test]
fn split_ramified_quadratic_prime() {
    let spec = example(&["examples", "quadratic", "-d", "2"]);
    let (r, _, code) = json_report(&["split", "-", "-p", "2", "--json"], &spec);
    assert_eq!(code, 0);
    assert_eq!(r.primes.len(), 1);
    assert_eq!((r.primes[0].e, r.primes[0].inertia_order), (2, 2));
}

#[test]
fn bgg_cartan_matrix() {
    let spec = example(&["examples", "quadratic", "-d", "2"]);
    let (r, _, code) = json_report(&["bgg", "-", "-p", "2", "--json"], &spec);
    assert_eq!(code, 0);
    assert_eq!(r.primes[0].c, Some(vec![vec![2, 1], vec![1, 1]]));
    assert!(r.primes[0].verdicts.iter().any(|v| v.name.starts_with("reciprocity") && v.pass));
}

#[test]
fn semisimplicity_sweep() {
    let spec = example(&["examples", "quadratic", "-d", "2"]);
    let (r, _, code) = json_report(&["verify", "-", "--primes", "2..50", "--suite", "semisimplicity", "--json"], &spec);
    assert_eq!(code, 0);
    assert!(r.passed());
    let pairs: Vec<(u64, usize, Option<bool>)> = r.primes.iter().map(|p| (p.p, p.e, p.semisimple)).collect();
    assert_eq!(pairs[0], (2, 2, Some(false)));
    assert!(pairs[1..].iter().all(|&(_, e, s)| e == 1 && s == Some(true)));
    assert_eq!(r.suite.unwrap().failed, 0);
}

#[test]
fn full_suite_on_gaussian_integers() {
    let spec = example(&["examples", "quadratic", "-d", "-1"]);
    let (r, _, code) = json_report(&["verify", "-", "--primes", "2..13", "--json"], &spec);
    assert_eq!(code, 0, "{r:?}");
    assert!(r.verdicts.iter().any(|v| v.name == "split sequence is sheaf exact" && v.pass));
}

#[test]
fn json_round_trip_is_byte_identical() {
    let spec = example(&["examples", "cyclotomic", "-n", "5"]);
    let (r, s, _) = json_report(&["bgg", "-", "-p", "5", "--json"], &spec);
    assert_eq!(format!("{}\n", r.to_json()), s);
    assert_eq!(r.primes[0].c.as_ref().unwrap()[0], vec![4, 3, 2, 1]);
}

#[test]
fn reports_are_deterministic() {
    let spec = example(&["examples", "cyclotomic", "-n", "5"]);
    let a = nrhw(&["verify", "-", "--primes", "2..20", "--json"], Some(&spec));
    let b = nrhw(&["verify", "-", "--primes", "2..20", "--json"], Some(&spec));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn order_override_changes_sheaf_ordering() {
    let spec = example(&["examples", "quadratic", "-d", "2"]);
    let (r, _, code) = json_report(&["field", "check", "-", "--order", "2,1", "--json"], &spec);
    assert_eq!(code, 0);
    assert_eq!(r.field.order, vec![2, 1]);
}

#[test]
fn malformed_spec_has_location() {
    let o = nrhw(&["split", "-", "-p", "2"], Some("{\"name\": \"x\",\n  \"f\": [1, oops]}"));
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("<stdin>:2:"), "{err}");
}

#[test]
fn invalid_galois_data_is_rejected() {
    let o = nrhw(&["field", "check", "-"], Some(r#"{"name": "bad", "f": [-2, 0, 1], "sigmas": [[0, 1], [1, 1]]}"#));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_maximal_order_fails_with_certificate() {
    let spec = r#"{"name": "Z[sqrt5]", "f": [-5, 0, 1], "sigmas": [[0, 1], [0, -1]]}"#;
    let o = nrhw(&["split", "-", "-p", "2"], Some(spec));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("not maximal"));
    let o = nrhw(&["split", "-", "-p", "3"], Some(spec));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn text_output_ends_with_status() {
    let spec = example(&["examples", "quadratic", "-d", "3"]);
    let o = nrhw(&["algebra", "-", "-p", "3"], Some(&spec));
    assert!(o.status.success());
    assert!(stdout(&o).lines().last().unwrap().starts_with("PASS"));
}
