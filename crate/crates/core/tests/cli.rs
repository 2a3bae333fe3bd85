mod common;

use std::io::Write as _;
use std::process::{Command, Stdio};

use common::*;
use ramid::cli::{run, EXIT_FALSE, EXIT_OK, EXIT_USAGE};
use ramid::render::tuple_latex;
use ramid::{AnyIdentity, IdentityTuple};

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn ramid(args: &[&str], stdin: &str) -> Output {
    let mut argv = vec!["ramid"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], &str, i32)] = &[
        (&["verify", "2", "3", "7", "11", "19"], "", EXIT_OK),
        (&["verify", "--t", "2", "--A", "3", "--x", "7", "--y", "11", "--z", "19"], "", EXIT_OK),
        (&["verify", "2", "3", "7", "11", "20"], "", EXIT_FALSE),
        (&["verify", "15/16", "2", "9", "17", "-3"], "", EXIT_OK),
        (&["verify", "2", "1", "7", "11", "19"], "", EXIT_USAGE),
        (&["verify", "2", "3", "7", "11"], "", EXIT_USAGE),
        (&["verify", "2", "3", "7", "11", "x"], "", EXIT_USAGE),
        (&["verify", "--t", "2", "--A", "3"], "", EXIT_USAGE),
        (&["solve", "--t", "2", "--A", "3", "--z", "19", "--k", "1/6"], "", EXIT_OK),
        (&["solve", "--t", "2", "--A", "3", "--z", "19", "--k", "1"], "", EXIT_FALSE),
        (&["solve", "--t", "2", "--A", "3", "--z", "-1", "--k", "1"], "", EXIT_USAGE),
        (&["solve", "--t", "15/16", "--A", "2", "--z", "9", "--k", "-4/5"], "", EXIT_OK),
        (&["verify", "--t", "15/16", "--A", "-2", "--x", "9", "--y", "17", "--z", "-3"], "", EXIT_OK),
        (&["verify", "-15/16", "2", "9", "17", "-3"], "", EXIT_FALSE),
        (&["enumerate", "--class", "super-perfect", "--primes-only"], "", EXIT_OK),
        (&["enumerate", "--class", "imperfect"], "", EXIT_USAGE),
        (&["family", "rebak", "--a", "3"], "", EXIT_OK),
        (&["family", "rebak", "--a", "1"], "", EXIT_USAGE),
        (&["family", "rebak"], "", EXIT_USAGE),
        (&["family", "rebak", "--a", "3", "--k", "2"], "", EXIT_USAGE),
        (&["family", "nonesuch", "--a", "3"], "", EXIT_USAGE),
        (&["family", "long-identity", "--b", "5", "--n", "1", "--format", "latex"], "", EXIT_OK),
        (&["family", "long-identity", "--b", "2", "--n", "3"], "", EXIT_USAGE),
        (&["family", "surd-low", "--a", "-10", "--format", "text"], "", EXIT_OK),
        (&["discover", "--seed", "1", "--trials", "0", "--t", "2"], "", EXIT_USAGE),
        (&["discover", "--seed", "1", "--trials", "100", "--t", "2", "--A-range", "5:3"], "", EXIT_USAGE),
        (&["render", "--format", "latex"], r#"{"t":"2","A":"3","x":"7","y":"11","z":"19"}"#, EXIT_OK),
        (&["render", "--format", "latex"], r#"{"t":"2","A":"3","x":"7","y":"11","z":"20"}"#, EXIT_FALSE),
        (&["render", "--format", "latex", "--unchecked"], r#"{"t":"2","A":"3","x":"7","y":"11","z":"20"}"#, EXIT_OK),
        (&["render", "--format", "text"], "not json", EXIT_USAGE),
        (&["render", "--format", "text"], "", EXIT_USAGE),
        (&["bogus"], "", EXIT_USAGE),
        (&[], "", EXIT_USAGE),
    ];
    for (args, stdin, expected) in cases {
        let o = ramid(args, stdin);
        assert_eq!(o.code, *expected, "{args:?}: out={} err={}", o.out, o.err);
    }
}

#[test]
fn verify_prints_verdict_and_class() {
    let o = ramid(&["verify", "2", "3", "7", "11", "19"], "");
    let v = json(&o.out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["class"], "prime");
    assert_eq!(v["A"], "3");
    let o = ramid(&["verify", "2", "3", "7", "11", "20"], "");
    let v = json(&o.out);
    assert_eq!(v["verified"], false);
    assert!(v["class"].is_null());
}

#[test]
fn solve_reports_conditions_and_identity() {
    let o = ramid(&["solve", "--t", "2", "--A", "3", "--z", "19", "--k", "1/6"], "");
    let v = json(&o.out);
    assert_eq!(v["gamma"], "18");
    assert_eq!(v["beta"], "77");
    assert_eq!(v["roots"]["kind"], "rational");
    assert_eq!(v["conditions"]["right_side_nonnegative"], true);
    assert_eq!(v["identity"], json(r#"{"t":"2","A":"3","x":"7","y":"11","z":"19"}"#));
}

#[test]
fn enumerate_writes_lines_and_summary() {
    let dir = std::env::temp_dir().join(format!("ramid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("super.jsonl");
    let o = ramid(&["enumerate", "--class", "super-perfect", "--out", out.to_str().unwrap()], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    let lines: Vec<IdentityTuple> = std::fs::read_to_string(&out)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.iter().cloned().collect::<std::collections::BTreeSet<_>>(), golden_set());
    let summary = json(&std::fs::read_to_string(dir.join("super.jsonl.summary.json")).unwrap());
    assert_eq!(summary["count"], 39);
    assert_eq!(summary["class"], "super-perfect");
    assert!(summary["candidates_examined"].as_u64().unwrap() > 0);
    std::fs::remove_dir_all(&dir).unwrap();

    let o = ramid(&["enumerate", "--class", "super-perfect", "--primes-only"], "");
    assert_eq!(o.out.lines().count(), 3);
    assert_eq!(json(o.err.trim())["count"], 3);
}

#[test]
fn discover_output_is_reproducible() {
    let args = ["discover", "--seed", "9", "--trials", "4000", "--t", "2", "--z-range", "-30:30"];
    let first = ramid(&args, "");
    assert_eq!(first.code, EXIT_OK);
    assert_eq!(first.out, ramid(&args, "").out);
    for line in first.out.lines() {
        let v = json(line);
        assert!(v["class"].is_string(), "{line}");
    }
}

#[test]
fn golden_tuples_round_trip_through_render_json() {
    let input = std::fs::read_to_string(golden_path()).unwrap();
    let o = ramid(&["render", "--format", "json"], &input);
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    let back: Vec<IdentityTuple> = o.out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(back, golden_lines());
    // and the class survives
    assert!(o.out.lines().all(|l| json(l)["class"] == "super-perfect" || json(l)["class"] == "prime"));
}

#[test]
fn family_json_feeds_render() {
    for args in [
        &["family", "surd-high", "--a", "3"][..],
        &["family", "long-identity", "--b", "3", "--n", "2"],
        &["family", "general-infinite", "--k", "4"],
    ] {
        let fam = ramid(args, "");
        assert_eq!(fam.code, EXIT_OK, "{args:?}: {}", fam.err);
        let o = ramid(&["render", "--format", "latex"], &fam.out);
        assert_eq!(o.code, EXIT_OK, "{args:?}: {}", o.err);
        lint_latex(o.out.trim());
        let parsed: AnyIdentity = serde_json::from_str(&fam.out).unwrap();
        assert!(parsed.verify().unwrap());
    }
}

/// Structural checks on a rendered equation: balanced braces and
/// `\left`/`\right` pairs, one `=`, known control words only.
fn lint_latex(s: &str) {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            _ => {}
        }
        assert!(depth >= 0, "unbalanced braces in {s}");
    }
    assert_eq!(depth, 0, "unbalanced braces in {s}");
    assert_eq!(s.matches("\\left(").count(), s.matches("\\right)").count(), "{s}");
    assert_eq!(s.matches('=').count(), 1, "{s}");
    assert!(s.starts_with("\\sqrt{"), "{s}");
    let mut rest = s;
    while let Some(i) = rest.find('\\') {
        rest = &rest[i + 1..];
        let word: String = rest.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        assert!(["sqrt", "left", "right", "frac"].contains(&word.as_str()), "unknown \\{word} in {s}");
    }
}

#[test]
fn appendix_renders_lint_clean() {
    for id in golden_lines() {
        let s = tuple_latex(&id);
        lint_latex(&s);
        assert_eq!(s.matches("\\left(1 - ").count(), 4, "{s}");
        assert_eq!(s.matches("\\left(1 + ").count(), 3, "{s}");
    }
}

#[test]
fn binary_exit_codes_and_threads() {
    let bin = env!("CARGO_BIN_EXE_ramid");
    let status = |args: &[&str], threads: Option<&str>| {
        let mut cmd = Command::new(bin);
        cmd.args(args).stdout(Stdio::null()).stderr(Stdio::null());
        if let Some(n) = threads {
            cmd.env("RAMID_THREADS", n);
        }
        cmd.status().unwrap().code().unwrap()
    };
    assert_eq!(status(&["verify", "2", "3", "7", "11", "19"], None), 0);
    assert_eq!(status(&["verify", "2", "3", "7", "11", "18"], None), 1);
    assert_eq!(status(&["verify", "2", "3"], None), 2);
    assert_eq!(status(&["enumerate", "--class", "super-perfect"], Some("1")), 0);
    assert_eq!(status(&["enumerate", "--class", "super-perfect"], Some("zero")), 2);

    let mut child = Command::new(bin)
        .args(["render", "--format", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"t":"2","A":"3","x":"7","y":"11","z":"19"}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "sqrt(2 * (1 - 1/3^2) * (1 - 1/7^2) * (1 - 1/11^2) * (1 - 1/19^2)) = (1 + 1/7) * (1 + 1/11) * (1 + 1/19)"
    );
}
