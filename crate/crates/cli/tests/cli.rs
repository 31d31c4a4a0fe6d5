//! End-to-end checks of the command surface: output shapes, exit codes, and
//! round-tripping of the canonical serializations through the JSON output.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_indexform"))
}

#[test]
fn usage_errors_exit_two() {
    let out = bin().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["family", "--primes", "7", "--sign", "+", "--X", "1000"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "7 ≡ 1 mod 3 must be rejected");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("≡ 2 mod 3"), "violated invariant named: {err}");
}

#[test]
fn classgroup_output() {
    let out = bin().args(["classgroup", "--", "-23"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.trim(),
        "-23; 3; divisors 3; forms: (1,1,6);(2,-1,3);(2,1,3)"
    );
}

#[test]
fn local_certificate_and_depth_limit() {
    let out = bin()
        .args(["local", "--form", "4:1,0,0,0,1", "--p", "5", "--eps", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("certified\t"), "{text}");
    // an impossible target at shallow depth renders the depth-limited verdict
    let out = bin()
        .args(["local", "--form", "3:5,0,0,5", "--p", "5", "--eps", "1", "--depth", "1"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("(depth-limited)"),
        "depth-limited verdicts must be labeled: {text}"
    );
}

#[test]
fn family_tsv_shape() {
    let out = bin()
        .args(["family", "--primes", "2", "--sign", "+", "--X", "10^6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "D\td\tfield_disc\th\tthree_torsion\ttag\tprime_class_is_cube"
    );
    let first = lines.next().unwrap();
    assert!(first.starts_with("22356\t-23\t"), "{first}");
}

#[test]
fn json_round_trips_canonical_serializations() {
    let out = bin()
        .args(["enumerate", "--format", "json", "--", "22356"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 3);
    for f in v["forms"].as_array().unwrap() {
        let parsed: indexform::forms::BinaryForm = f.as_str().unwrap().parse().unwrap();
        assert_eq!(parsed.to_string(), f.as_str().unwrap());
        assert_eq!(
            parsed.discriminant().unwrap(),
            num_bigint::BigInt::from(22356)
        );
    }
}

#[test]
fn count_and_report_density() {
    let out = bin()
        .args(["count", "--d", "-23", "--f", "6", "--primes", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("-23\t6\t3\t6\t0"), "{text}");
    let out = bin()
        .args([
            "report", "density", "--primes", "2", "--sign", "-", "--truncation", "1000",
            "--format", "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["predicted_exact"]["field_count_ratio"]["num"], "6");
}

#[test]
fn catalogue_grid() {
    let out = bin().arg("catalogue").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("v2(Disc)=4"));
    assert_eq!(text.matches("attained").count(), 12);
}

#[test]
fn seeded_identity_runs_are_identical() {
    let run = || {
        bin()
            .args(["verify-identities", "--seed", "7", "--samples", "40"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
