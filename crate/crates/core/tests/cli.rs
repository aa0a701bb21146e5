use std::path::Path;
use std::process::Command;

use exw::cli::{run, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};
use exw::report::{Output, Report};

fn wcli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("wcli").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn char_prints_the_series() {
    let (code, out, _) = wcli(&["char", "universal", "G2", "--order", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "universal G2 principal: 1 + q^2 + q^3 + 2*q^4 + O(q^5)\n");
}

#[test]
fn central_charges() {
    for (args, c) in [
        (&["central-charge", "G2", "--p", "4", "--u", "17"][..], "-1420/17"),
        (&["central-charge", "E7", "E7a1", "--p", "18", "--u", "17"][..], "-1420/17"),
        (&["central-charge", "E8", "E8a1", "--p", "31", "--u", "27"][..], "-590/9"),
        (&["central-charge", "B3", "--p", "8", "--u", "7"][..], "-135/8"),
    ] {
        let (code, out, _) = wcli(args);
        assert_eq!(code, EXIT_OK);
        assert!(out.ends_with(&format!("c = {c}\n")), "{args:?}: {out}");
    }
}

#[test]
fn mismatch_exits_one() {
    let (code, out, _) = wcli(&["compare", "universal G2 principal", "boundary G2 principal u=17", "--order", "14"]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("mismatch at q^12: 33 vs 32"));
    let (code, out, _) =
        wcli(&["compare", "universal B3 principal", "principal B3 principal p=8 u=7", "--order", "14"]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("mismatch at q^8: 15 vs 14"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["char", "bogus", "G2"][..],
        &["char", "boundary", "G2"][..],
        &["central-charge", "Z9", "--p", "1", "--u", "1"][..],
        &["ope-solve", "f4-c14-13"][..],
        &["ope-solve", "nope"][..],
        &["frobnicate"][..],
        &["compare", "universal G2"][..],
    ] {
        let (code, _, err) = wcli(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = wcli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify-isomorphisms"));
}

#[test]
fn json_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, out, _) = wcli(&[
        "--format",
        "json",
        "--report",
        path.to_str().unwrap(),
        "compare",
        "boundary G2 principal u=17",
        "boundary E7 E7a1 u=17",
    ]);
    assert_eq!(code, EXIT_OK);
    let r = Report::from_json(&out).unwrap();
    assert_eq!(r, Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap());
    assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    assert!(r.all_passed());
    assert!(matches!(&r.outputs[0], Output::Comparison { result, .. } if result.is_equal()));
}

fn copy_tables(to: &Path) {
    let from = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    for entry in std::fs::read_dir(from).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, to.join(p.file_name().unwrap())).unwrap();
    }
}

#[test]
fn corrupted_golden_table_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    copy_tables(dir.path());
    let d = dir.path().to_str().unwrap();
    let (code, _, _) = wcli(&["verify-isomorphisms", "--skip-ope", "--golden-dir", d]);
    assert_eq!(code, EXIT_OK);

    let file = dir.path().join("near_boundary_e8_28.txt");
    let text = std::fs::read_to_string(&file).unwrap();
    std::fs::write(&file, text.replacen("+ 5*q^6 ", "+ 6*q^6 ", 1)).unwrap();
    let (code, out, _) = wcli(&["verify-isomorphisms", "--skip-ope", "--golden-dir", d]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(
        out.contains("[FAIL] near-boundary E8 E8a1 u=28 matches golden table near_boundary_e8_28: mismatch at q^6"),
        "{out}"
    );

    std::fs::write(&file, "series: 1 + q\n").unwrap();
    let (code, _, err) = wcli(&["verify-isomorphisms", "--skip-ope", "--golden-dir", d]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("spec:"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_wcli");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["grading", "E8", "E8a1"]), Some(EXIT_OK));
    assert_eq!(status(&["compare", "universal G2 principal", "boundary G2 principal u=17"]), Some(EXIT_MISMATCH));
    assert_eq!(status(&["grading", "E9"]), Some(EXIT_USAGE));
}
