//! End-to-end tests of the `ccsolve` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use cc_cli::format;
use cc_core::solution::is_stable;

fn ccsolve(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccsolve"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &std::path::Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

const TRIANGLE_AAB: &str = "p cc 3 3 2 2\ne 0 0 1\ne 0 1 2\ne 1 0 2\n";
const RAINBOW_TRIANGLE: &str = "p cc 3 3 3 2\ne 0 0 1\ne 1 1 2\ne 2 0 2\n";

#[test]
fn solve_exit_codes_reflect_answers() {
    let dir = tempfile::tempdir().unwrap();
    let yes = write(dir.path(), "yes.cc", TRIANGLE_AAB);
    let no = write(dir.path(), "no.cc", RAINBOW_TRIANGLE);
    for algo in ["oracle", "vc", "branch-r", "exactcover", "xp", "secw-dp", "auto"] {
        let out = ccsolve(&["solve", yes.to_str().unwrap(), "--algo", algo], dir.path());
        assert_eq!(out.status.code(), Some(0), "{algo}: {out:?}");
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert!(stdout.contains("ANSWER YES"), "{algo}: {stdout}");

        let out = ccsolve(&["solve", no.to_str().unwrap(), "--algo", algo], dir.path());
        assert_eq!(out.status.code(), Some(1), "{algo}: {out:?}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("ANSWER NO"));
    }
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.cc", "p cc 3 1 2 1\ne zzz 0 1\n");
    let out = ccsolve(&["solve", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "{stderr}");
}

#[test]
fn forest_solver_rejects_cycles() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "tri.cc", TRIANGLE_AAB);
    let out = ccsolve(
        &["solve", path.to_str().unwrap(), "--algo", "forest"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_file_is_checkable() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "tri.cc", TRIANGLE_AAB);
    let out = ccsolve(
        &[
            "solve",
            path.to_str().unwrap(),
            "--algo",
            "vc",
            "--witness-out",
            "witness.sol",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("witness.sol")).unwrap();
    let witness = format::parse_solution(&text).unwrap();
    let inst = format::parse_instance(TRIANGLE_AAB).unwrap();
    assert_eq!(is_stable(&inst.graph, &witness), Ok(true));
    assert!(witness.len() >= inst.k);
}

#[test]
fn json_report_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "tri.cc", TRIANGLE_AAB);
    let out = ccsolve(
        &["solve", path.to_str().unwrap(), "--algo", "oracle", "--json"],
        dir.path(),
    );
    let value: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid json on stdout");
    assert_eq!(value["answer"], "YES");
    assert_eq!(value["optimum"], 2);
    assert_eq!(value["algorithm"], "oracle");
}

#[test]
fn generated_instances_roundtrip_through_solve() {
    let dir = tempfile::tempdir().unwrap();
    let out = ccsolve(
        &[
            "gen-random", "--n", "8", "--m", "10", "--colors", "3", "--seed", "7",
            "--planted", "3", "--out", "gen.cc",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    // Planted instances answer yes under every algorithm.
    let out = ccsolve(&["solve", "gen.cc", "--algo", "auto"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = ccsolve(&["solve", "gen.cc", "--algo", "colorcode", "--seed", "1"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn kernel_command_emits_log_and_reduced_instance() {
    let dir = tempfile::tempdir().unwrap();
    // Rainbow star: nothing fires, the instance survives reduced.
    let star = "p cc 5 4 4 3\ne 0 0 1\ne 1 0 2\ne 2 0 3\ne 3 0 4\n";
    let path = write(dir.path(), "star.cc", star);
    let out = ccsolve(
        &[
            "kernel",
            path.to_str().unwrap(),
            "--out",
            "reduced.cc",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("REDUCED"));
    let reduced = std::fs::read_to_string(dir.path().join("reduced.cc")).unwrap();
    let inst = format::parse_instance(&reduced).unwrap();
    assert_eq!(inst.k, 3);

    // A decided instance reports the rule and the witness size.
    let path = write(dir.path(), "tri.cc", TRIANGLE_AAB);
    let out = ccsolve(&["kernel", path.to_str().unwrap()], dir.path());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("DECIDED YES"), "{stdout}");
    assert!(stdout.contains("rule "), "{stdout}");
}

#[test]
fn bounds_command_lists_every_bound() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "tri.cc", RAINBOW_TRIANGLE);
    let out = ccsolve(&["bounds", path.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    for name in [
        "matching",
        "degree-bound",
        "capped-degree-bound",
        "lp-bound",
        "dual-certificate",
    ] {
        assert!(stdout.contains(name), "missing {name} in {stdout}");
    }
}

#[test]
fn crossvalidate_passes_and_warns_on_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = ccsolve(&["crossvalidate", "--instances", "30"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));

    let out = ccsolve(&["crossvalidate", "--instances", "0"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("WARNING"));
}

#[test]
fn provided_tree_and_matching_files_are_honored() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "tri.cc", TRIANGLE_AAB);
    // Path tree over the triangle.
    write(dir.path(), "layout.tree", "t 0\np 1 0\np 2 1\n");
    let out = ccsolve(
        &[
            "solve",
            path.to_str().unwrap(),
            "--algo",
            "secw-dp",
            "--tree",
            "layout.tree",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("OPTIMUM 2"));

    // An induced matching file: the single edge {1,2}.
    write(dir.path(), "matching.sol", "s 1\nf 1\n");
    let out = ccsolve(
        &[
            "solve",
            path.to_str().unwrap(),
            "--algo",
            "xp",
            "--induced-matching",
            "matching.sol",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // A non-induced matching file is rejected.
    write(dir.path(), "bad.sol", "s 2\nf 0\nf 1\n");
    let out = ccsolve(
        &[
            "solve",
            path.to_str().unwrap(),
            "--algo",
            "xp",
            "--induced-matching",
            "bad.sol",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generator_pipelines_agree_with_sources() {
    let dir = tempfile::tempdir().unwrap();
    // Unsatisfiable via forced clash: (x1 v x2)(x1 v -x2)(-x1).
    write(dir.path(), "unsat.cnf", "p cnf 2 3\n1 2 0\n1 -2 0\n-1 0\n");
    let out = ccsolve(&["gen-3sat", "unsat.cnf", "--out", "unsat.cc"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let out = ccsolve(&["solve", "unsat.cc", "--algo", "vc"], dir.path());
    assert_eq!(out.status.code(), Some(1), "unsat formula must map to a no");

    write(dir.path(), "sat.cnf", "p cnf 2 3\n1 2 0\n-1 2 0\n1 -2 0\n");
    let out = ccsolve(&["gen-3sat", "sat.cnf", "--out", "sat.cc"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = ccsolve(&["solve", "sat.cc", "--algo", "vc"], dir.path());
    assert_eq!(out.status.code(), Some(0), "sat formula must map to a yes");
}
