//! End-to-end tests of the binary: golden outputs, exit codes, cache
//! behavior, and byte determinism.

use std::process::{Command, Output};

fn weylsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylsep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn enumerate_b2_tsv_golden() {
    let out = weylsep(&["enumerate", "--type", "B", "--rank", "2", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "0\t\t\n\
         1\t1\t1\n\
         1\t2\t0\n\
         2\t2 1\t1,2\n\
         2\t1 2\t0,3\n\
         3\t1 2 1\t1,2,3\n\
         3\t2 1 2\t0,2,3\n\
         4\t1 2 1 2\t0,1,2,3\n"
    );
}

#[test]
fn enumerate_f4_streams_the_whole_group() {
    let out = weylsep(&["enumerate", "--type", "F", "--rank", "4", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1152);
}

#[test]
fn enumerate_text_format_adds_a_header() {
    let out = weylsep(&["enumerate", "--type", "A", "--rank", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "length\tword\tinversions\n0\t\t\n1\t1\t0\n");
}

#[test]
fn enumerate_e8_is_refused_with_exit_3() {
    let out = weylsep(&["enumerate", "--type", "E", "--rank", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("computationally infeasible"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn enumerate_e7_needs_the_override() {
    let out = weylsep(&["enumerate", "--type", "E", "--rank", "7"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("E7"));
}

#[test]
fn max_elements_flag_tightens_the_guard() {
    let out = weylsep(&[
        "enumerate",
        "--type",
        "B",
        "--rank",
        "3",
        "--max-elements",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_oneline_3142_reports_the_pattern() {
    let out = weylsep(&["check", "--type", "A", "--rank", "3", "--oneline", "3142"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "non-separable; pattern A3:3142 at the identity embedding\n"
    );
}

#[test]
fn check_b2_word_1_reports_the_pivot_certificate() {
    let out = weylsep(&["check", "--type", "B", "--rank", "2", "--word", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "separable; pivot α2 (empty side) → leaf (inverted)\n"
    );
}

#[test]
fn check_answers_are_data_not_errors() {
    // Both verdicts exit 0.
    let yes = weylsep(&["check", "--type", "A", "--rank", "3", "--oneline", "1234"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).starts_with("separable"));
    let no = weylsep(&["check", "--type", "A", "--rank", "3", "--oneline", "2413"]);
    assert_eq!(no.status.code(), Some(0));
    assert!(stdout(&no).starts_with("non-separable"));
}

#[test]
fn check_json_contains_the_certificate() {
    let out = weylsep(&[
        "check", "--type", "B", "--rank", "2", "--word", "1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["separable"], true);
    assert_eq!(v["certificate"]["kind"], "pivot");
}

#[test]
fn check_rejects_non_biconvex_inversions() {
    let out = weylsep(&[
        "check",
        "--type",
        "A",
        "--rank",
        "3",
        "--inversions",
        "0,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not biconvex"));
}

#[test]
fn check_needs_exactly_one_element_spec() {
    let none = weylsep(&["check", "--type", "A", "--rank", "3"]);
    assert_eq!(none.status.code(), Some(2));
    let two = weylsep(&[
        "check", "--type", "A", "--rank", "3", "--word", "1", "--oneline", "2134",
    ]);
    assert_eq!(two.status.code(), Some(2));
}

#[test]
fn check_oneline_outside_type_a_is_a_usage_error() {
    let out = weylsep(&["check", "--type", "B", "--rank", "2", "--oneline", "21"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_word_letters_are_one_based() {
    let out = weylsep(&["check", "--type", "B", "--rank", "2", "--word", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = weylsep(&["check", "--type", "B", "--rank", "2", "--word", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_main_g2_passes() {
    let out = weylsep(&["verify", "main", "--type", "G", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "main on G2: pass (6 cases)\n");
}

#[test]
fn verify_all_b2_runs_every_applicable_sweep() {
    let out = weylsep(&["verify", "all", "--type", "B", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for claim in ["main", "patterns", "fibers", "w0j", "symmetry", "colors-hat-pair"] {
        assert!(text.contains(claim), "missing {claim} in:\n{text}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_decomposition_rejects_type_b() {
    let out = weylsep(&["verify", "decomposition", "--type", "B", "--rank", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_permissive_decomposition_exits_1_on_type_a() {
    let out = weylsep(&[
        "verify",
        "decomposition",
        "--type",
        "A",
        "--rank",
        "3",
        "--permissive",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn verify_colors_needs_an_applicable_type() {
    let out = weylsep(&["verify", "colors", "--type", "F", "--rank", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn patterns_derive_rank_2_golden() {
    let out = weylsep(&["patterns", "derive", "--max-rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "B2:len2a\nB2:len2b\nG2:len2a\nG2:len2b\nG2:len3a\nG2:len3b\nG2:len4a\nG2:len4b\n"
    );
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = [
        "verify", "all", "--type", "B", "--rank", "2", "--format", "json",
    ];
    let a = weylsep(&args);
    let b = weylsep(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["enumerate", "--type", "G", "--rank", "2", "--format", "json"];
    let a = weylsep(&args);
    let b = weylsep(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_round_trip_reproduces_the_stream() {
    let dir = tempfile::tempdir().unwrap();
    let dir_str = dir.path().to_str().unwrap();
    let args = [
        "enumerate", "--type", "B", "--rank", "3", "--format", "tsv", "--cache-dir", dir_str,
    ];
    let first = weylsep(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(dir.path().join("B3.json").exists());
    let second = weylsep(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    // Without the cache the stream is the same bytes.
    let plain = weylsep(&["enumerate", "--type", "B", "--rank", "3", "--format", "tsv"]);
    assert_eq!(first.stdout, plain.stdout);
}

#[test]
fn damaged_cache_is_regenerated() {
    let dir = tempfile::tempdir().unwrap();
    let dir_str = dir.path().to_str().unwrap();
    // Seed, damage, re-run.
    let args = [
        "enumerate", "--type", "A", "--rank", "2", "--cache-dir", dir_str,
    ];
    let first = weylsep(&args);
    assert_eq!(first.status.code(), Some(0));
    let path = dir.path().join("A2.json");
    std::fs::write(&path, b"{\"version\":999}").unwrap();
    let second = weylsep(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(stderr(&second).contains("regenerating"));
}

#[test]
fn cache_env_var_is_the_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_weylsep"))
        .args(["cache", "warm", "--type", "B", "--rank", "2"])
        .env("WEYLSEP_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("B2.json").exists());
}

#[test]
fn cache_warm_path_clear_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let dir_str = dir.path().to_str().unwrap();
    let path_out = weylsep(&["cache", "path", "--type", "G", "--rank", "2", "--cache-dir", dir_str]);
    assert_eq!(path_out.status.code(), Some(0));
    let path = stdout(&path_out).trim().to_string();
    assert!(path.ends_with("G2.json"));

    let warm = weylsep(&["cache", "warm", "--type", "G", "--rank", "2", "--cache-dir", dir_str]);
    assert_eq!(warm.status.code(), Some(0));
    assert!(stdout(&warm).contains("12 elements"));
    assert!(std::path::Path::new(&path).exists());

    let clear = weylsep(&["cache", "clear", "--type", "G", "--rank", "2", "--cache-dir", dir_str]);
    assert_eq!(clear.status.code(), Some(0));
    assert!(!std::path::Path::new(&path).exists());
}

#[test]
fn cache_commands_need_a_directory() {
    let out = Command::new(env!("CARGO_BIN_EXE_weylsep"))
        .args(["cache", "warm", "--type", "B", "--rank", "2"])
        .env_remove("WEYLSEP_CACHE")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_family_letter_is_a_usage_error() {
    let out = weylsep(&["enumerate", "--type", "X", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = weylsep(&["enumerate", "--type", "D", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
