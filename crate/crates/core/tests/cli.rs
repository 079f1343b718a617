use std::process::Command;

fn rmcoset(args: &[&str], out: &std::path::Path) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_rmcoset"))
        .args(args)
        .env("RMCOSET_OUT", out)
        .output()
        .unwrap();
    (
        o.status.code().unwrap(),
        String::from_utf8_lossy(&o.stdout).into_owned(),
    )
}

#[test]
fn count_both_methods_agree() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = rmcoset(&["count", "--m", "4"], dir.path());
    assert_eq!(code, 0);
    assert!(out.contains("# agreement 15 cells"));
    assert!(out.contains("\n0 4 4 32\n"));
    let manifest = std::fs::read_to_string(dir.path().join("count.manifest")).unwrap();
    assert!(manifest.contains("subcommand=count\n"));
    assert!(manifest.contains("result=count.txt\n"));
}

#[test]
fn classify_writes_levels_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = rmcoset(
        &["classify", "--m", "7", "--s", "5", "--t", "7"],
        dir.path(),
    );
    assert_eq!(code, 0);
    assert!(out.contains("B(5,7,7): 12 classes"));
    let first = std::fs::read_to_string(dir.path().join("b_5_7_7.txt")).unwrap();
    assert_eq!(first.lines().filter(|l| !l.starts_with('#')).count(), 12);
    let (code, _) = rmcoset(
        &["classify", "--m", "7", "--s", "5", "--t", "7", "--resume"],
        dir.path(),
    );
    assert_eq!(code, 0);
    assert_eq!(
        std::fs::read_to_string(dir.path().join("b_5_7_7.txt")).unwrap(),
        first
    );

    let (code, out) = rmcoset(
        &[
            "stab-hist",
            "--m",
            "7",
            "--reps",
            dir.path().join("b_5_7_7.txt").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 12);
}

#[test]
fn distance_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "distance",
        "--m",
        "5",
        "--r",
        "2",
        "--t",
        "3",
        "--threshold",
        "6",
        "--seed",
        "3",
    ];
    let (code, a) = rmcoset(&args, dir.path());
    assert_eq!(code, 0);
    assert!(a.contains("covering radius of RM(2,5)"));
    assert_eq!(rmcoset(&args, dir.path()).1, a);
    let (code, _) = rmcoset(
        &["distance", "--m", "5", "--r", "2", "--threshold", "6"],
        dir.path(),
    );
    assert_eq!(code, 2, "seed is mandatory");
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        rmcoset(&["count", "--m", "5", "--method", "burnside"], dir.path()).0,
        4
    );
    assert_eq!(
        rmcoset(
            &["classify", "--m", "5", "--s", "4", "--t", "2"],
            dir.path()
        )
        .0,
        2
    );
    assert_eq!(rmcoset(&["nearbent", "--m", "4"], dir.path()).0, 2);
    assert_eq!(
        rmcoset(
            &["classify", "--m", "7", "--s", "4", "--t", "4"],
            dir.path()
        )
        .0,
        4
    );
}

#[test]
fn nearbent_and_dual_check() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = rmcoset(&["nearbent", "--m", "5"], dir.path());
    assert_eq!(code, 0);
    assert!(out.ends_with("total 14054656\n"));
    let (code, out) = rmcoset(&["dual-check", "--m", "5"], dir.path());
    assert_eq!(code, 0);
    assert!(out.contains("12 pairs checked, 0 violations"));
}
