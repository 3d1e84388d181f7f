use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use engel_fit::report::VerdictReport;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_engel-verify"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn read(path: &Path) -> VerdictReport {
    VerdictReport::from_json(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn passing_suite_exits_zero_and_names_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--suite", "baer", "--corpus", "builtin:symmetric(3)"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read(&dir.path().join("symmetric_3_-baer-report.json"));
    let baer = report.suite("baer").unwrap();
    assert_eq!((baer.cases, baer.passes), (6, 6));
    assert!(baer.statement.contains("F(G)"));
}

#[test]
fn injected_fault_exits_one_with_payload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(
        dir.path(),
        &["--suite", "baer", "--corpus", "builtin:symmetric(4)", "--inject-fault", "trivial-fitting", "--report", path.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(1));
    let report = read(&path);
    let v = &report.suite("baer").unwrap().violations;
    // the three nontrivial elements of V_4
    assert_eq!(v.len(), 3);
    for violation in v {
        assert_eq!(violation.group, "symmetric(4)");
        assert_eq!(violation.k, Some(2));
        assert!(violation.subject.contains(")("), "{}", violation.subject);
        assert!(violation.lhs.contains("{1}") && violation.rhs.contains("false"));
    }
}

#[test]
fn resource_cap_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(dir.path(), &["--suite", "cor15", "--corpus", "builtin:symmetric(4)", "--k-cap", "1", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report = read(&path);
    assert!(report.violation_count() == 0);
    assert!(!report.suite("cor15").unwrap().resource_hits.is_empty());
}

#[test]
fn usage_errors_do_not_collide_with_resource_code() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["--suite", "thm99"]).status.code(), Some(3));
    assert_eq!(run(dir.path(), &["--crosschecks", "maybe"]).status.code(), Some(3));
    assert_eq!(run(dir.path(), &["--jobs", "0", "--suite", "baer", "--corpus", "builtin:cyclic(2)"]).status.code(), Some(3));
    assert_eq!(run(dir.path(), &["--corpus", "/nonexistent/dir"]).status.code(), Some(3));
    assert_eq!(run(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn max_order_skips_groups() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(dir.path(), &["--suite", "thm11", "--corpus", "builtin:symmetric(3);symmetric(5)", "--max-order", "100", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = read(&path);
    assert!(report.groups.iter().any(|g| g.name == "symmetric(5)" && g.skipped));
    assert!(report.suite("thm11").unwrap().notes.iter().any(|n| n.contains("above max order")));
}

#[test]
fn analyze_writes_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    let out = run(dir.path(), &["--analyze", "--engel", "--corpus", "builtin:symmetric(4);symmetric(5);cyclic(7)", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = read(&path);
    let p = |n: &str| report.groups.iter().find(|g| g.name == n).unwrap().profile.clone().unwrap();
    let s4 = p("symmetric(4)");
    assert_eq!((s4.fitting, s4.gen_fitting, s4.gen_fitting_height, s4.insoluble_length), (4, 4, 3, 0));
    assert_eq!(s4.engel.len(), 5);
    let s5 = p("symmetric(5)");
    assert_eq!((s5.fitting, s5.gen_fitting, s5.gen_fitting_height, s5.insoluble_length), (1, 60, 2, 1));
    let c7 = p("cyclic(7)");
    assert_eq!((c7.fitting, c7.gen_fitting_height, c7.insoluble_length), (7, 1, 0));
}

#[test]
fn reports_are_identical_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = "builtin:symmetric(4);sl2(3);alternating(5);dihedral(6)";
    let mut texts = Vec::new();
    for (i, jobs) in ["1", "3", "1"].iter().enumerate() {
        let path = dir.path().join(format!("r{i}.json"));
        let out = run(dir.path(), &["--corpus", corpus, "--jobs", jobs, "--report", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        texts.push(fs::read(&path).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    assert_eq!(texts[0], texts[2]);
}

#[test]
fn crosschecks_switch() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--suite", "engine-crosschecks", "--corpus", "builtin:symmetric(4)", "--crosschecks", "off"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("symmetric_4_-engine-crosschecks-report.json").exists());
}
