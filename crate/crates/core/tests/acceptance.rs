//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Runtime limits are wall-clock on one thread.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use engel_fit::corpus::{builtin, small_std};
use engel_fit::engel::{j_set, AutomorphismMap};
use engel_fit::report::{SuiteRecord, VerdictReport};
use engel_fit::suites::{run_suite, SuiteConfig, SuiteId, EXHAUSTIVE_ORDER_CAP};
use engel_fit::{Analyzer, Permutation, DEFAULT_ELEMENT_CAP};

const EXTREMAL_LIMIT: Duration = Duration::from_secs(30);
const THM_E_LIMIT: Duration = Duration::from_secs(5 * 60);
const THM_11_12_LIMIT: Duration = Duration::from_secs(15 * 60);
const THM_13_LIMIT: Duration = Duration::from_secs(10 * 60);

struct Outcome {
    failures: usize,
}

impl Outcome {
    fn line(&mut self, id: &str, ok: bool, detail: String) {
        if !ok {
            self.failures += 1;
        }
        println!("{} {id}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn config(suite: SuiteId, jobs: usize, timing: bool) -> SuiteConfig {
    SuiteConfig {
        suite,
        corpus: "builtin:small-std".into(),
        jobs,
        timing,
        ..SuiteConfig::default()
    }
}

fn elapsed(report: &VerdictReport, suite: &str) -> Duration {
    let ms = report
        .timing_ms
        .as_ref()
        .and_then(|t| t.iter().find(|(s, _)| s == suite))
        .map_or(0, |(_, ms)| *ms);
    Duration::from_millis(ms)
}

fn clean(s: &SuiteRecord) -> bool {
    s.violations.is_empty() && s.resource_hits.is_empty() && s.cases > 0 && s.passes == s.cases
}

fn summary(s: &SuiteRecord) -> String {
    format!(
        "{} cases, {} violations, {} resource hits",
        s.cases,
        s.violations.len(),
        s.resource_hits.len()
    )
}

fn extremal(out: &mut Outcome) {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 5..=7usize {
        let factorial: usize = (1..=n - 2).product();
        let g = builtin(&format!("alternating({n})"), DEFAULT_ELEMENT_CAP).unwrap().group;
        let alpha = AutomorphismMap::inner(&g, &Permutation::parse("(1 2)", n).unwrap()).unwrap();
        let report = j_set(&alpha).unwrap();
        let (j, c) = (report.j_len(), report.fixed_points.order());
        ok &= j == 2 * n - 3 && c == factorial;
        rows.push(format!("A{n}: |J| = {j} (want {}), |C| = {c} (want {factorial})", 2 * n - 3));
    }
    let t = start.elapsed();
    ok &= t < EXTREMAL_LIMIT;
    out.line("1 extremal A_n", ok, format!("{}; {:.2?} < {:?}", rows.join("; "), t, EXTREMAL_LIMIT));
}

fn main() -> ExitCode {
    let mut out = Outcome { failures: 0 };
    extremal(&mut out);

    let report = run_suite(&config(SuiteId::All, 1, true)).expect("small-std loads");
    let suite = |id: &str| report.suite(id).expect("suite ran");

    let s = suite("thmE");
    let t = elapsed(&report, "thmE");
    out.line("2 thmE", clean(s) && t < THM_E_LIMIT, format!("{}; {:.2?} < {:?}", summary(s), t, THM_E_LIMIT));

    let s = suite("thmJ");
    let a5 = s.notes.iter().any(|n| n.starts_with("alternating(5) / inner_12: |J| = 7"));
    out.line("3 thmJ", clean(s) && a5, format!("{}; alternating(5) with inner (1 2) recorded |J| = 7: {a5}", summary(s)));

    let (s11, s12) = (suite("thm11"), suite("thm12"));
    let t = elapsed(&report, "thm11") + elapsed(&report, "thm12");
    let entries = small_std(DEFAULT_ELEMENT_CAP).unwrap();
    let analyzer = Analyzer::default();
    let mut heights = std::collections::BTreeSet::new();
    let mut lengths = std::collections::BTreeSet::new();
    let mut expected_11 = 0u64;
    let mut expected_12 = 0u64;
    for e in &entries {
        let h = analyzer.gen_fitting_height(&e.group).unwrap();
        let l = analyzer.insoluble_length(&e.group).unwrap();
        heights.insert(h);
        lengths.insert(l);
        let xs = if e.group.order() <= EXHAUSTIVE_ORDER_CAP {
            e.group.order()
        } else {
            e.group.conjugacy_classes().len()
        } as u64;
        expected_11 += xs * (h as u64 + 1);
        expected_12 += xs * (l as u64 + 1);
    }
    let exhaustive = s11.cases == expected_11 && s12.cases == expected_12;
    out.line(
        "4 thm11+thm12",
        clean(s11) && clean(s12) && exhaustive && t < THM_11_12_LIMIT,
        format!(
            "thm11 {}; thm12 {}; every x for |G| <= {EXHAUSTIVE_ORDER_CAP} (cases {}/{} and {}/{}); h* in {:?}, lambda in {:?}; {:.2?} < {:?}",
            summary(s11),
            summary(s12),
            s11.cases,
            expected_11,
            s12.cases,
            expected_12,
            heights,
            lengths,
            t,
            THM_11_12_LIMIT
        ),
    );

    let s = suite("cor15");
    let expected: u64 = entries
        .iter()
        .map(|e| if e.group.order() <= EXHAUSTIVE_ORDER_CAP { e.group.order() } else { e.group.conjugacy_classes().len() } as u64)
        .sum();
    out.line("5 cor15", clean(s) && s.cases == expected, format!("{}; {} element cases expected", summary(s), expected));

    let s = suite("baer");
    let all: u64 = entries.iter().map(|e| e.group.order() as u64).sum();
    out.line("6 baer", clean(s) && s.cases == all, format!("{}; all {all} elements of small-std", summary(s)));

    let s = suite("thm13");
    let t = elapsed(&report, "thm13");
    let lattice_groups = entries.iter().filter(|e| e.group.order() <= 360).count();
    let covered = s.notes.iter().filter(|n| n.contains(" subgroups, ")).count();
    out.line(
        "7 thm13",
        clean(s) && covered == lattice_groups && t < THM_13_LIMIT,
        format!("{}; {covered}/{lattice_groups} groups of order <= 360 with full lattices; {:.2?} < {:?}", summary(s), t, THM_13_LIMIT),
    );

    let s = suite("cor19");
    out.line("8 cor19", clean(s), summary(s));

    let s = suite("lem31");
    out.line("9 lem31", clean(s), summary(s));

    let s = suite("engine-crosschecks");
    let known = |n: &str| builtin(n, DEFAULT_ELEMENT_CAP).unwrap().group;
    let (s4, s5) = (known("symmetric(4)"), known("symmetric(5)"));
    let f_s4 = analyzer.fitting_subgroup(&s4).unwrap();
    let v4 = s4.subgroup_from_cycles(&["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
    let fs_s5 = analyzer.generalized_fitting(&s5).unwrap();
    let a5 = s5.whole().derived_subgroup();
    let values = f_s4.same_members(&v4)
        && fs_s5.same_members(&a5)
        && a5.order() == 60
        && analyzer.gen_fitting_height(&s4).unwrap() == 3
        && analyzer.insoluble_length(&s5).unwrap() == 1
        && analyzer.normal_lattice(&s4).unwrap().len() == 4;
    out.line(
        "10 engine cross-checks",
        clean(s) && values,
        format!("{}; F(S4) = V4, F*(S5) = A5, h*(S4) = 3, lambda(S5) = 1, 4 normal subgroups in S4: {values}", summary(s)),
    );

    let mut timed = report.clone();
    timed.timing_ms = None;
    let first = timed.to_json();
    let second = run_suite(&config(SuiteId::All, 1, false)).unwrap().to_json();
    let parallel = run_suite(&config(SuiteId::All, 4, false)).unwrap().to_json();
    let same = first == second && first == parallel;
    out.line(
        "11 determinism",
        same && report.exit_code() == 0,
        format!("3 runs of all on small-std (jobs 1, 1, 4), {} bytes each, identical: {same}", first.len()),
    );

    if out.failures == 0 {
        println!("acceptance: all 11 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria fail", out.failures);
        ExitCode::FAILURE
    }
}
