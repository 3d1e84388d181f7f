use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use engel_fit::corpus::selector_label;
use engel_fit::report::{default_report_name, write_report};
use engel_fit::suites::{analyze, run_suite, Fault, SuiteConfig, SuiteId, DEFAULT_MAX_ORDER};
use engel_fit::zipper::DEFAULT_LATTICE_MAX_ORDER;

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    TrivialFitting,
}

/// Check Engel-set and generalized Fitting statements over a group corpus.
#[derive(Parser)]
#[command(name = "engel-verify", version)]
struct Args {
    /// baer, thm11, thm12, thm13, thmE, cor15, thmJ, cor19, lem31, engine-crosschecks or all
    #[arg(long, default_value = "all")]
    suite: SuiteId,
    /// Directory of .grp files, a single file, builtin:small-std or builtin:<spec>;<spec>
    #[arg(long, default_value = "builtin:small-std")]
    corpus: String,
    /// Groups of larger order are left out of every suite.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Largest order whose full subgroup lattice is built.
    #[arg(long, default_value_t = DEFAULT_LATTICE_MAX_ORDER)]
    lattice_max_order: usize,
    /// Engel iterations allowed before a repeat (default |G|).
    #[arg(long)]
    k_cap: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output path (default <corpus>-<suite>-report.json).
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "on")]
    crosschecks: Switch,
    /// Write characteristic profiles instead of running suites.
    #[arg(long)]
    analyze: bool,
    /// With --analyze, add Engel chains for each class representative.
    #[arg(long, requires = "analyze")]
    engel: bool,
    /// Record wall-clock time per suite (makes reports run-dependent).
    #[arg(long)]
    timing: bool,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            // exit 2 is reserved for resource caps
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let config = SuiteConfig {
        suite: args.suite,
        corpus: args.corpus.clone(),
        max_order: args.max_order,
        lattice_max_order: args.lattice_max_order,
        k_cap: args.k_cap,
        jobs: args.jobs,
        crosschecks: matches!(args.crosschecks, Switch::On),
        timing: args.timing,
        fault: args.inject_fault.map(|FaultArg::TrivialFitting| Fault::TrivialFitting),
        ..SuiteConfig::default()
    };
    let result = if args.analyze { analyze(&config, args.engel) } else { run_suite(&config) };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("engel-verify: {e}");
            return ExitCode::from(if e.is_resource() { 2 } else { 3 });
        }
    };
    let suite = if args.analyze { "analyze" } else { args.suite.as_str() };
    let path = args
        .report
        .unwrap_or_else(|| PathBuf::from(default_report_name(&selector_label(&args.corpus), suite)));
    if let Err(e) = write_report(&report, &path) {
        eprintln!("engel-verify: writing {}: {e}", path.display());
        return ExitCode::from(3);
    }
    for s in &report.suites {
        println!(
            "{:<20} {:<8} {:>8} cases {:>4} violations {:>3} resource",
            s.suite,
            format!("{:?}", s.status).to_lowercase(),
            s.cases,
            s.violations.len(),
            s.resource_hits.len()
        );
    }
    println!("report: {}", path.display());
    ExitCode::from(report.exit_code() as u8)
}
