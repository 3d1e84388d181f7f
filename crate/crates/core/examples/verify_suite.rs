//! Loading a corpus and running verification suites, as the engel-verify
//! binary does. Pass a suite name and a corpus selector to override the defaults:
//!
//!     cargo run --release --example verify_suite -- thmJ builtin:small-std

use engel_fit::corpus::{parse_group_file, select};
use engel_fit::suites::{run_suite, SuiteConfig};
use engel_fit::DEFAULT_ELEMENT_CAP;

const C2_X_A5: &str = "\
name c2xa5
degree 7
gen (1 2)
gen (3 4 5 6 7)
gen (5 6 7)
auto swap34
map (1 2)
map (4 3 5 6 7)
map (5 6 7)
";

fn main() -> engel_fit::Result<()> {
    let mut args = std::env::args().skip(1);
    let suite = args.next().unwrap_or_else(|| "baer".into()).parse()?;
    let corpus = args.next().unwrap_or_else(|| "builtin:symmetric(4);sl2(3);alternating(5)".into());

    let entry = parse_group_file(C2_X_A5, None, DEFAULT_ELEMENT_CAP)?;
    println!("{} has order {} and automorphisms {:?}", entry.name, entry.group.order(), entry.automorphisms.iter().map(|a| &a.name).collect::<Vec<_>>());
    for e in select(&corpus, DEFAULT_ELEMENT_CAP)? {
        println!("corpus: {} (order {})", e.name, e.group.order());
    }

    let config = SuiteConfig { suite, corpus, ..SuiteConfig::default() };
    let report = run_suite(&config)?;
    for s in &report.suites {
        println!("\n{}: {:?}, {} cases, {} passes", s.suite, s.status, s.cases, s.passes);
        println!("  {}", s.statement);
        for n in &s.notes {
            println!("  note: {n}");
        }
    }
    println!("\nexit code {}", report.exit_code());
    Ok(())
}
