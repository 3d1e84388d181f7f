//! Subgroups, normal closures, quotients and the lattice of normal subgroups.

use engel_fit::corpus::builtin;
use engel_fit::{Analyzer, DEFAULT_ELEMENT_CAP};

fn main() -> engel_fit::Result<()> {
    let s4 = builtin("symmetric(4)", DEFAULT_ELEMENT_CAP)?.group;
    let analyzer = Analyzer::default();

    let t = s4.subgroup_from_cycles(&["(1 2)(3 4)"])?;
    let v4 = t.normal_closure();
    println!("<(1 2)(3 4)> has order {}, normal closure order {}", t.order(), v4.order());
    println!("derived series orders {:?}", s4.whole().derived_series().orders());

    let (subnormal, series) = t.subnormality(&s4.whole())?;
    println!("<(1 2)(3 4)> subnormal: {subnormal}, via {:?}", series.orders());
    let u = s4.subgroup_from_cycles(&["(1 2)"])?;
    println!("<(1 2)> subnormal: {}", u.is_subnormal_in(&s4.whole())?);

    let q = analyzer.quotient(&v4)?;
    println!("\nS4 / V4 has order {} on {} points", q.image().order(), q.image().degree());
    for g in s4.generators() {
        println!("  {} -> {}", g, q.image_of(g)?);
    }

    let lattice = analyzer.normal_lattice(&s4)?;
    println!("\nnormal subgroup orders:");
    for n in lattice.members() {
        println!("  {}", n.order());
    }
    println!("socle order {}", analyzer.socle(&s4)?.order());
    Ok(())
}
