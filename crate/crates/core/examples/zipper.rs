//! The subgroup lattice, normal closure descents and the two-branch dichotomy
//! for subgroups whose normal closure is the whole group.

use engel_fit::corpus::builtin;
use engel_fit::zipper::{all_subgroups, normal_closure_descent, zipper_case, LatticeCaps};
use engel_fit::DEFAULT_ELEMENT_CAP;

fn main() -> engel_fit::Result<()> {
    let g = builtin("symmetric(4)", DEFAULT_ELEMENT_CAP)?.group;
    let lattice = all_subgroups(&g, LatticeCaps::default())?;
    println!("S4 has {} subgroups, maximal ones of order {:?}", lattice.len(), lattice.maximal_subgroups().iter().map(|m| m.order()).collect::<Vec<_>>());

    for gens in [["(1 2 3 4)"], ["(1 2)"], ["(1 2 3)"]] {
        let a = g.subgroup_from_cycles(&gens)?;
        let pos = lattice.position(&a).expect("cyclic subgroups are in the lattice");
        println!("\nA = <{}>, |A^G| = {}", gens[0], a.normal_closure().order());
        println!("  descent from G: {:?}", normal_closure_descent(&a, &g.whole())?.orders());
        if !a.normal_closure().is_whole() {
            continue;
        }
        let case = zipper_case(&lattice, pos)?;
        println!("  branch {:?}, |Y| = {}, maximal overgroups {}", case.branch, case.y.order(), case.maximal_over_a.len());
        println!("  violations {:?}", case.violations);
    }
    Ok(())
}
