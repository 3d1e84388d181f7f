//! J-sets of involutory automorphisms, the A_n family with an inner
//! transposition, the centralizer check and the holomorph extension.

use engel_fit::corpus::builtin;
use engel_fit::engel::{centralizer_intersection_check, engel_chain, holomorph_extension, j_set, Actor, AutomorphismMap};
use engel_fit::{Permutation, DEFAULT_ELEMENT_CAP};

fn main() -> engel_fit::Result<()> {
    println!("{:<4} {:>6} {:>4} {:>6} {:>4}  E_j = J from j", "n", "|G|", "|J|", "|C|", "2^k");
    for n in 5..=7 {
        let g = builtin(&format!("alternating({n})"), DEFAULT_ELEMENT_CAP)?.group;
        let alpha = AutomorphismMap::inner(&g, &Permutation::parse("(1 2)", n)?)?;
        let report = j_set(&alpha)?;
        let chain = engel_chain(&g, Actor::Automorphism(alpha.clone()), None)?;
        let j = report.j_bits();
        let first = (1..=chain.len() + chain.period()).find(|&k| chain.set(k) == &j);
        println!(
            "{:<4} {:>6} {:>4} {:>6} {:>4}  {:?}",
            n,
            g.order(),
            report.j_len(),
            report.fixed_points.order(),
            report.two_part,
            first
        );
        let check = centralizer_intersection_check(&alpha)?;
        println!("     intersection of C^j over J: order {}, holds {}", check.intersection.order(), check.holds);
    }

    let c5 = builtin("cyclic(5)", DEFAULT_ELEMENT_CAP)?.group;
    let inv = AutomorphismMap::inversion(&c5)?;
    println!("\ncyclic(5) with inversion: J = {:?}", j_set(&inv)?.j_elements().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    let hol = holomorph_extension(&inv, DEFAULT_ELEMENT_CAP, DEFAULT_ELEMENT_CAP)?;
    println!("C5 extended by inversion has order {} on {} points", hol.order(), hol.degree());
    Ok(())
}
