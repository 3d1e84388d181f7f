//! Cycle notation, the right-action product and closing generators into a group.

use engel_fit::{close_group, Permutation, DEFAULT_ELEMENT_CAP};

fn main() -> engel_fit::Result<()> {
    let p = Permutation::parse("(1 2 3)", 4)?;
    let q = Permutation::parse("(3 4)", 4)?;
    // points are acted on from the right: i^(pq) = (i^p)^q
    println!("p q     = {}", p.compose(&q)?);
    println!("q p     = {}", q.compose(&p)?);
    println!("[p, q]  = {}", p.commutator(&q)?);
    println!("p^-1    = {}", p.inverse());
    println!("|pq|    = {}", p.compose(&q)?.order());

    let s4 = close_group(&[Permutation::parse("(1 2)", 4)?, Permutation::parse("(1 2 3 4)", 4)?], DEFAULT_ELEMENT_CAP)?;
    println!("\n<(1 2), (1 2 3 4)> has order {}", s4.order());
    println!("fingerprint {}", s4.fingerprint());
    let classes = s4.conjugacy_classes();
    println!("{} conjugacy classes, representatives:", classes.len());
    for &r in classes.representative_indices() {
        println!("  {:<12} order {}", s4.element(r).to_string(), s4.element_order(r));
    }
    Ok(())
}
