//! Engel sets E_{G,k}(x), the chains they generate, and Baer's criterion for F(G).

use engel_fit::corpus::builtin;
use engel_fit::engel::{baer_membership, engel_chain, Actor};
use engel_fit::{Analyzer, DEFAULT_ELEMENT_CAP};

fn main() -> engel_fit::Result<()> {
    let g = builtin("symmetric(4)", DEFAULT_ELEMENT_CAP)?.group;
    let fitting = Analyzer::default().fitting_subgroup(&g)?;

    for &r in g.conjugacy_classes().representative_indices() {
        let x = g.element(r);
        let chain = engel_chain(&g, Actor::element(&g, x)?, None)?;
        let sizes: Vec<usize> = (0..chain.len()).map(|k| chain.set(k).count_ones(..)).collect();
        let orders: Vec<usize> = chain.generated_chain().iter().map(|s| s.order()).collect();
        println!("x = {x}");
        println!("  |E_k|        {sizes:?} (repeats from k = {}, period {})", chain.cycle_start(), chain.period());
        println!("  |<E_k>|      {orders:?}");
        println!("  [G,x,..,x]   {:?}", chain.descent().orders());
        println!("  Baer: {}   in F(G): {}", baer_membership(&g, x)?, fitting.contains(x));
    }
    Ok(())
}
