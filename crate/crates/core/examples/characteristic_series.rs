//! Fitting subgroup, layer, F*, the generalized Fitting series and insoluble length.

use engel_fit::corpus::builtin;
use engel_fit::{Analyzer, DEFAULT_ELEMENT_CAP};

fn main() -> engel_fit::Result<()> {
    let analyzer = Analyzer::default();
    println!("{:<24} {:>6} {:>4} {:>4} {:>4} {:>4} {:>3} {:>3}  F*-series", "group", "|G|", "F", "E", "F*", "R", "h*", "λ");
    for spec in ["cyclic(7)", "symmetric(4)", "symmetric(5)", "sl2(5)", "symmetric(6)", "direct_product(symmetric(3),cyclic(2))"] {
        let g = builtin(spec, DEFAULT_ELEMENT_CAP)?.group;
        let p = analyzer.profile(&g)?;
        let series = analyzer.gen_fitting_series(&g)?;
        println!(
            "{:<24} {:>6} {:>4} {:>4} {:>4} {:>4} {:>3} {:>3}  {:?}",
            spec,
            g.order(),
            p.fitting.order(),
            p.layer.order(),
            p.gen_fitting.order(),
            p.soluble_radical.order(),
            p.gen_fitting_height,
            p.insoluble_length,
            series.orders()
        );
    }

    let s6 = builtin("symmetric(6)", DEFAULT_ELEMENT_CAP)?.group;
    let via_socle = analyzer.generalized_fitting_via_socle(&s6)?;
    println!("\nF*(S6) via socle has order {}", via_socle.order());
    for h in 0..=analyzer.insoluble_length(&s6)? {
        println!("R_{h}(S6) has order {}", analyzer.insoluble_radical(&s6, h)?.order());
    }
    Ok(())
}
