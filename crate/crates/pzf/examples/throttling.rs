//! Exact throttling: minimize |B| + ept(G, B) over all nonempty start sets.

use pzf::exact::{exact_ept, exact_throttling};
use pzf::graph::FamilySpec;
use pzf::state::ColorState;

fn main() -> pzf::Result<()> {
    for spec in ["path:3", "path:6", "cycle:5", "star:5", "complete:6"] {
        let g: FamilySpec = spec.parse()?;
        let g = g.generate()?;
        let (th, argmin) = exact_throttling(&g)?;
        let ept = exact_ept(&g, &argmin)?;
        println!(
            "{spec:10}  th={th:.6}  argmin={argmin}  (|B|={} + ept={ept:.6})",
            argmin.count_ones()
        );
    }

    // the optimum genuinely moves past singletons on long paths
    let g = FamilySpec::Path { n: 12 }.generate()?;
    let (th, argmin) = exact_throttling(&g)?;
    let best_single = (0..12)
        .map(|v| {
            let s = ColorState::singleton(12, v).unwrap();
            1.0 + exact_ept(&g, &s).unwrap()
        })
        .fold(f64::INFINITY, f64::min);
    println!("\npath:12  th={th:.6} at {argmin}, best singleton value {best_single:.6}");
    Ok(())
}
