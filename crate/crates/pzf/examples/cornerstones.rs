//! Cornerstone structure: cut vertices and separating pairs, their g-values
//! (the smaller side of the most balanced split), and the best choice.

use pzf::graph::FamilySpec;
use pzf::structure::best_cornerstone;

fn main() -> pzf::Result<()> {
    for spec in [
        "path:7",
        "star:6",
        "cycle:6",
        "spider:l=3,m=4",
        "star_chain:r=1,s=4",
        "complete:5",
    ] {
        let g: FamilySpec = spec.parse()?;
        let g = g.generate()?;
        let report = best_cornerstone(&g)?;
        println!("{spec}");
        println!("  cut vertices with g: {:?}", report.one_cornerstones);
        println!("  separating pairs with g: {:?}", report.two_cornerstones);
        println!(
            "  best {} (g={})  S={}  T={}",
            report.best, report.best_g, report.s_set, report.t_set
        );
    }
    Ok(())
}
