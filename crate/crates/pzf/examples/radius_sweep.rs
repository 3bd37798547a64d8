//! Star-chain sweep: the ratio ept / (r · ln(n/r)) stays in a narrow band
//! as the star size s grows, matching the radius-driven scaling law.

use pzf::estimate::estimate_ept;
use pzf::graph::{center_vertex, radius, FamilySpec};
use pzf::rng::{derive_seed, DOMAIN_CELL};
use pzf::state::ColorState;

fn main() -> pzf::Result<()> {
    println!("{:>3} {:>4} {:>5} {:>7} {:>9} {:>7}", "r", "s", "n", "radius", "ept", "ratio");
    let mut idx = 0u64;
    for r in [1usize, 2, 4] {
        for s in [4usize, 8, 16] {
            let g = FamilySpec::StarChain { r, s }.generate()?;
            let center = center_vertex(&g)?;
            let start = ColorState::singleton(g.n(), center)?;
            let seed = derive_seed(0x5EED, DOMAIN_CELL, idx);
            idx += 1;
            let est = estimate_ept(&g, &start, 4_000, seed)?;
            let rad = radius(&g)?;
            let ratio = est.mean / (rad as f64 * (g.n() as f64 / rad as f64).ln());
            println!(
                "{r:>3} {s:>4} {:>5} {rad:>7} {:>9.3} {ratio:>7.3}",
                g.n(),
                est.mean
            );
        }
    }
    Ok(())
}
