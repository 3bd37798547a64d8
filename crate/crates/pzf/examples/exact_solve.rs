//! Exact expected propagation time on small graphs.
//!
//! Solves the absorbing chain for paths (comparing against the closed form)
//! and for a seeded G(n, p) instance.

use pzf::bounds::path_ept_closed_form;
use pzf::exact::exact_ept_graph;
use pzf::graph::FamilySpec;

fn main() -> pzf::Result<()> {
    println!("best-start path ept vs closed form:");
    for n in 3..=10 {
        let g = FamilySpec::Path { n }.generate()?;
        let (ept, v) = exact_ept_graph(&g)?;
        let formula = path_ept_closed_form(n)?;
        println!(
            "  n={n:2}  start={v}  ept={ept:.6}  closed_form={formula:.6}  diff={:.1e}",
            (ept - formula).abs()
        );
    }

    let g: FamilySpec = "gnp:n=10,p=0.35,seed=11".parse()?;
    let g = g.generate()?;
    let (best, v) = exact_ept_graph(&g)?;
    println!("\ngnp:n=10,p=0.35,seed=11 has {} edges", g.edge_count());
    println!("best single start is vertex {v} with ept {best:.6}");
    Ok(())
}
