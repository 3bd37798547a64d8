//! Monte Carlo estimation with confidence intervals, checked against the
//! exact solver where the state space is small enough.

use pzf::estimate::{estimate_ept, estimate_tail};
use pzf::exact::exact_ept;
use pzf::graph::FamilySpec;
use pzf::state::ColorState;

fn main() -> pzf::Result<()> {
    let g = FamilySpec::Path { n: 9 }.generate()?;
    let start = ColorState::singleton(9, 4)?;

    let exact = exact_ept(&g, &start)?;
    let est = estimate_ept(&g, &start, 100_000, 0x5EED)?;
    println!("path:9 from the center");
    println!("  exact     {exact:.6}");
    println!(
        "  estimated {:.6}  ({}% CI [{:.6}, {:.6}], {} trials)",
        est.mean,
        (est.confidence * 100.0) as u32,
        est.ci_low,
        est.ci_high,
        est.trials
    );
    println!("  std err   {:.6}", est.std_err());

    println!("\ntail P(time > t):");
    for t in 0..8 {
        let tail = estimate_tail(&g, &start, t, 20_000, 0x5EED)?;
        println!(
            "  t={t}  p={:.4}  wilson=[{:.4}, {:.4}]",
            tail.probability, tail.ci_low, tail.ci_high
        );
    }
    Ok(())
}
