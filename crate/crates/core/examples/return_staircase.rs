//! Close returns of the Feigenbaum map and the integral ratios over each step.

use unicrit::pullback::backward_contraction_profile;
use unicrit::returns::{close_return_ratios, return_staircase, spread, staircase_grid};
use unicrit::UnicriticalMap;

fn main() -> unicrit::Result<()> {
    let map = UnicriticalMap::quadratic(-1.401_155_189_092_050_6);
    let staircase = return_staircase(&map, 1e-6, 0.5, 4096)?;
    for r in &staircase.returns {
        println!("n={:<5} δ in [{:.4e}, {:.4e})  accepted={}", r.n, r.delta_lo, r.delta_hi, r.accepted());
    }
    let profile = backward_contraction_profile(&map, &staircase_grid(&staircase, 4, 8), 1024)?;
    let ratios = close_return_ratios(&staircase, &profile, 1.0)?;
    let first: Vec<f64> = ratios.iter().take(4).filter_map(|r| r.ratio).collect();
    println!("ratios {first:.3?}, spread {:?}", spread(first.iter().copied()));
    Ok(())
}
