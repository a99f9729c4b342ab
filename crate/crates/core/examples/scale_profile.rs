//! Backward-contraction bounds R(δ) on a dyadic grid.

use unicrit::pullback::{backward_contraction_profile, dyadic_grid};
use unicrit::UnicriticalMap;

fn main() -> unicrit::Result<()> {
    let map = UnicriticalMap::quadratic(-1.401_155_189_092_050_6);
    let profile = backward_contraction_profile(&map, &dyadic_grid(0.5, 16), 1024)?;
    println!("{:>12} {:>12} {:>12} {:>6}", "delta", "R_lo", "R_hi", "times");
    for e in &profile.entries {
        println!("{:>12.4e} {:>12.4e} {:>12.4e} {:>6}", e.delta, e.r_lo, e.r_hi, e.return_times_used.len());
    }
    Ok(())
}
