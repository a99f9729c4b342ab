//! Root of the finite-depth pressure, a proxy for the convergence exponent.

use unicrit::series::convergence_exponent;
use unicrit::tree::TreeConfig;
use unicrit::{Complex64, UnicriticalMap};

fn main() -> unicrit::Result<()> {
    let map = UnicriticalMap::quadratic(-2.0);
    let w = Complex64::new(0.0, 0.0);
    for n in [8, 12, 14] {
        let est = convergence_exponent(&map, w, n, 0.5, 2.0, 1e-10, &TreeConfig::default())?;
        println!("depth {n:>2}: t* = {:.6} in [{:.6}, {:.6}]", est.root, est.bracket.0, est.bracket.1);
    }
    Ok(())
}
