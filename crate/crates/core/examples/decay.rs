//! Largest pullback diameter of a small disk at each depth.

use unicrit::pullback::{max_pullback_diameters, DiskEnclosure};
use unicrit::tree::TreeConfig;
use unicrit::{Complex64, UnicriticalMap};

fn main() -> unicrit::Result<()> {
    let map = UnicriticalMap::quadratic(-2.0);
    let disk = DiskEnclosure::new(Complex64::new(0.0, 0.0), 0.01);
    let diams = max_pullback_diameters(&map, &disk, 10, &TreeConfig::default())?;
    for (m, pair) in diams.windows(2).enumerate() {
        println!("m={:>2} max diam {:.4e}  ratio {:.4}", m + 1, pair[1], pair[1] / pair[0]);
    }
    Ok(())
}
