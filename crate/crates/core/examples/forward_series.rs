//! Forward series along the critical value for a few parameters.

use unicrit::series::forward_series;
use unicrit::UnicriticalMap;

fn main() -> unicrit::Result<()> {
    for c in [-2.0, -1.543_689_012_692_076, -1.401_155_189_092_050_6] {
        let map = UnicriticalMap::quadratic(c);
        let f = forward_series(&map, 1.0, 64)?;
        println!("c={c:<22} sum_(n<=64) |Df^n(c)|^-1 = {:.6}  last term {:.3e}", f.partial, f.terms[64]);
    }
    Ok(())
}
