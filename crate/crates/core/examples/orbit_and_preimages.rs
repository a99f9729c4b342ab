//! Forward orbit of the critical value and the first levels of the preimage tree.

use unicrit::tree::{enumerate_preimage_tree, TreeConfig, Visit};
use unicrit::{Complex64, UnicriticalMap};

fn main() -> unicrit::Result<()> {
    let map = UnicriticalMap::new(3, Complex64::new(-0.2, 0.6))?;
    let orbit = map.critical_value_orbit(16)?;
    println!("critical value orbit of {map:?}");
    for (n, z) in orbit.points.iter().enumerate().take(8) {
        println!("  n={n:<2} z={z:.6}  |Df^n(c)|={:.4e}", orbit.abs_derivative(n));
    }
    println!("closest returns to 0: {:?}", &orbit.closest_returns()[..3.min(orbit.closest_returns().len())]);

    let w = Complex64::new(0.3, 0.0);
    let summary = enumerate_preimage_tree(&map, w, 3, &TreeConfig::default(), |node| {
        if node.depth == 2 {
            let back = map.apply_n(node.point, node.depth);
            println!("  path {:?} point {:.6} log|Df^2| {:.6} residual {:.1e}", node.branches, node.point, node.log_abs_deriv, (back - w).norm());
        }
        Visit::Descend
    })?;
    println!("nodes per depth: {:?}", summary.per_depth);
    Ok(())
}
