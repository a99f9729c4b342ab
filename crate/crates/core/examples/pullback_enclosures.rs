//! One-step disk pullbacks and a chain pulled back along an orbit.

use unicrit::pullback::{disk_preimage_components, pull_back_along_orbit, DiskEnclosure};
use unicrit::{Complex64, UnicriticalMap};

fn main() -> unicrit::Result<()> {
    let map = UnicriticalMap::quadratic(-1.3);
    for disk in [DiskEnclosure::new(Complex64::new(0.4, 0.2), 0.05), DiskEnclosure::critical_ball(&map, 0.1)] {
        println!("disk {:.4} r={:.4}", disk.center, disk.radius);
        for step in disk_preimage_components(&map, &disk) {
            println!(
                "  component around {:.4}: outer r={:.4e}, diam >= {:.4e}, critical={}",
                step.outer.center, step.outer.radius, step.diam_lower, step.critical
            );
        }
    }

    let orbit = map.critical_value_orbit(10)?;
    let target = DiskEnclosure::new(orbit.points[10], 1e-3);
    let chain = pull_back_along_orbit(&map, &target, &orbit, 10)?;
    for level in [10, 5, 0] {
        let (lo, hi) = chain.diam_bounds_at_level(level);
        println!("level {level:>2}: diameter in [{lo:.3e}, {hi:.3e}]");
    }
    Ok(())
}
