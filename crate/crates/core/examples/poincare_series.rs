//! Level sums of the Poincaré series at the critical point of the Chebyshev map.

use unicrit::series::{poincare_truncation, Traversal};
use unicrit::tree::TreeConfig;
use unicrit::{Complex64, UnicriticalMap};

fn main() -> unicrit::Result<()> {
    let map = UnicriticalMap::quadratic(-2.0);
    let zero = Complex64::new(0.0, 0.0);
    for t in [0.5, 1.0, 1.5] {
        let p = poincare_truncation(&map, zero, t, 12, Traversal::Exhaustive, &TreeConfig::default())?;
        let tail: Vec<String> = p.level_sums.iter().rev().take(3).map(|s| format!("{s:.6}")).collect();
        println!("t={t}: partial {:.6}, last level sums {}", p.partial, tail.join(" "));
    }
    Ok(())
}
