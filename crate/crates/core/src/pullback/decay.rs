//! Largest pull-back of a disk over every branch of the preimage tree.

use super::disk::{branch_outer, critical_outer, nearest_branch, DiskEnclosure};
use crate::error::Result;
use crate::map::UnicriticalMap;
use crate::tree::TreeConfig;

/// `out[m]` bounds the diameter of every component of `f^{-m}(disk)` that
/// contains a point of `f^{-m}(disk.center)`, for `m = 0..=depth`.
///
/// Each tree node carries the outer enclosure of its component; children
/// inherit the critical enclosure or the branch sector of their own root.
pub fn max_pullback_diameters(
    map: &UnicriticalMap,
    disk: &DiskEnclosure,
    depth: usize,
    config: &TreeConfig,
) -> Result<Vec<f64>> {
    config.check_budget(map.degree(), depth)?;
    let d = map.degree();
    let c = map.parameter();
    let mut out = vec![0.0f64; depth + 1];
    let mut level = vec![(disk.center, *disk)];
    out[0] = disk.diameter();
    for m in 1..=depth {
        let mut next = Vec::with_capacity(level.len() * d as usize);
        for (point, enclosure) in &level {
            let a = enclosure.center - c;
            let critical = a.norm() <= enclosure.radius;
            let crit_outer = critical.then(|| critical_outer(a, enclosure.radius, d));
            for root in map.preimages(*point).roots {
                let outer = crit_outer.unwrap_or_else(|| {
                    branch_outer(a, enclosure.radius, d, nearest_branch(a, d, root))
                });
                out[m] = out[m].max(outer.diameter());
                next.push((root, outer));
            }
        }
        level = next;
    }
    Ok(out)
}
