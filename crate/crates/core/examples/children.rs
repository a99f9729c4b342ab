//! Children of a small critical disk and the bound on their weighted sum.

use unicrit::pullback::{backward_contraction_profile, child_sum_report, find_children, Certainty};
use unicrit::UnicriticalMap;

fn main() -> unicrit::Result<()> {
    let map = UnicriticalMap::quadratic(-1.3);
    let delta = 0.05;
    let records = find_children(&map, delta, 256)?;
    for r in records.iter().take(6) {
        let certain = matches!(r.certainty, Certainty::CertainChild);
        println!("time {:>3}: image diameter in [{:.3e}, {:.3e}], certain={certain}", r.time, r.image_diam_bounds.0, r.image_diam_bounds.1);
    }
    let profile = backward_contraction_profile(&map, &[delta], 256)?;
    let report = child_sum_report(&map, &records, delta, 1.0, profile.entries[0].r_lo);
    println!(
        "{} certain, {} unknown, sum {:.4e} against bound {:.4e}",
        report.certain_children, report.unknown, report.sum_certain, report.bound
    );
    Ok(())
}
