//! Recomputes the Feigenbaum parameter from superstable parameters.

use unicrit::cli::presets::{feigenbaum_parameter, FEIGENBAUM_REFERENCE};

fn main() {
    let c = feigenbaum_parameter();
    println!("computed  {c:.16}");
    println!("reference {FEIGENBAUM_REFERENCE:.16}");
    println!("difference {:.2e}", (c - FEIGENBAUM_REFERENCE).abs());
}
