//! The forward and Poincaré series side by side, rendered as CSV.

use unicrit::cli::config::ExperimentConfig;
use unicrit::cli::emit::Format;
use unicrit::cli::{execute, Command};

fn main() -> unicrit::Result<()> {
    let mut cfg = ExperimentConfig::default();
    for assignment in ["preset=feigenbaum", "n_series=10", "t_grid=0.5,1,1.5,2"] {
        cfg.apply_override(assignment)?;
    }
    cfg.validate()?;
    print!("{}", execute(Command::Theoremb, &cfg, Format::Csv)?);
    Ok(())
}
