//! Implementations behind the file-level subcommands.

use crate::formats;
use crate::logging;
use anyhow::{anyhow, bail, Result};
use std::path::Path;
use tht_core::hilbert::{discrete_forward, discrete_inverse, pv_oracle_with};
use tht_core::phantoms::{self, PhantomSpec};
use tht_core::series::{analyze_source, Grid};

/// Applies the discrete forward operator to a source samples file.
pub fn forward(input: &Path, output: &Path) -> Result<()> {
    let samples = formats::read_samples(input)?;
    let transform = discrete_forward(&samples).map_err(|e| anyhow!("forward: {e}"))?;
    formats::write_samples(output, &transform)?;
    logging::info(&format!(
        "forward: {} -> {}",
        input.display(),
        output.display()
    ));
    Ok(())
}

/// Applies the discrete inverse operator to a transform samples file.
pub fn invert(input: &Path, output: &Path) -> Result<()> {
    let samples = formats::read_samples(input)?;
    let source = discrete_inverse(&samples).map_err(|e| anyhow!("invert: {e}"))?;
    formats::write_samples(output, &source)?;
    logging::info(&format!(
        "invert: {} -> {}",
        input.display(),
        output.display()
    ));
    Ok(())
}

/// Emits a phantom pair sampled on the companion CGL grids.
pub fn phantom(spec: &PhantomSpec, n: usize, sigma: f64, seed: u64, out_dir: &Path) -> Result<()> {
    let pair = phantoms::make_pair(spec).map_err(|e| anyhow!("phantom: {e}"))?;
    let nodes = Grid::cgl_nodes(n).map_err(|e| anyhow!("{e}"))?;
    let mids = Grid::cgl_midpoints(n).map_err(|e| anyhow!("{e}"))?;
    let mut f = pair.sample_source(&nodes).map_err(|e| anyhow!("{e}"))?;
    let mut transform = pair.sample_transform(&mids).map_err(|e| anyhow!("{e}"))?;
    if sigma > 0.0 {
        f = phantoms::add_noise(&f, sigma, seed).map_err(|e| anyhow!("{e}"))?;
        transform = phantoms::add_noise(&transform, sigma, seed.wrapping_add(1))
            .map_err(|e| anyhow!("{e}"))?;
    }
    std::fs::create_dir_all(out_dir)?;
    formats::write_samples(&out_dir.join("source_samples.txt"), &f)?;
    formats::write_samples(&out_dir.join("transform_samples.txt"), &transform)?;
    logging::info(&format!(
        "phantom: wrote pair files under {}",
        out_dir.display()
    ));
    Ok(())
}

/// Checks a sampled pair against the principal-value quadrature oracle.
///
/// The source samples are lifted to their series representation; the oracle
/// is then evaluated at a spread of midpoint abscissae (kept away from the
/// interval ends) and compared with the stored transform values. Returns
/// the maximum deviation.
pub fn validate(source_path: &Path, transform_path: &Path) -> Result<f64> {
    let f = formats::read_samples(source_path)?;
    let transform = formats::read_samples(transform_path)?;
    if f.len() != transform.len() {
        bail!(
            "validate: grid sizes differ ({} vs {})",
            f.len(),
            transform.len()
        );
    }
    let coeffs = analyze_source(&f).map_err(|e| anyhow!("validate: {e}"))?;
    let mut worst = 0.0f64;
    let n = transform.len();
    let checks = 12.min(n);
    for k in 0..checks {
        // spread across the grid, skipping abscissae too close to +-1
        let m = (k * n) / checks + n / (2 * checks);
        let s = transform.grid().point(m.min(n - 1));
        if s.abs() > 0.95 {
            continue;
        }
        let oracle =
            pv_oracle_with(|t| coeffs.eval_source(t), s, 8192).map_err(|e| anyhow!("{e}"))?;
        let dev = (oracle - transform.values()[m.min(n - 1)]).abs();
        worst = worst.max(dev);
        logging::debug(&format!("validate: s = {s:+.4}, deviation {dev:.3e}"));
    }
    Ok(worst)
}
