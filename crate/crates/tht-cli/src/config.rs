//! Experiment configuration: flat `key = value` text under `[section]`
//! headers, zero-dependency parsing, every field carrying a default so a
//! manifest echoing the resolved values is itself a valid config.
//!
//! The default configuration is the reference truncation experiment: the
//! shifted semicircle phantom on a 256-point grid, transform data trusted on
//! midpoints `[32, 224)`, source data on nodes `[64, 192)`, 30 alternating
//! iterations from a zero initial guess.

use anyhow::{anyhow, bail, Result};
use std::fmt::Write as _;
use std::path::PathBuf;
use tht_core::phantoms::{NoiseSpec, PhantomFamily, PhantomSpec};
use tht_core::solvers::InitialGuess;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Extrapolate,
    Minimize,
    Lagrange,
}

impl SolverKind {
    pub fn label(self) -> &'static str {
        match self {
            SolverKind::Extrapolate => "extrapolate",
            SolverKind::Minimize => "minimize",
            SolverKind::Lagrange => "lagrange",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    // [phantom]
    pub family: String,
    pub center: f64,
    pub halfwidth: f64,
    pub eps: f64,
    pub sigma: f64,
    pub seed: u64,
    // [grid]
    pub n: usize,
    // [mask]
    pub f_start: usize,
    pub f_end: usize,
    pub transform_start: usize,
    pub transform_end: usize,
    // [solver]
    pub solver: SolverKind,
    pub iters: usize,
    pub guess: InitialGuess,
    pub order: usize,
    pub ridge: f64,
    pub sample_lo: f64,
    pub sample_hi: f64,
    pub order_cap: usize,
    // [output]
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            family: "semicircle_shifted".into(),
            center: -0.1,
            halfwidth: 0.8,
            eps: 0.5,
            sigma: 0.0,
            seed: 0,
            n: 256,
            f_start: 64,
            f_end: 192,
            transform_start: 32,
            transform_end: 224,
            solver: SolverKind::Extrapolate,
            iters: 30,
            guess: InitialGuess::Zero,
            order: 8,
            ridge: 0.0,
            sample_lo: 0.1,
            sample_hi: 0.4,
            order_cap: 16,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl ExperimentConfig {
    pub fn phantom_spec(&self) -> Result<PhantomSpec> {
        let family = match self.family.as_str() {
            "semicircle_unit" => PhantomFamily::SemicircleUnit,
            "semicircle_eps" => PhantomFamily::SemicircleEps { eps: self.eps },
            "semicircle_shifted" => PhantomFamily::SemicircleShifted {
                center: self.center,
                halfwidth: self.halfwidth,
            },
            other => bail!("config: unknown phantom family `{other}`"),
        };
        let noise = (self.sigma > 0.0).then_some(NoiseSpec {
            sigma: self.sigma,
            seed: self.seed,
        });
        Ok(PhantomSpec { family, noise })
    }

    pub fn validate(&self) -> Result<()> {
        self.phantom_spec()?;
        if self.n == 0 {
            bail!("config: [grid] n must be positive");
        }
        if self.f_end > self.n || self.transform_end > self.n {
            bail!(
                "config: [mask] ranges must fit in the grid (n = {}): f {}..{}, F {}..{}",
                self.n,
                self.f_start,
                self.f_end,
                self.transform_start,
                self.transform_end
            );
        }
        if self.f_start > self.f_end || self.transform_start > self.transform_end {
            bail!("config: [mask] range start exceeds end");
        }
        if self.solver == SolverKind::Lagrange {
            if self.order == 0 {
                bail!("config: [solver] order must be positive for lagrange");
            }
            if self.sample_lo >= self.sample_hi {
                bail!("config: [solver] sample_lo must be below sample_hi");
            }
            let inside = self.sample_lo > -1.0 && self.sample_hi < 1.0;
            let outside = self.sample_lo > 1.0 || self.sample_hi < -1.0;
            if !inside && !outside {
                bail!(
                    "config: [solver] lagrange sampling interval ({}, {}) must lie \
                     strictly inside (-1, 1) or strictly outside [-1, 1]",
                    self.sample_lo,
                    self.sample_hi
                );
            }
        }
        if self.solver == SolverKind::Minimize && self.order == 0 {
            bail!("config: [solver] order must be positive for minimize");
        }
        if !(self.ridge.is_finite() && self.ridge >= 0.0) {
            bail!("config: [solver] ridge must be >= 0");
        }
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            bail!("config: [phantom] sigma must be >= 0");
        }
        Ok(())
    }

    /// Parses the section/key-value format. Unknown sections (except the
    /// `[result]` block a manifest carries) and unknown keys are errors.
    pub fn parse(text: &str) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.trim().to_string();
                match section.as_str() {
                    "phantom" | "grid" | "mask" | "solver" | "output" | "result" => {}
                    other => bail!("config line {line_no}: unknown section [{other}]"),
                }
                continue;
            }
            if section == "result" {
                // manifests append their measured results; ignored on reload
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {line_no}: expected `key = value`"))?;
            let key = key.trim();
            let value = value.trim();
            cfg.apply(&section, key, value)
                .map_err(|e| anyhow!("config line {line_no}: {e}"))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&mut self, section: &str, key: &str, value: &str) -> Result<()> {
        fn float(value: &str) -> Result<f64> {
            value
                .parse()
                .map_err(|_| anyhow!("`{value}` is not a number"))
        }
        fn integer<T: std::str::FromStr>(value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| anyhow!("`{value}` is not a valid integer"))
        }
        match (section, key) {
            ("phantom", "family") => self.family = value.to_string(),
            ("phantom", "center") => self.center = float(value)?,
            ("phantom", "halfwidth") => self.halfwidth = float(value)?,
            ("phantom", "eps") => self.eps = float(value)?,
            ("phantom", "sigma") => self.sigma = float(value)?,
            ("phantom", "seed") => self.seed = integer(value)?,
            ("grid", "n") => self.n = integer(value)?,
            ("mask", "f_start") => self.f_start = integer(value)?,
            ("mask", "f_end") => self.f_end = integer(value)?,
            ("mask", "transform_start") => self.transform_start = integer(value)?,
            ("mask", "transform_end") => self.transform_end = integer(value)?,
            ("solver", "kind") => {
                self.solver = match value {
                    "extrapolate" => SolverKind::Extrapolate,
                    "minimize" => SolverKind::Minimize,
                    "lagrange" => SolverKind::Lagrange,
                    other => bail!("unknown solver kind `{other}`"),
                }
            }
            ("solver", "iters") => self.iters = integer(value)?,
            ("solver", "guess") => {
                self.guess = match value {
                    "zero" => InitialGuess::Zero,
                    "linear_taper" => InitialGuess::LinearTaper,
                    other => bail!("unknown guess `{other}`"),
                }
            }
            ("solver", "order") => self.order = integer(value)?,
            ("solver", "ridge") => self.ridge = float(value)?,
            ("solver", "sample_lo") => self.sample_lo = float(value)?,
            ("solver", "sample_hi") => self.sample_hi = float(value)?,
            ("solver", "order_cap") => self.order_cap = integer(value)?,
            ("output", "dir") => self.out_dir = PathBuf::from(value),
            ("", key) => bail!("key `{key}` appears before any [section]"),
            (section, key) => bail!("unknown key `{key}` in [{section}]"),
        }
        Ok(())
    }

    /// Renders the fully resolved configuration (the manifest body).
    pub fn render(&self) -> String {
        let guess = match self.guess {
            InitialGuess::Zero => "zero",
            InitialGuess::LinearTaper => "linear_taper",
        };
        let mut out = String::new();
        let _ = writeln!(out, "[phantom]");
        let _ = writeln!(out, "family = {}", self.family);
        let _ = writeln!(out, "center = {}", self.center);
        let _ = writeln!(out, "halfwidth = {}", self.halfwidth);
        let _ = writeln!(out, "eps = {}", self.eps);
        let _ = writeln!(out, "sigma = {}", self.sigma);
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "\n[grid]");
        let _ = writeln!(out, "n = {}", self.n);
        let _ = writeln!(out, "\n[mask]");
        let _ = writeln!(out, "f_start = {}", self.f_start);
        let _ = writeln!(out, "f_end = {}", self.f_end);
        let _ = writeln!(out, "transform_start = {}", self.transform_start);
        let _ = writeln!(out, "transform_end = {}", self.transform_end);
        let _ = writeln!(out, "\n[solver]");
        let _ = writeln!(out, "kind = {}", self.solver.label());
        let _ = writeln!(out, "iters = {}", self.iters);
        let _ = writeln!(out, "guess = {guess}");
        let _ = writeln!(out, "order = {}", self.order);
        let _ = writeln!(out, "ridge = {}", self.ridge);
        let _ = writeln!(out, "sample_lo = {}", self.sample_lo);
        let _ = writeln!(out, "sample_hi = {}", self.sample_hi);
        let _ = writeln!(out, "order_cap = {}", self.order_cap);
        let _ = writeln!(out, "\n[output]");
        let _ = writeln!(out, "dir = {}", self.out_dir.display());
        out
    }
}
