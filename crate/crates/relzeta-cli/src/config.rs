//! Flat key = value run configuration.

use std::path::{Path, PathBuf};

/// Runtime configuration shared by the verification subcommands. Loaded
/// from a flat `key = value` file; `#` starts a comment. Unknown keys are
/// rejected so typos fail loudly.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub output_dir: PathBuf,
    /// Quadrature / zero-sum tolerance for the relation harnesses.
    pub tolerance: f64,
    /// Discrepancy tolerance for explicit-formula balance.
    pub ef_tolerance: f64,
    /// Truncation height for explicit-formula zero sums.
    pub ef_t: f64,
    pub bump_center: f64,
    pub bump_radius: f64,
    /// Zero-free-region exponent: 1.0 unconditional, 0.5 for the
    /// critical-line assumption (sharper claimed orders).
    pub sigma: f64,
    /// Dirichlet character "q.a" used by the character-based relations.
    pub chararg: (u64, u64),
    /// Optional x-grid override (strictly decreasing); each relation has
    /// its own default grid when absent.
    pub x_grid: Option<Vec<f64>>,
    /// Optional pre-computed zero tables.
    pub zeta_zeros: Option<PathBuf>,
    pub delta_zeros: Option<PathBuf>,
    /// Pass bound for the residual/log^2(x) ratio of the shifted-zero
    /// relation.
    pub ratio_bound: f64,
    /// Agreement budget for the dual/triple prime-sum recovery routes.
    pub route_budget: f64,
    /// Partial-sum growth data A x^mu + O(x^nu) for the degree-two form.
    pub growth_a: f64,
    pub growth_mu: f64,
    pub growth_nu: f64,
    /// Sieve limit for prime tables.
    pub prime_limit: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            output_dir: PathBuf::from("reports"),
            tolerance: 1e-9,
            ef_tolerance: 1e-6,
            ef_t: 500.0,
            bump_center: 2.5,
            bump_radius: 1.0,
            sigma: 1.0,
            chararg: (4, 3),
            x_grid: None,
            zeta_zeros: None,
            delta_zeros: None,
            ratio_bound: 5.0,
            route_budget: 1e-5,
            growth_a: -1.0,
            growth_mu: 1.0,
            growth_nu: 0.5,
            prime_limit: 5000,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let mut cfg = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", idx + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let f = |v: &str| -> Result<f64, String> {
                v.parse::<f64>()
                    .map_err(|_| format!("line {}: bad number {v:?} for {key}", idx + 1))
            };
            match key {
                "output_dir" => cfg.output_dir = PathBuf::from(value),
                "tolerance" => cfg.tolerance = f(value)?,
                "ef_tolerance" => cfg.ef_tolerance = f(value)?,
                "ef_t" => cfg.ef_t = f(value)?,
                "bump_center" => cfg.bump_center = f(value)?,
                "bump_radius" => cfg.bump_radius = f(value)?,
                "sigma" => cfg.sigma = f(value)?,
                "char" => cfg.chararg = parse_char(value)?,
                "x_grid" => {
                    let grid: Result<Vec<f64>, String> =
                        value.split(',').map(|v| f(v.trim())).collect();
                    cfg.x_grid = Some(grid?);
                }
                "zeta_zeros" => cfg.zeta_zeros = Some(PathBuf::from(value)),
                "delta_zeros" => cfg.delta_zeros = Some(PathBuf::from(value)),
                "ratio_bound" => cfg.ratio_bound = f(value)?,
                "route_budget" => cfg.route_budget = f(value)?,
                "growth_a" => cfg.growth_a = f(value)?,
                "growth_mu" => cfg.growth_mu = f(value)?,
                "growth_nu" => cfg.growth_nu = f(value)?,
                "prime_limit" => {
                    cfg.prime_limit = value
                        .parse()
                        .map_err(|_| format!("line {}: bad integer for prime_limit", idx + 1))?
                }
                other => return Err(format!("line {}: unknown key {other:?}", idx + 1)),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        for (name, v) in [
            ("tolerance", self.tolerance),
            ("ef_tolerance", self.ef_tolerance),
            ("ratio_bound", self.ratio_bound),
            ("route_budget", self.route_budget),
            ("bump_radius", self.bump_radius),
        ] {
            if !(v > 0.0) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        if let Some(grid) = &self.x_grid {
            if grid.is_empty() {
                return Err("x_grid is empty".into());
            }
            if !grid.windows(2).all(|w| w[0] > w[1]) || grid.iter().any(|&x| !(x > 0.0)) {
                return Err("x_grid must be positive and strictly decreasing".into());
            }
        }
        for path in [&self.zeta_zeros, &self.delta_zeros].into_iter().flatten() {
            if !path.exists() {
                return Err(format!("zero file not found: {}", path.display()));
            }
        }
        Ok(())
    }
}

fn parse_char(value: &str) -> Result<(u64, u64), String> {
    let (q, a) = value
        .split_once('.')
        .ok_or_else(|| format!("char must look like q.a, got {value:?}"))?;
    let q = q.parse().map_err(|_| format!("bad modulus in {value:?}"))?;
    let a = a.parse().map_err(|_| format!("bad index in {value:?}"))?;
    Ok((q, a))
}
