//! Run configuration. Values come from built-in defaults, then an optional
//! TOML file, then `FOLIATION_<SECTION>_<KEY>` environment variables, then
//! command-line flags.

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Word-ball elements closer than this in Frobenius norm are merged.
    pub dedup_tol: f64,
    /// Ceiling on `|M^T A M - A|` after embedding an exact element.
    pub residual_tol: f64,
    /// Singular values below this count as zero.
    pub svd_threshold: f64,
    /// Relative change at which power iteration stops.
    pub power_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            dedup_tol: 1e-9,
            residual_tol: 1e-12,
            svd_threshold: 1e-8,
            power_tol: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    pub element_cap: usize,
    /// Largest cochain space the Chevalley-Eilenberg complex may build.
    pub ce_budget: usize,
    /// Largest monomial space for harmonic polynomials.
    pub harmonic_budget: usize,
    pub max_degree: usize,
    pub power_iters: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            element_cap: 2_000_000,
            ce_budget: 5000,
            harmonic_budget: 2000,
            max_degree: 8,
            power_iters: 500,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ForgeConfig {
    /// Coefficient bound for the plane rotation search.
    pub height: u32,
    /// Coefficient bound for the isotropic vector search.
    pub isotropy_bound: i64,
}

impl Default for ForgeConfig {
    fn default() -> Self {
        ForgeConfig {
            height: 10,
            isotropy_bound: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DynamicsConfig {
    pub radius: usize,
    pub probes: usize,
    pub degrees: Vec<usize>,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            radius: 6,
            probes: 500,
            degrees: vec![1, 2, 3, 4],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuspensionConfig {
    pub samples: usize,
    pub chart_radius: f64,
    pub steps: Vec<f64>,
    pub translations: usize,
}

impl Default for SuspensionConfig {
    fn default() -> Self {
        SuspensionConfig {
            samples: 8,
            chart_radius: 0.5,
            steps: vec![1e-2, 5e-3, 2.5e-3],
            translations: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    /// Size of the worker pool; results do not depend on it.
    pub workers: usize,
    pub tolerances: Tolerances,
    pub budgets: Budgets,
    pub forge: ForgeConfig,
    pub dynamics: DynamicsConfig,
    pub suspension: SuspensionConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 20_240_917,
            workers: 1,
            tolerances: Tolerances::default(),
            budgets: Budgets::default(),
            forge: ForgeConfig::default(),
            dynamics: DynamicsConfig::default(),
            suspension: SuspensionConfig::default(),
        }
    }
}

/// Variables read by the argument parser rather than merged into the config.
pub const FLAG_VARIABLES: [&str; 5] = ["FOLIATION_CONFIG", "FOLIATION_SEED", "FOLIATION_WORKERS", "FOLIATION_OUT", "FOLIATION_CACHE"];

const SECTIONS: [&str; 5] = ["tolerances", "budgets", "forge", "dynamics", "suspension"];

fn parse_value(raw: &str) -> toml::Value {
    toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}

impl Config {
    /// Merge a TOML document and environment overrides over the defaults.
    /// `env` is passed in so callers control exactly what is read.
    pub fn resolve<I>(toml_text: Option<&str>, env: I) -> Result<Config, CliError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut table: toml::Table = match toml_text {
            Some(t) => toml::from_str(t).map_err(|e| CliError::Validation(format!("config: {e}")))?,
            None => toml::Table::new(),
        };
        let mut overrides: Vec<(String, String)> = env
            .into_iter()
            .filter(|(k, _)| k.starts_with("FOLIATION_") && !FLAG_VARIABLES.contains(&k.as_str()))
            .collect();
        overrides.sort();
        for (key, raw) in overrides {
            let rest = key["FOLIATION_".len()..].to_ascii_lowercase();
            let section = SECTIONS.iter().find(|s| rest.starts_with(&format!("{s}_")));
            let value = parse_value(&raw);
            match section {
                Some(s) => {
                    let field = rest[s.len() + 1..].to_string();
                    let entry = table
                        .entry(s.to_string())
                        .or_insert_with(|| toml::Value::Table(toml::Table::new()));
                    match entry {
                        toml::Value::Table(t) => {
                            t.insert(field, value);
                        }
                        _ => return Err(CliError::Validation(format!("config: {s} is not a table"))),
                    }
                }
                None => {
                    table.insert(rest, value);
                }
            }
        }
        let config: Config = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| CliError::Validation(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let t = &self.tolerances;
        for (name, v) in [
            ("dedup_tol", t.dedup_tol),
            ("residual_tol", t.residual_tol),
            ("svd_threshold", t.svd_threshold),
            ("power_tol", t.power_tol),
            ("chart_radius", self.suspension.chart_radius),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Validation(format!("{name} must be positive, got {v}")));
            }
        }
        let b = &self.budgets;
        for (name, v) in [
            ("element_cap", b.element_cap),
            ("ce_budget", b.ce_budget),
            ("harmonic_budget", b.harmonic_budget),
            ("max_degree", b.max_degree),
            ("power_iters", b.power_iters),
            ("workers", self.workers),
            ("radius", self.dynamics.radius),
            ("probes", self.dynamics.probes),
            ("height", self.forge.height as usize),
        ] {
            if v < 1 {
                return Err(CliError::Validation(format!("{name} must be at least 1")));
            }
        }
        if let Some(d) = self.dynamics.degrees.iter().find(|&&d| d > b.max_degree) {
            return Err(CliError::Budget(format!("degree {d} exceeds max_degree {}", b.max_degree)));
        }
        Ok(())
    }

    /// Everything that can change a report. The worker count is left out
    /// because results do not depend on it.
    pub fn report_snapshot(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("config serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("workers");
        }
        v
    }
}
