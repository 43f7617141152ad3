//! Scenario and sweep configuration files: strict JSON with a version gate.
//!
//! Unknown fields are rejected everywhere (config drift should fail loudly),
//! `version` must equal [`SCENARIO_VERSION`], and generators that draw random
//! data refuse to run without a seed.

use std::fs;
use std::path::Path;

use nalgebra::DVector;
use serde::Deserialize;

use crate::biortho::{random_system, worked_example, Construction, SystemOfVectors, DEFECT_TOL};
use crate::extension::auerbach_search;
use crate::hilbert::{
    build_duality_family, geometric_weights, uniform_weights, HilbertStructure,
};
use crate::norms::{Exponent, Functional, NormSpec};

use super::CliError;

/// The only accepted `version` value in scenario and sweep files.
pub const SCENARIO_VERSION: u32 = 1;

/// Hard cap on sweep dimensions (desk scale).
pub const SWEEP_DIM_CAP: usize = 200;

/// Exchange-sweep budget when the auerbach generator runs inside a scenario.
const GENERATOR_MAX_SWEEPS: usize = 64;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// A construction-pipeline scenario: space, system source, embedding recipe,
/// which constructions to run, and the audit tolerances.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: u32,
    pub name: String,
    /// Norm description in the same shape `NormSpec::to_json` writes.
    pub space: serde_json::Value,
    pub system: SystemConfig,
    #[serde(default)]
    pub hilbert: HilbertConfig,
    #[serde(default = "default_constructions")]
    pub constructions: Vec<Construction>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn default_constructions() -> Vec<Construction> {
    vec![Construction::Literal, Construction::Complement]
}

/// Where the vectors come from: exactly one of `explicit` or `generator`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    #[serde(default)]
    pub explicit: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub generator: Option<GeneratorKind>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Seeded unit-norm vectors, redrawn until well-conditioned.
    Random,
    /// Run the determinant-maximization search and use its system.
    Auerbach,
    /// The standard coordinate basis.
    StandardBasis,
    /// The built-in 2-dimensional worked example's vectors.
    Example12,
}

impl GeneratorKind {
    pub fn label(self) -> &'static str {
        match self {
            GeneratorKind::Random => "random",
            GeneratorKind::Auerbach => "auerbach",
            GeneratorKind::StandardBasis => "standard-basis",
            GeneratorKind::Example12 => "example12",
        }
    }

    /// Generators that draw random data must be seeded for reproducibility.
    pub fn needs_seed(self) -> bool {
        matches!(self, GeneratorKind::Random | GeneratorKind::Auerbach)
    }
}

/// Functional family and weights for the Hilbert embedding.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertConfig {
    #[serde(default)]
    pub functionals: FunctionalSource,
    #[serde(default)]
    pub weights: WeightSource,
}

/// `"from-duality-maps"`, `"from-biorthogonal"`, or `{"explicit": [[…]]}`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FunctionalSource {
    Named(FunctionalSourceName),
    Explicit(ExplicitRows),
}

impl Default for FunctionalSource {
    fn default() -> Self {
        FunctionalSource::Named(FunctionalSourceName::FromDualityMaps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionalSourceName {
    /// Rows of the inverse system matrix (square systems only).
    FromBiorthogonal,
    /// Duality maps of the unit-normalized vectors (norm-decreasing family).
    FromDualityMaps,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitRows {
    pub explicit: Vec<Vec<f64>>,
}

/// `"geometric"`, `"uniform"`, or `{"explicit": […]}` (must sum to 1).
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum WeightSource {
    Named(WeightName),
    Explicit(ExplicitWeights),
}

impl Default for WeightSource {
    fn default() -> Self {
        WeightSource::Named(WeightName::Geometric)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightName {
    Geometric,
    Uniform,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitWeights {
    pub explicit: Vec<f64>,
}

/// Audit tolerances; the `--tol` flag overrides `defect` when set.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_defect_tol")]
    pub defect: f64,
    #[serde(default = "default_continuity_tol")]
    pub continuity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { defect: DEFECT_TOL, continuity: default_continuity_tol() }
    }
}

fn default_defect_tol() -> f64 {
    DEFECT_TOL
}

fn default_continuity_tol() -> f64 {
    1e-9
}

/// A dimension sweep over `ℓ_p^n`, `n = n_min..=n_max`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub version: u32,
    #[serde(default)]
    pub name: Option<String>,
    /// Exponent of the swept sequence-space family (number ≥ 1 or "inf").
    pub p: Exponent,
    pub n_min: usize,
    pub n_max: usize,
    pub generator: GeneratorKind,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_sweep_constructions")]
    pub constructions: Vec<Construction>,
}

fn default_sweep_constructions() -> Vec<Construction> {
    vec![Construction::Complement]
}

fn parse_strict<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn load_scenario(path: &Path) -> Result<ScenarioFile, CliError> {
    let scn: ScenarioFile = parse_strict(path)?;
    if scn.version != SCENARIO_VERSION {
        return Err(usage(format!(
            "{}: unsupported version {} (expected {SCENARIO_VERSION})",
            path.display(),
            scn.version
        )));
    }
    check_name(&scn.name)?;
    if scn.constructions.is_empty() {
        return Err(usage(format!("{}: scenario selects no constructions", path.display())));
    }
    Ok(scn)
}

pub fn load_sweep(path: &Path) -> Result<SweepFile, CliError> {
    let sw: SweepFile = parse_strict(path)?;
    if sw.version != SCENARIO_VERSION {
        return Err(usage(format!(
            "{}: unsupported version {} (expected {SCENARIO_VERSION})",
            path.display(),
            sw.version
        )));
    }
    if let Some(name) = &sw.name {
        check_name(name)?;
    }
    if !(2 <= sw.n_min && sw.n_min <= sw.n_max && sw.n_max <= SWEEP_DIM_CAP) {
        return Err(usage(format!(
            "dim range must satisfy 2 <= n_min <= n_max <= {SWEEP_DIM_CAP}, got [{}, {}]",
            sw.n_min, sw.n_max
        )));
    }
    if sw.generator == GeneratorKind::Example12 {
        return Err(usage("the example12 generator is fixed to dimension 2; it cannot sweep"));
    }
    if sw.constructions.is_empty() {
        return Err(usage("sweep selects no constructions"));
    }
    Ok(sw)
}

/// Report names become file names; keep them to a safe character set.
pub fn check_name(name: &str) -> Result<(), CliError> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
        && !name.starts_with('.');
    if ok {
        Ok(())
    } else {
        Err(usage(format!(
            "name {name:?} must be nonempty ASCII [A-Za-z0-9._-] and not start with '.'"
        )))
    }
}

/// Materialize the vector system a config describes.
///
/// `fallback_seed` is the global `--seed` flag; an in-file seed wins.
pub fn build_system(
    space: &NormSpec,
    cfg: &SystemConfig,
    fallback_seed: Option<u64>,
) -> Result<SystemOfVectors, CliError> {
    match (&cfg.explicit, cfg.generator) {
        (Some(rows), None) => {
            if cfg.seed.is_some() {
                return Err(usage("system.seed applies to generators, not explicit vectors"));
            }
            let vectors: Vec<DVector<f64>> =
                rows.iter().map(|r| DVector::from_column_slice(r)).collect();
            Ok(SystemOfVectors::new(space.clone(), vectors)?)
        }
        (None, Some(gen)) => {
            let seed = cfg.seed.or(fallback_seed);
            if gen.needs_seed() && seed.is_none() {
                return Err(usage(format!(
                    "generator {:?} requires a seed (system.seed or --seed)",
                    gen.label()
                )));
            }
            match gen {
                GeneratorKind::Random => {
                    Ok(random_system(space, seed.expect("checked above"))?)
                }
                GeneratorKind::Auerbach => Ok(auerbach_search(
                    space,
                    GENERATOR_MAX_SWEEPS,
                    seed.expect("checked above"),
                )?
                .system),
                GeneratorKind::StandardBasis => {
                    Ok(SystemOfVectors::standard_basis(space.clone()))
                }
                GeneratorKind::Example12 => {
                    if space.dim() != 2 {
                        return Err(usage(format!(
                            "the example12 generator needs a 2-dimensional space, got dim {}",
                            space.dim()
                        )));
                    }
                    let (x1, x2) = worked_example::vectors();
                    Ok(SystemOfVectors::new(space.clone(), vec![x1, x2])?)
                }
            }
        }
        _ => Err(usage("system must set exactly one of \"explicit\" or \"generator\"")),
    }
}

/// Build the Hilbert embedding a config describes for the given system.
pub fn build_hilbert(
    space: &NormSpec,
    system: &SystemOfVectors,
    cfg: &HilbertConfig,
) -> Result<HilbertStructure, CliError> {
    let functionals: Vec<Functional> = match &cfg.functionals {
        FunctionalSource::Named(FunctionalSourceName::FromDualityMaps) => {
            build_duality_family(space, system.vectors())?
        }
        FunctionalSource::Named(FunctionalSourceName::FromBiorthogonal) => {
            if system.len() != space.dim() {
                return Err(usage(format!(
                    "hilbert.functionals = \"from-biorthogonal\" needs a square system \
                     (n = dim), got {} vectors in dim {}",
                    system.len(),
                    space.dim()
                )));
            }
            let inv = system.column_matrix().try_inverse().ok_or_else(|| {
                usage("system matrix is singular; it has no biorthogonal functionals")
            })?;
            (0..system.len()).map(|i| Functional::new(inv.row(i).transpose())).collect()
        }
        FunctionalSource::Explicit(rows) => {
            rows.explicit.iter().map(|r| Functional::from_slice(r)).collect()
        }
    };
    let m = functionals.len();
    let weights = match &cfg.weights {
        WeightSource::Named(WeightName::Geometric) => geometric_weights(m),
        WeightSource::Named(WeightName::Uniform) => uniform_weights(m),
        WeightSource::Explicit(w) => DVector::from_column_slice(&w.explicit),
    };
    Ok(HilbertStructure::new(space.clone(), functionals, weights)?)
}
