//! Problem files.
//!
//! A problem file is TOML with a mandatory `version` key:
//!
//! ```toml
//! version = 1
//! variables = ["u", "v", "w"]
//! weights = [1, 2, 2]
//! phi = "v^2 - u^2*w"
//! f = "u^6 + v^3 + w^3"
//! theta = ["u^2*w"]
//! # optional explicit generators of Theta_X, one component list per field
//! generators = [["u", "2*v", "2*w"], ["u", "v", "0"]]
//!
//! [options]
//! ordering = "wgrevlex"          # or "lex"
//! exponent_cap = 16
//! exponents = [10, 14, 10]       # certificate exponents m_i
//! asserted = ["lc_cohen_macaulay"]
//! kill_sets = [["y", "z"]]       # names or 1-based indices
//! polar_choice = [2]             # 1-based generator indices
//!
//! [options.sampler]
//! seed = 20240601
//! radii = 8
//! ```
//!
//! `phi = "0"` (or omitting `phi`) means `X` is the whole space.

use std::path::Path;
use std::sync::Arc;

use rxlip_core::derlog::{derlog_generators, Derlog};
use rxlip_core::field::VectorField;
use rxlip_core::invariants::DeformationProblem;
use rxlip_core::triviality::SamplerConfig;
use rxlip_core::{parse_poly, Poly, VarContext, WeightSystem};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Ordering {
    #[default]
    Wgrevlex,
    Lex,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerOptions {
    pub seed: Option<u64>,
    pub r_max: Option<f64>,
    pub radii: Option<usize>,
    pub radius_factor: Option<f64>,
    pub points_per_radius: Option<usize>,
    pub t_values: Option<Vec<f64>>,
    pub tolerance: Option<f64>,
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub ordering: Option<Ordering>,
    pub exponent_cap: Option<u32>,
    pub exponents: Option<Vec<u32>>,
    #[serde(default)]
    pub asserted: Vec<String>,
    pub kill_sets: Option<Vec<Vec<Coord>>>,
    pub polar_choice: Option<Vec<usize>>,
    #[serde(default)]
    pub sampler: SamplerOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    pub variables: Vec<String>,
    pub weights: Vec<u32>,
    #[serde(default)]
    pub phi: Option<String>,
    pub f: String,
    #[serde(default)]
    pub theta: Vec<String>,
    #[serde(default)]
    pub generators: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub options: Options,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let pf: ProblemFile = toml::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        if pf.version != FORMAT_VERSION {
            return Err(CliError::Input(format!("unsupported problem file version {} (expected {FORMAT_VERSION})", pf.version)));
        }
        if pf.variables.is_empty() {
            return Err(CliError::Input("no variables".into()));
        }
        if pf.weights.len() != pf.variables.len() {
            return Err(CliError::Input(format!(
                "{} weights for {} variables",
                pf.weights.len(),
                pf.variables.len()
            )));
        }
        Ok(pf)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn ctx(&self) -> Result<Arc<VarContext>, CliError> {
        Ok(VarContext::new(self.variables.iter().cloned(), false, false)?)
    }

    pub fn weight_system(&self) -> Result<WeightSystem, CliError> {
        Ok(WeightSystem::new(self.weights.clone())?)
    }

    pub fn poly(&self, s: &str) -> Result<Poly, CliError> {
        Ok(parse_poly(s, &self.ctx()?)?)
    }

    pub fn derlog(&self) -> Result<Derlog, CliError> {
        let ctx = self.ctx()?;
        let ws = self.weight_system()?;
        let phi = match &self.phi {
            Some(s) => parse_poly(s, &ctx)?,
            None => Poly::zero(&ctx),
        };
        let dl = if phi.is_zero() { Derlog::ambient(&ctx, &ws) } else { derlog_generators(&phi, &ws)? };
        match &self.generators {
            None => Ok(dl),
            Some(gens) => {
                let fields = gens
                    .iter()
                    .map(|g| {
                        if g.len() != ctx.n() {
                            return Err(CliError::Input(format!("generator has {} components, expected {}", g.len(), ctx.n())));
                        }
                        let comps = g.iter().map(|c| parse_poly(c, &ctx)).collect::<Result<Vec<_>, _>>()?;
                        Ok(VectorField::new(&ctx, comps)?)
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Ok(dl.with_generators(fields)?)
            }
        }
    }

    pub fn problem(&self, ordering: Ordering) -> Result<DeformationProblem, CliError> {
        let dl = self.derlog()?;
        let f = self.poly(&self.f)?;
        let thetas = self.theta.iter().map(|t| self.poly(t)).collect::<Result<Vec<_>, _>>()?;
        Ok(DeformationProblem::new(&dl, &f, &thetas)?.with_lex(ordering == Ordering::Lex))
    }

    /// Resolves names or 1-based indices to 0-based variable indices.
    pub fn resolve(&self, coords: &[Coord]) -> Result<Vec<usize>, CliError> {
        coords
            .iter()
            .map(|c| match c {
                Coord::Index(i) if (1..=self.variables.len()).contains(i) => Ok(i - 1),
                Coord::Index(i) => Err(CliError::Input(format!("coordinate index {i} out of range 1..={}", self.variables.len()))),
                Coord::Name(s) => self
                    .variables
                    .iter()
                    .position(|v| v == s)
                    .or_else(|| s.parse::<usize>().ok().filter(|i| (1..=self.variables.len()).contains(i)).map(|i| i - 1))
                    .ok_or_else(|| CliError::Input(format!("unknown coordinate `{s}`"))),
            })
            .collect()
    }

    pub fn sampler(&self) -> SamplerConfig {
        let s = &self.options.sampler;
        let d = SamplerConfig::default();
        SamplerConfig {
            seed: s.seed.unwrap_or(d.seed),
            r_max: s.r_max.unwrap_or(d.r_max),
            radii: s.radii.unwrap_or(d.radii),
            radius_factor: s.radius_factor.unwrap_or(d.radius_factor),
            points_per_radius: s.points_per_radius.unwrap_or(d.points_per_radius),
            t_values: s.t_values.clone().unwrap_or(d.t_values),
            tolerance: s.tolerance.unwrap_or(d.tolerance),
            step: s.step.unwrap_or(d.step),
        }
    }
}
