//! TOML configuration model and builders for the CLI.
//!
//! Parsing is strict (unknown keys are rejected); cross-references between
//! sections (order vs. space kind, flow vs. order, scheme vs. index set)
//! are checked by the `build_*` methods, which return `Error::Config` with
//! a message naming the offending key.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geometry::{GeodesicSegment, Space};
use crate::order::OrderStructure;
use crate::schemes::{ArithmeticSchedule, BrowderConfig, KmConfig, LambdaRule};
use crate::semigroup::{Domain, IndexSet, SemigroupSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub seed: Option<u64>,
    pub out: Option<String>,
    pub space: SpaceConfig,
    pub order: OrderConfig,
    pub semigroup: SemigroupConfig,
    #[serde(default)]
    pub probes: Vec<f64>,
    pub scheme: Option<SchemeConfig>,
    pub uar: Option<UarConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub kind: String,
    pub dim: usize,
    pub kappa: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderConfig {
    pub kind: String,
    pub a: Option<Vec<f64>>,
    pub b: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupConfig {
    pub flow: String,
    pub index: Option<String>,
    pub index_step: Option<f64>,
    pub rates: Option<Vec<f64>>,
    pub attractor: Option<Vec<f64>>,
    pub speed: Option<f64>,
    pub domain: Option<DomainConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub kind: String,
    pub center: Option<Vec<f64>>,
    pub radius: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeConfig {
    pub kind: String,
    pub x0: Vec<f64>,
    pub t0: f64,
    pub lambda: Option<f64>,
    pub stop_tol: Option<f64>,
    pub max_iters: Option<usize>,
    pub outer_iters: Option<usize>,
    pub inner_tol: Option<f64>,
    pub lambda_rule: Option<String>,
    pub lambda0: Option<f64>,
    pub lambdas: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UarConfig {
    pub h: f64,
    pub t_grid: Vec<f64>,
    pub n_points: usize,
}

/// A runnable scheme built from the `[scheme]` section.
#[derive(Debug)]
pub enum SchemeRun {
    Km(KmConfig),
    Browder(BrowderConfig),
}

pub fn parse_config(text: &str) -> Result<ConfigFile> {
    toml::from_str(text).map_err(|e| Error::Config(format!("config parse failed: {e}")))
}

pub fn load_config(path: &Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

fn require<T>(field: Option<T>, key: &str, context: &str) -> Result<T> {
    field.ok_or_else(|| Error::Config(format!("{context} requires `{key}`")))
}

fn reject<T>(field: &Option<T>, key: &str, context: &str) -> Result<()> {
    if field.is_some() {
        return Err(Error::Config(format!("{context} does not take `{key}`")));
    }
    Ok(())
}

impl ConfigFile {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn build_space(&self) -> Result<Space> {
        let s = &self.space;
        match s.kind.as_str() {
            "euclidean" => {
                if let Some(k) = s.kappa {
                    if k != 0.0 {
                        return Err(Error::Config(
                            "a euclidean space has kappa 0; drop the key or set it to 0".into(),
                        ));
                    }
                }
                Space::euclidean(s.dim)
            }
            "sphere" => Space::sphere(require(s.kappa, "kappa", "[space] kind = \"sphere\"")?, s.dim),
            "hyperbolic" => {
                Space::hyperbolic(require(s.kappa, "kappa", "[space] kind = \"hyperbolic\"")?, s.dim)
            }
            other => Err(Error::Config(format!("unknown space kind `{other}`"))),
        }
    }

    pub fn build_order(&self) -> Result<OrderStructure> {
        let space = self.build_space()?;
        let o = &self.order;
        match o.kind.as_str() {
            "coordinatewise_cone" => {
                reject(&o.a, "a", "[order] kind = \"coordinatewise_cone\"")?;
                reject(&o.b, "b", "[order] kind = \"coordinatewise_cone\"")?;
                OrderStructure::coordinatewise_cone(space)
            }
            "arc" => {
                let a = space.point(require(o.a.clone(), "a", "[order] kind = \"arc\"")?)?;
                let b = space.point(require(o.b.clone(), "b", "[order] kind = \"arc\"")?)?;
                Ok(OrderStructure::arc_order(GeodesicSegment::new(a, b)?))
            }
            "equality" => {
                reject(&o.a, "a", "[order] kind = \"equality\"")?;
                reject(&o.b, "b", "[order] kind = \"equality\"")?;
                Ok(OrderStructure::equality(space))
            }
            other => Err(Error::Config(format!("unknown order kind `{other}`"))),
        }
    }

    fn build_index(&self) -> Result<IndexSet> {
        let sg = &self.semigroup;
        match sg.index.as_deref().unwrap_or("continuous") {
            "continuous" => {
                reject(&sg.index_step, "index_step", "a continuous index set")?;
                Ok(IndexSet::Continuous)
            }
            "discrete" => IndexSet::discrete(require(
                sg.index_step,
                "index_step",
                "[semigroup] index = \"discrete\"",
            )?),
            other => Err(Error::Config(format!("unknown index set kind `{other}`"))),
        }
    }

    fn build_domain(&self, space: &Space) -> Result<Domain> {
        let d = require(
            self.semigroup.domain.as_ref(),
            "domain",
            "[semigroup] flow = \"diagonal_flow\"",
        )?;
        match d.kind.as_str() {
            "ball" => {
                let center =
                    space.point(require(d.center.clone(), "center", "[semigroup.domain] ball")?)?;
                let radius = require(d.radius, "radius", "[semigroup.domain] ball")?;
                if !(radius > 0.0) || !radius.is_finite() {
                    return Err(Error::Config(format!(
                        "domain radius must be positive, got {radius}"
                    )));
                }
                Ok(Domain::Ball { center, radius })
            }
            other => Err(Error::Config(format!(
                "diagonal_flow takes a ball domain, got `{other}`"
            ))),
        }
    }

    pub fn build_semigroup(&self) -> Result<SemigroupSpec> {
        let space = self.build_space()?;
        let order = self.build_order()?;
        let index = self.build_index()?;
        let sg = &self.semigroup;
        match sg.flow.as_str() {
            "diagonal_flow" => {
                reject(&sg.speed, "speed", "diagonal_flow")?;
                let rates = require(sg.rates.clone(), "rates", "diagonal_flow")?;
                let attractor =
                    space.point(require(sg.attractor.clone(), "attractor", "diagonal_flow")?)?;
                let domain = self.build_domain(&space)?;
                SemigroupSpec::diagonal_flow(order, index, rates, attractor, domain)
            }
            "arc_drift" => {
                reject(&sg.rates, "rates", "arc_drift")?;
                reject(&sg.attractor, "attractor", "arc_drift")?;
                reject(&sg.domain, "domain", "arc_drift (the order segment is the domain)")?;
                let speed = require(sg.speed, "speed", "arc_drift")?;
                let segment = order
                    .segment()
                    .ok_or_else(|| {
                        Error::Config("arc_drift requires [order] kind = \"arc\"".into())
                    })?
                    .clone();
                SemigroupSpec::arc_drift(order, index, segment, speed)
            }
            "translation" | "expansive_flow" => {
                reject(&sg.rates, "rates", sg.flow.as_str())?;
                reject(&sg.attractor, "attractor", sg.flow.as_str())?;
                reject(&sg.speed, "speed", sg.flow.as_str())?;
                reject(&sg.domain, "domain", sg.flow.as_str())?;
                if sg.flow == "translation" {
                    SemigroupSpec::translation(order, index)
                } else {
                    SemigroupSpec::expansive_flow(order, index)
                }
            }
            other => Err(Error::Config(format!("unknown flow `{other}`"))),
        }
    }

    pub fn build_scheme(&self) -> Result<SchemeRun> {
        let sg = self.build_semigroup()?;
        let sc = require(self.scheme.as_ref(), "[scheme]", "the run command")?;
        let x0 = sg.space().point(sc.x0.clone())?;
        match sc.kind.as_str() {
            "km" => {
                reject(&sc.outer_iters, "outer_iters", "[scheme] kind = \"km\"")?;
                reject(&sc.inner_tol, "inner_tol", "[scheme] kind = \"km\"")?;
                reject(&sc.lambda_rule, "lambda_rule", "[scheme] kind = \"km\"")?;
                reject(&sc.lambda0, "lambda0", "[scheme] kind = \"km\"")?;
                reject(&sc.lambdas, "lambdas", "[scheme] kind = \"km\"")?;
                let config = KmConfig::new(
                    sg,
                    x0,
                    require(sc.lambda, "lambda", "[scheme] kind = \"km\"")?,
                    ArithmeticSchedule::new(sc.t0)?,
                    self.probes.clone(),
                    require(sc.stop_tol, "stop_tol", "[scheme] kind = \"km\"")?,
                    require(sc.max_iters, "max_iters", "[scheme] kind = \"km\"")?,
                )?;
                Ok(SchemeRun::Km(config))
            }
            "browder" => {
                reject(&sc.lambda, "lambda", "[scheme] kind = \"browder\"")?;
                reject(&sc.stop_tol, "stop_tol", "[scheme] kind = \"browder\"")?;
                reject(&sc.max_iters, "max_iters", "[scheme] kind = \"browder\"")?;
                let rule = match sc.lambda_rule.as_deref().unwrap_or("harmonic") {
                    "harmonic" => {
                        reject(&sc.lambdas, "lambdas", "lambda_rule = \"harmonic\"")?;
                        LambdaRule::Harmonic {
                            lambda0: require(sc.lambda0, "lambda0", "lambda_rule = \"harmonic\"")?,
                        }
                    }
                    "explicit" => {
                        reject(&sc.lambda0, "lambda0", "lambda_rule = \"explicit\"")?;
                        LambdaRule::Explicit(require(
                            sc.lambdas.clone(),
                            "lambdas",
                            "lambda_rule = \"explicit\"",
                        )?)
                    }
                    other => {
                        return Err(Error::Config(format!("unknown lambda rule `{other}`")));
                    }
                };
                let config = BrowderConfig::new(
                    sg,
                    x0,
                    rule,
                    sc.t0,
                    require(sc.outer_iters, "outer_iters", "[scheme] kind = \"browder\"")?,
                    require(sc.inner_tol, "inner_tol", "[scheme] kind = \"browder\"")?,
                    self.probes.clone(),
                )?;
                Ok(SchemeRun::Browder(config))
            }
            other => Err(Error::Config(format!("unknown scheme kind `{other}`"))),
        }
    }

    pub fn uar_section(&self) -> Result<&UarConfig> {
        require(self.uar.as_ref(), "[uar]", "the uar command")
    }
}
