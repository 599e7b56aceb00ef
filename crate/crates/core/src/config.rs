//! The JSON configuration read by `pbc`: a surface, its blowups, named sheaf
//! classes and report options.
//!
//! [`Config`] mirrors the document exactly so that
//! `parse(serialize(config)) == config`; [`Config::load`] resolves every
//! reference and re-runs the engine's own validation, prefixing each
//! diagnostic with the path of the offending field.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kclass::{LiftDatum, SheafClass};
use crate::picard_lattice::{BlowupNode, DivisorClass, Parent};
use crate::poisson_surface::{BaseCase, BasePoint, Kodaira, SurfaceModel};
use crate::pseudo_twist::JetProfile;
use crate::rigidity::RestrictionData;

pub const DEFAULT_COEFF_BOUND: i64 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub surface: SurfaceSpec,
    #[serde(default)]
    pub blowups: Vec<BlowupSpec>,
    #[serde(default)]
    pub sheaves: BTreeMap<String, SheafSpec>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub base_case: BaseCase,
    #[serde(default)]
    pub genus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcase: Option<Kodaira>,
    #[serde(default)]
    pub base_points: Vec<BasePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupSpec {
    /// `base:ID` or `node:K`.
    pub parent: String,
    pub on_anticanonical: bool,
    /// Defaults to 1 on the curve and 0 off it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafSpec {
    pub rank: u32,
    /// Divisor expression such as `f - e1`.
    pub c1: String,
    pub chi: i64,
    /// Number of blowups of the surface the class lives on; defaults to all.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<usize>,
    /// Lift datum from `stage` to the full surface.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jets: Option<Vec<JetSpec>>,
    /// Defaults to `jets` when jets are given and `disjoint` otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction: Option<RestrictionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_end: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetSpec {
    pub site: String,
    pub length: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RestrictionSpec {
    Disjoint,
    /// Use the sheaf's own jet profile on both sides.
    Jets,
    Explicit {
        hom_dim: i64,
        ext_minus1_dim: i64,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Summary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_bound")]
    pub coeff_bound: i64,
    #[serde(default)]
    pub format: OutputFormat,
    /// Include the bounded (-2)-class search in lattice reports.
    #[serde(default)]
    pub minus_two_classes: bool,
}

fn default_bound() -> i64 {
    DEFAULT_COEFF_BOUND
}

impl Default for Options {
    fn default() -> Self {
        Options {
            coeff_bound: DEFAULT_COEFF_BOUND,
            format: OutputFormat::Json,
            minus_two_classes: false,
        }
    }
}

/// A named sheaf with every reference resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedSheaf {
    pub name: String,
    pub class: SheafClass,
    /// The surface the class lives on.
    pub home: SurfaceModel,
    pub lift: Option<LiftDatum>,
    pub jets: Option<JetProfile>,
    pub restriction: RestrictionData,
    pub dim_end: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub config: Config,
    pub surface: SurfaceModel,
    pub sheaves: BTreeMap<String, LoadedSheaf>,
}

fn at(path: impl std::fmt::Display) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Config(msg) if msg.starts_with('[') => Error::Config(format!("{path}{msg}")),
        Error::Config(msg) => Error::Config(format!("{path}.{msg}")),
        other => Error::Config(format!("{path}: {other}")),
    }
}

impl Config {
    /// Parses a JSON document; syntax and schema errors carry line and
    /// column.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn load(text: &str) -> Result<Loaded> {
        Config::parse(text)?.resolve()
    }

    pub fn resolve(self) -> Result<Loaded> {
        let surface = self.build_surface()?;
        if self.options.coeff_bound < 1 {
            return Err(at("options.coeff_bound")(Error::InvalidBound(
                self.options.coeff_bound,
            )));
        }
        let sheaves = self
            .sheaves
            .iter()
            .map(|(name, spec)| {
                resolve_sheaf(name, spec, &surface)
                    .map(|s| (name.clone(), s))
                    .map_err(at(format!("sheaves.{name}")))
            })
            .collect::<Result<_>>()?;
        Ok(Loaded {
            config: self,
            surface,
            sheaves,
        })
    }

    fn build_surface(&self) -> Result<SurfaceModel> {
        let s = &self.surface;
        let mut surface = SurfaceModel::new(
            s.base_case,
            s.genus,
            s.subcase,
            s.base_points.clone(),
            Vec::new(),
        )
        .map_err(at("surface"))?;
        for (i, spec) in self.blowups.iter().enumerate() {
            let path = format!("blowups[{i}]");
            let parent: Parent = spec.parent.parse().map_err(at(format!("{path}.parent")))?;
            if let Parent::Node(j) = parent {
                if j >= i {
                    return Err(Error::Config(format!(
                        "{path}.parent: `{}` does not name an earlier blowup (this is blowup {})",
                        spec.parent,
                        i + 1
                    )));
                }
            }
            let multiplicity = spec
                .multiplicity
                .unwrap_or(u32::from(spec.on_anticanonical));
            let node = BlowupNode {
                parent,
                on_anticanonical: spec.on_anticanonical,
                anticanonical_multiplicity: multiplicity,
            };
            surface = surface.with_blowup(node).map_err(at(path))?;
        }
        Ok(surface)
    }
}

fn resolve_sheaf(name: &str, spec: &SheafSpec, surface: &SurfaceModel) -> Result<LoadedSheaf> {
    let stage = spec.stage.unwrap_or(surface.n());
    let home = surface.truncated(stage).map_err(at("stage"))?;
    let c1 = DivisorClass::parse(&spec.c1, stage).map_err(at("c1"))?;
    let lift = spec.lift.as_ref().map(|v| LiftDatum(v.clone()));
    if let Some(datum) = &lift {
        let expected = surface.n() - stage;
        if datum.0.len() != expected {
            return Err(at("lift")(Error::LiftDatumLength {
                expected,
                found: datum.0.len(),
            }));
        }
        if let Some((index, &value)) = datum.0.iter().enumerate().find(|(_, &v)| v < 0) {
            return Err(at("lift")(Error::NegativeLiftDatum { index, value }));
        }
    }
    let jets = spec
        .jets
        .as_ref()
        .map(|j| resolve_jets(j, &home))
        .transpose()
        .map_err(at("jets"))?;
    let restriction = match (&spec.restriction, &jets) {
        (None, None) | (Some(RestrictionSpec::Disjoint), _) => RestrictionData::Disjoint,
        (None, Some(j)) | (Some(RestrictionSpec::Jets), Some(j)) => {
            RestrictionData::jets_self(j.clone())
        }
        (Some(RestrictionSpec::Jets), None) => {
            return Err(Error::Config(
                "restriction: kind `jets` needs a `jets` list".into(),
            ))
        }
        (
            Some(RestrictionSpec::Explicit {
                hom_dim,
                ext_minus1_dim,
            }),
            _,
        ) => {
            if *hom_dim < 0 || *ext_minus1_dim < 0 {
                return Err(Error::Config(
                    "restriction: dimensions must be non-negative".into(),
                ));
            }
            RestrictionData::Explicit {
                hom_dim: *hom_dim,
                ext_minus1_dim: *ext_minus1_dim,
            }
        }
    };
    let dim_end = spec.dim_end.unwrap_or(1);
    if dim_end == 0 {
        return Err(at("dim_end")(Error::ZeroEndomorphisms));
    }
    Ok(LoadedSheaf {
        name: name.to_string(),
        class: SheafClass::new(spec.rank, c1, spec.chi),
        home,
        lift,
        jets,
        restriction,
        dim_end,
    })
}

fn resolve_jets(specs: &[JetSpec], home: &SurfaceModel) -> Result<JetProfile> {
    let mut entries = Vec::with_capacity(specs.len());
    for (i, j) in specs.iter().enumerate() {
        let site: Parent = j.site.parse().map_err(at(format!("[{i}].site")))?;
        let exists = match site {
            Parent::Base(id) => {
                home.base_point(id).is_some()
                    && !home.forest().nodes().iter().any(|n| n.parent == site)
            }
            Parent::Node(k) => k < home.n(),
        };
        if !exists {
            return Err(Error::Config(format!(
                "[{i}].site: `{}` does not exist on this surface",
                j.site
            )));
        }
        entries.push((site, j.length));
    }
    JetProfile::new(entries)
}
