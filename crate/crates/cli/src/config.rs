//! Run configuration: JSON schema, validation, and construction of the
//! systems, potentials, dictionaries, and points an experiment needs.

use serde::{Deserialize, Serialize};

use gibbstate::rat::rat_from_string;
use gibbstate::{
    word_from_string, AnchoredWord, DynamicalSystem, LocallyConstantPotential, Perturbation, Point,
    PointSampler, Potential, ShiftSystem, TestDictionary, TorusEndomorphism, TrigScalar, TrigTerm,
    WeightScheme,
};

use crate::AppError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub system: SystemSpec,
    #[serde(default)]
    pub potential: PotentialSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_list: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dictionary: Option<DictionarySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<PointSampler>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<AnchorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf_cap: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemSpec {
    Torus {
        matrix: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        perturbation: Option<PerturbationSpec>,
    },
    Shift {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        adjacency: Option<Vec<Vec<u8>>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationSpec {
    pub epsilon: f64,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub freq: Vec<i64>,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    #[default]
    Zero,
    Trig {
        #[serde(default)]
        constant: f64,
        terms: Vec<(Vec<i64>, f64, f64)>,
    },
    Table {
        range: usize,
        entries: Vec<(String, f64)>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<ShiftPointSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftPointSpec {
    #[serde(default)]
    pub head: String,
    pub tail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DictionarySpec {
    Characters {
        max_freq: i64,
        #[serde(default)]
        scheme: SchemeSpec,
    },
    Cylinders {
        max_len: usize,
        #[serde(default)]
        scheme: SchemeSpec,
    },
    Constant,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeSpec {
    Uniform,
    #[default]
    Decay,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorSpec {
    #[serde(default)]
    pub past: String,
    pub future: String,
}

/// A config is either the bare object or a previously emitted manifest; a
/// manifest reruns the experiment it recorded.
pub fn parse_config(text: &str) -> Result<Config, AppError> {
    #[derive(Deserialize)]
    struct ManifestEnvelope {
        config: Config,
    }
    let direct: Result<Config, _> = serde_json::from_str(text);
    match direct {
        Ok(c) => Ok(c),
        Err(first) => serde_json::from_str::<ManifestEnvelope>(text)
            .map(|m| m.config)
            .map_err(|_| AppError::Config(format!("config does not match the schema: {first}"))),
    }
}

/// A system paired with a compatible potential, ready to run.
pub enum Instance {
    Torus(TorusEndomorphism, TrigScalar),
    Shift(ShiftSystem, LocallyConstantPotential),
}

impl Instance {
    pub fn sys(&self) -> &dyn DynamicalSystem {
        match self {
            Instance::Torus(f, _) => f,
            Instance::Shift(s, _) => s,
        }
    }

    pub fn phi(&self) -> &dyn Potential {
        match self {
            Instance::Torus(_, p) => p,
            Instance::Shift(_, p) => p,
        }
    }
}

pub fn build_instance(cfg: &Config) -> Result<Instance, AppError> {
    match &cfg.system {
        SystemSpec::Torus {
            matrix,
            perturbation,
        } => {
            let pert = perturbation.as_ref().map(|p| Perturbation {
                epsilon: p.epsilon,
                terms: p
                    .terms
                    .iter()
                    .map(|t| TrigTerm {
                        freq: t.freq.clone(),
                        cos: t.cos.clone(),
                        sin: t.sin.clone(),
                    })
                    .collect(),
            });
            let f = TorusEndomorphism::new(matrix, pert).map_err(AppError::config_stage)?;
            let dim = f.dim();
            let phi = match &cfg.potential {
                PotentialSpec::Zero => TrigScalar::zero(dim),
                PotentialSpec::Trig { constant, terms } => {
                    TrigScalar::new(dim, *constant, terms.clone())
                        .map_err(AppError::config_stage)?
                }
                PotentialSpec::Table { .. } => {
                    return Err(AppError::Config(
                        "table potentials apply to shift systems; use kind = \"trig\"".into(),
                    ))
                }
            };
            Ok(Instance::Torus(f, phi))
        }
        SystemSpec::Shift {
            alphabet,
            adjacency,
        } => {
            let sys = match (alphabet, adjacency) {
                (Some(_), Some(_)) => {
                    return Err(AppError::Config(
                        "give either alphabet (full shift) or adjacency, not both".into(),
                    ))
                }
                (Some(s), None) => ShiftSystem::full_shift(*s).map_err(AppError::config_stage)?,
                (None, Some(rows)) => ShiftSystem::new(rows).map_err(AppError::config_stage)?,
                (None, None) => {
                    return Err(AppError::Config(
                        "shift system needs alphabet or adjacency".into(),
                    ))
                }
            };
            let phi = match &cfg.potential {
                PotentialSpec::Zero => LocallyConstantPotential::zero(&sys),
                PotentialSpec::Table { range, entries } => {
                    let table: Vec<(Vec<u8>, f64)> = entries
                        .iter()
                        .map(|(w, v)| {
                            Ok((word_from_string(w).map_err(AppError::config_stage)?, *v))
                        })
                        .collect::<Result<_, AppError>>()?;
                    LocallyConstantPotential::new(&sys, *range, &table)
                        .map_err(AppError::config_stage)?
                }
                PotentialSpec::Trig { .. } => {
                    return Err(AppError::Config(
                        "trig potentials apply to torus systems; use kind = \"table\"".into(),
                    ))
                }
            };
            Ok(Instance::Shift(sys, phi))
        }
    }
}

pub fn build_point(cfg: &Config, inst: &Instance) -> Result<Point, AppError> {
    let spec = cfg
        .point
        .as_ref()
        .ok_or_else(|| AppError::Config("this command needs a point in the config".into()))?;
    let p = match (&spec.torus, &spec.shift) {
        (Some(coords), None) => {
            let rats = coords
                .iter()
                .map(|s| rat_from_string(s).map_err(AppError::config_stage))
                .collect::<Result<Vec<_>, _>>()?;
            Point::torus(rats)
        }
        (None, Some(sp)) => {
            let head = word_from_string(&sp.head).map_err(AppError::config_stage)?;
            let tail = word_from_string(&sp.tail).map_err(AppError::config_stage)?;
            Point::shift(head, tail).map_err(AppError::config_stage)?
        }
        _ => {
            return Err(AppError::Config(
                "point needs exactly one of torus coordinates or a shift word".into(),
            ))
        }
    };
    inst.sys()
        .validate_point(&p)
        .map_err(AppError::config_stage)?;
    Ok(p)
}

pub fn build_dictionary(cfg: &Config, inst: &Instance) -> Result<TestDictionary, AppError> {
    let spec = cfg
        .dictionary
        .as_ref()
        .ok_or_else(|| AppError::Config("this command needs a dictionary in the config".into()))?;
    let scheme = |s: &SchemeSpec| match s {
        SchemeSpec::Uniform => WeightScheme::Uniform,
        SchemeSpec::Decay => WeightScheme::Decay,
    };
    match (spec, inst) {
        (
            DictionarySpec::Characters {
                max_freq,
                scheme: sc,
            },
            Instance::Torus(f, _),
        ) => TestDictionary::torus_characters(f.dim(), *max_freq, scheme(sc))
            .map_err(AppError::config_stage),
        (
            DictionarySpec::Cylinders {
                max_len,
                scheme: sc,
            },
            Instance::Shift(s, _),
        ) => s
            .cylinder_dictionary(*max_len, scheme(sc))
            .map_err(AppError::config_stage),
        (DictionarySpec::Constant, _) => Ok(TestDictionary::constant()),
        (DictionarySpec::Characters { .. }, _) => Err(AppError::Config(
            "character dictionaries pair with torus systems".into(),
        )),
        (DictionarySpec::Cylinders { .. }, _) => Err(AppError::Config(
            "cylinder dictionaries pair with shift systems".into(),
        )),
    }
}

pub fn build_anchor(cfg: &Config) -> Result<AnchoredWord, AppError> {
    let spec = cfg
        .anchor
        .as_ref()
        .ok_or_else(|| AppError::Config("this command needs an anchor in the config".into()))?;
    let past = word_from_string(&spec.past).map_err(AppError::config_stage)?;
    let future = word_from_string(&spec.future).map_err(AppError::config_stage)?;
    if future.is_empty() {
        return Err(AppError::Config(
            "anchor future word must be nonempty".into(),
        ));
    }
    Ok(AnchoredWord::new(past, future))
}

/// The n values an experiment runs over: `n_list`, or the single `n`.
pub fn depth_list(cfg: &Config) -> Result<Vec<usize>, AppError> {
    match (&cfg.n_list, cfg.n) {
        (Some(list), None) if !list.is_empty() => Ok(list.clone()),
        (None, Some(n)) => Ok(vec![n]),
        (Some(_), Some(_)) => Err(AppError::Config("give n or n_list, not both".into())),
        _ => Err(AppError::Config("this command needs n or n_list".into())),
    }
}
