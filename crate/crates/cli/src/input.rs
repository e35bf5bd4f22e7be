//! System, family and measure files.

use std::fs;
use std::path::Path;

use cbpower::exact::{self, Rational};
use cbpower::measures::{Atom, Segment};
use cbpower::{BeliefMeasure, ExplicitVotingSystem, WeightedVotingSystem};
use serde::Deserialize;

use crate::error::{CliError, Result};

/// A rational written as a JSON number or a string such as `"3/10"`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Num {
    Number(serde_json::Number),
    Text(String),
}

impl Num {
    fn to_rational(&self) -> Result<Rational> {
        Ok(match self {
            Num::Number(n) => exact::parse_rational(&n.to_string())?,
            Num::Text(s) => exact::parse_rational(s)?,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    weights: Vec<Num>,
    quota: Option<Num>,
    relative_quota: Option<Num>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    voters: usize,
    winning: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomEntry {
    p: Num,
    mass: Num,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentEntry {
    a: Num,
    b: Num,
    mass: Num,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureFile {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default)]
    atoms: Vec<AtomEntry>,
    #[serde(default)]
    segments: Vec<SegmentEntry>,
}

pub enum SystemInput {
    Weighted(WeightedVotingSystem),
    Explicit(ExplicitVotingSystem),
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// A weighted system (`weights` plus `quota` or `relative_quota`) or an
/// explicit family (`voters` plus `winning`).
pub fn load_system(path: &Path) -> Result<SystemInput> {
    let text = read(path)?;
    let value: serde_json::Value = parse_json(path, &text)?;
    if value.get("winning").is_some() {
        return Ok(SystemInput::Explicit(family_from(path, &text)?));
    }
    let file: SystemFile = parse_json(path, &text)?;
    let weights = file
        .weights
        .iter()
        .map(Num::to_rational)
        .collect::<Result<Vec<_>>>()?;
    let sys = match (&file.quota, &file.relative_quota) {
        (Some(q), None) => WeightedVotingSystem::new(weights, q.to_rational()?)?,
        (None, Some(r)) => WeightedVotingSystem::with_relative_quota(weights, &r.to_rational()?)?,
        _ => {
            return Err(CliError::Format {
                path: path.to_path_buf(),
                message: "exactly one of `quota` and `relative_quota` is required".into(),
            })
        }
    };
    Ok(SystemInput::Weighted(sys))
}

pub fn load_weighted(path: &Path) -> Result<WeightedVotingSystem> {
    match load_system(path)? {
        SystemInput::Weighted(sys) => Ok(sys),
        SystemInput::Explicit(_) => Err(CliError::Usage(format!(
            "{} holds an explicit family; this command needs weights and a quota",
            path.display()
        ))),
    }
}

pub fn load_family(path: &Path) -> Result<ExplicitVotingSystem> {
    let text = read(path)?;
    family_from(path, &text)
}

fn family_from(path: &Path, text: &str) -> Result<ExplicitVotingSystem> {
    let file: FamilyFile = parse_json(path, text)?;
    let mut winning = Vec::with_capacity(file.winning.len());
    for coalition in &file.winning {
        let members = coalition
            .iter()
            .map(|&v| {
                if v == 0 || v > file.voters {
                    Err(CliError::Validation(format!(
                        "voter label {v} outside 1..={}",
                        file.voters
                    )))
                } else {
                    Ok(v - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        winning.push(members);
    }
    Ok(ExplicitVotingSystem::new(file.voters, &winning)?)
}

/// A measure shorthand or the path of a measure file.
pub fn load_measure(arg: &str) -> Result<BeliefMeasure> {
    if let Some(mu) = shorthand(arg) {
        return Ok(mu);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "{arg:?} is neither a measure shorthand \
             (penrose-banzhaf, shapley-shubik, unanimity) nor an existing file"
        )));
    }
    let text = read(path)?;
    let file: MeasureFile = parse_json(path, &text)?;
    if file.kind == "common-belief" {
        let atoms = file
            .atoms
            .iter()
            .map(|a| {
                Ok(Atom {
                    location: a.p.to_rational()?,
                    mass: a.mass.to_rational()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let segments = file
            .segments
            .iter()
            .map(|s| {
                Ok(Segment {
                    start: s.a.to_rational()?,
                    end: s.b.to_rational()?,
                    mass: s.mass.to_rational()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(BeliefMeasure::new(atoms, segments)?);
    }
    let mu = shorthand(&file.kind).ok_or_else(|| CliError::Format {
        path: path.to_path_buf(),
        message: format!(
            "unknown measure type {:?}; expected penrose-banzhaf, shapley-shubik, unanimity or common-belief",
            file.kind
        ),
    })?;
    if !file.atoms.is_empty() || !file.segments.is_empty() {
        return Err(CliError::Format {
            path: path.to_path_buf(),
            message: format!("type {:?} takes no atoms or segments", file.kind),
        });
    }
    Ok(mu)
}

fn shorthand(name: &str) -> Option<BeliefMeasure> {
    match name.to_ascii_lowercase().as_str() {
        "penrose-banzhaf" | "banzhaf" | "pb" => Some(BeliefMeasure::penrose_banzhaf()),
        "shapley-shubik" | "shapley" | "ss" => Some(BeliefMeasure::shapley_shubik()),
        "unanimity" => Some(BeliefMeasure::unanimity()),
        _ => None,
    }
}

/// Voting measures must be symmetric under `p ↦ 1-p`.
pub fn require_symmetric(mu: &BeliefMeasure, allow_asymmetric: bool) -> Result<()> {
    if allow_asymmetric || mu.is_reflection_symmetric() {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "measure {mu} is not symmetric under p -> 1-p; \
             pass --allow-asymmetric to sample from it anyway"
        )))
    }
}

/// `start:end[:step]` (inclusive), a comma-separated list, or one value.
pub fn parse_voter_range(text: &str) -> Result<Vec<usize>> {
    let bad = || {
        CliError::Usage(format!(
            "malformed --n {text:?}; use start:end[:step] or a,b,c"
        ))
    };
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let (start, end, step) = match parts.as_slice() {
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(bad()),
        };
        if step == 0 || start > end {
            return Err(bad());
        }
        Ok((start..=end).step_by(step).collect())
    } else {
        text.split(',').map(num).collect()
    }
}
