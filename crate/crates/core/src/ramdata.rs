//! Double ramification data `A = (μ₀, μ∞, I)` and the rational leg weights
//! fed to the graph-sum formulas.
//!
//! Markings are numbered `1..=n` in the order: `μ₀` entries, then `μ∞`
//! entries, then `I` entries.

use std::fmt;

use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{frac, rat, Rational};
use crate::group::{ClassId, FiniteGroup, GroupError};
use crate::rep::OneDimRep;

/// How the integer parts of `c/f` enter the formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// Leg weights `±c/f`, integer parts kept.
    #[default]
    Extended,
    /// Leg weights `±⟨c/f⟩`.
    Fractional,
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightMode::Extended => write!(f, "extended"),
            WeightMode::Fractional => write!(f, "fractional"),
        }
    }
}

impl std::str::FromStr for WeightMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "extended" => Ok(WeightMode::Extended),
            "fractional" => Ok(WeightMode::Fractional),
            other => Err(format!("unknown mode `{other}` (expected extended|fractional)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPart {
    pub c: u64,
    pub f: u64,
    pub class: usize,
}

/// Unvalidated ramification data, exactly as in job files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRamData {
    pub genus: u32,
    #[serde(default)]
    pub mu0: Vec<RawPart>,
    #[serde(rename = "muInf", default)]
    pub mu_inf: Vec<RawPart>,
    #[serde(rename = "I", default)]
    pub insertions: Vec<usize>,
    #[serde(default)]
    pub mode: WeightMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Part {
    pub c: u64,
    pub f: u64,
    pub class: ClassId,
}

impl Part {
    pub fn ratio(&self) -> Rational {
        rat(self.c as i64, self.f as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamData {
    pub genus: u32,
    pub mu0: Vec<Part>,
    pub mu_inf: Vec<Part>,
    pub insertions: Vec<ClassId>,
    pub mode: WeightMode,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RamDataError {
    #[error("{entry}: class {id} is not a conjugacy class id of the group")]
    UnknownClass { entry: String, id: usize },
    #[error("{entry}.f: f must be positive")]
    ZeroF { entry: String },
    #[error("condition (1): {entry}.f = {f} but the class has order {order}")]
    OrderMismatch { entry: String, f: u64, order: u64 },
    #[error("condition (2): sum of c/f over mu0 is {mu0} but over muInf is {mu_inf}")]
    SumMismatch { mu0: String, mu_inf: String },
    #[error("condition (3): {entry} has age {age} but <c/f> = {expected}")]
    AgeMismatch { entry: String, age: String, expected: String },
    #[error("condition (4): {entry} has age {age}, expected 0")]
    InsertionAge { entry: String, age: String },
    #[error("condition (5): monodromy condition fails in genus {genus}")]
    Monodromy { genus: u32 },
}

impl RamDataError {
    /// Which numbered condition failed, if any.
    pub fn condition(&self) -> Option<u8> {
        match self {
            RamDataError::OrderMismatch { .. } => Some(1),
            RamDataError::SumMismatch { .. } => Some(2),
            RamDataError::AgeMismatch { .. } => Some(3),
            RamDataError::InsertionAge { .. } => Some(4),
            RamDataError::Monodromy { .. } => Some(5),
            _ => None,
        }
    }
}

/// Outcome of each of the five conditions, evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub structural: Option<RamDataError>,
    pub conditions: [Option<RamDataError>; 5],
}

impl ConditionReport {
    pub fn is_valid(&self) -> bool {
        self.structural.is_none() && self.conditions.iter().all(Option::is_none)
    }

    pub fn first_error(&self) -> Option<&RamDataError> {
        self.structural
            .as_ref()
            .or_else(|| self.conditions.iter().flatten().next())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegSide {
    Zero,
    Infinity,
    Insertion,
}

/// Weight and class carried by one marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegWeight {
    pub marking: usize,
    pub side: LegSide,
    pub weight: Rational,
    /// `μ∞` markings carry the inverse class.
    pub class: ClassId,
}

impl RawRamData {
    /// Evaluates all five conditions. Unknown class ids are structural errors
    /// and stop evaluation.
    pub fn check(&self, group: &FiniteGroup, rep: &OneDimRep) -> ConditionReport {
        let mut report = ConditionReport { structural: None, conditions: Default::default() };
        let resolve = |entry: String, id: usize| -> Result<ClassId, RamDataError> {
            match group.class(ClassId(id)) {
                Ok(c) => Ok(c.id),
                Err(_) => Err(RamDataError::UnknownClass { entry, id }),
            }
        };
        let parts = |name: &str, raw: &[RawPart]| -> Result<Vec<Part>, RamDataError> {
            raw.iter()
                .enumerate()
                .map(|(i, p)| {
                    let entry = format!("{name}[{i}]");
                    if p.f == 0 {
                        return Err(RamDataError::ZeroF { entry });
                    }
                    Ok(Part { c: p.c, f: p.f, class: resolve(format!("{entry}.class"), p.class)? })
                })
                .collect()
        };
        let (mu0, mu_inf) = match (parts("mu0", &self.mu0), parts("muInf", &self.mu_inf)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                report.structural = Some(e);
                return report;
            }
        };
        let insertions: Result<Vec<ClassId>, _> = self
            .insertions
            .iter()
            .enumerate()
            .map(|(i, &id)| resolve(format!("I[{i}]"), id))
            .collect();
        let insertions = match insertions {
            Ok(v) => v,
            Err(e) => {
                report.structural = Some(e);
                return report;
            }
        };
        let labelled = || {
            mu0.iter()
                .enumerate()
                .map(|(i, p)| (format!("mu0[{i}]"), p))
                .chain(mu_inf.iter().enumerate().map(|(i, p)| (format!("muInf[{i}]"), p)))
        };

        report.conditions[0] = labelled().find_map(|(entry, p)| {
            let order = group.class(p.class).unwrap().order;
            (order != p.f).then(|| RamDataError::OrderMismatch { entry: format!("{entry}.f"), f: p.f, order })
        });

        let s0: Rational = mu0.iter().map(Part::ratio).sum();
        let s_inf: Rational = mu_inf.iter().map(Part::ratio).sum();
        if s0 != s_inf {
            report.conditions[1] = Some(RamDataError::SumMismatch { mu0: s0.to_string(), mu_inf: s_inf.to_string() });
        }

        report.conditions[2] = labelled().find_map(|(entry, p)| {
            let age = rep.age_of_class(group.class(p.class).unwrap());
            let expected = frac(&p.ratio());
            (age != expected).then(|| RamDataError::AgeMismatch {
                entry,
                age: age.to_string(),
                expected: expected.to_string(),
            })
        });

        report.conditions[3] = insertions.iter().enumerate().find_map(|(i, &c)| {
            let age = rep.age_of_class(group.class(c).unwrap());
            (!age.is_zero()).then(|| RamDataError::InsertionAge { entry: format!("I[{i}]"), age: age.to_string() })
        });

        let mut classes: Vec<ClassId> = mu0.iter().map(|p| p.class).collect();
        classes.extend(mu_inf.iter().map(|p| group.class_inverse(p.class).unwrap()));
        classes.extend(insertions.iter().copied());
        if !group.monodromy_satisfiable(&classes, self.genus).unwrap() {
            report.conditions[4] = Some(RamDataError::Monodromy { genus: self.genus });
        }
        report
    }

    pub fn validate(&self, group: &FiniteGroup, rep: &OneDimRep) -> Result<RamData, RamDataError> {
        let report = self.check(group, rep);
        if let Some(e) = report.first_error() {
            return Err(e.clone());
        }
        let part = |p: &RawPart| Part { c: p.c, f: p.f, class: ClassId(p.class) };
        Ok(RamData {
            genus: self.genus,
            mu0: self.mu0.iter().map(part).collect(),
            mu_inf: self.mu_inf.iter().map(part).collect(),
            insertions: self.insertions.iter().map(|&c| ClassId(c)).collect(),
            mode: self.mode,
        })
    }
}

impl RamData {
    pub fn to_raw(&self) -> RawRamData {
        let part = |p: &Part| RawPart { c: p.c, f: p.f, class: p.class.0 };
        RawRamData {
            genus: self.genus,
            mu0: self.mu0.iter().map(part).collect(),
            mu_inf: self.mu_inf.iter().map(part).collect(),
            insertions: self.insertions.iter().map(|c| c.0).collect(),
            mode: self.mode,
        }
    }

    pub fn num_markings(&self) -> usize {
        self.mu0.len() + self.mu_inf.len() + self.insertions.len()
    }

    /// `2g - 3 + n`.
    pub fn virtual_dim(&self) -> i64 {
        2 * self.genus as i64 - 3 + self.num_markings() as i64
    }

    pub fn leg_classes(&self, group: &FiniteGroup) -> Result<Vec<ClassId>, GroupError> {
        let mut out: Vec<ClassId> = self.mu0.iter().map(|p| p.class).collect();
        for p in &self.mu_inf {
            out.push(group.class_inverse(p.class)?);
        }
        out.extend(self.insertions.iter().copied());
        Ok(out)
    }

    pub fn effective_weights(&self, group: &FiniteGroup, mode: WeightMode) -> Result<Vec<LegWeight>, GroupError> {
        let magnitude = |p: &Part| match mode {
            WeightMode::Extended => p.ratio(),
            WeightMode::Fractional => frac(&p.ratio()),
        };
        let classes = self.leg_classes(group)?;
        let mut out = Vec::with_capacity(classes.len());
        for p in &self.mu0 {
            out.push((LegSide::Zero, magnitude(p)));
        }
        for p in &self.mu_inf {
            out.push((LegSide::Infinity, -magnitude(p)));
        }
        for _ in &self.insertions {
            out.push((LegSide::Insertion, Rational::from_integer(BigInt::zero())));
        }
        Ok(out
            .into_iter()
            .zip(classes)
            .enumerate()
            .map(|(i, ((side, weight), class))| LegWeight { marking: i + 1, side, weight, class })
            .collect())
    }
}
