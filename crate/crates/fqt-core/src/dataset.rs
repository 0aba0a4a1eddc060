//! Sample records, fuzzy-group datasets, and questionnaire
//! normalization.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// One processed sample: a covariate, a response, and one membership
/// degree per declared group, in the dataset's group order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub id: u64,
    pub memberships: Vec<f64>,
    pub covariate_x: f64,
    pub response_y: f64,
}

/// An ordered collection of samples under a fixed list of group names.
///
/// Construction enforces that group names are nonempty and unique;
/// record-level invariants are audited by [`Dataset::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    group_names: Vec<String>,
    records: Vec<SampleRecord>,
}

impl Dataset {
    /// Builds a dataset over the given groups.
    ///
    /// # Errors
    ///
    /// Rejects an empty group list, empty names, and duplicate names.
    pub fn new(group_names: Vec<String>, records: Vec<SampleRecord>) -> Result<Self> {
        if group_names.is_empty() {
            return Err(Error::NoGroups);
        }
        for (i, name) in group_names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyGroupName);
            }
            if group_names[..i].contains(name) {
                return Err(Error::DuplicateGroup {
                    group: name.clone(),
                });
            }
        }
        Ok(Self {
            group_names,
            records,
        })
    }

    /// Declared group names, in column order.
    pub fn group_names(&self) -> &[String] {
        &self.group_names
    }

    /// All records, in row order.
    pub fn records(&self) -> &[SampleRecord] {
        &self.records
    }

    /// Number of records.
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Position of a group in the membership columns.
    pub fn group_index(&self, group: &str) -> Option<usize> {
        self.group_names.iter().position(|name| name == group)
    }

    /// Covariate column, in row order.
    pub fn covariate_values(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.covariate_x).collect()
    }

    /// Response column, in row order.
    pub fn response_values(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.response_y).collect()
    }

    /// Membership column of one group, in row order.
    ///
    /// Returns `None` when the group is not declared or some record
    /// does not carry a degree at its position.
    pub fn membership_column(&self, group: &str) -> Option<Vec<f64>> {
        let index = self.group_index(group)?;
        self.records
            .iter()
            .map(|r| r.memberships.get(index).copied())
            .collect()
    }

    /// Audits every record against the structural invariants: the
    /// covariate is finite and non-negative, the response lies in
    /// `[0, 100]`, and each record carries one degree in `[0, 1]` per
    /// declared group.
    ///
    /// Returns an empty list iff all records conform.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        for record in &self.records {
            if !(record.covariate_x.is_finite() && record.covariate_x >= 0.0) {
                violations.push(Violation {
                    record_id: record.id,
                    field: "covariate_x",
                    rule: alloc::format!(
                        "covariate must be finite and non-negative, got {}",
                        record.covariate_x
                    ),
                });
            }
            if !(record.response_y.is_finite() && (0.0..=100.0).contains(&record.response_y)) {
                violations.push(Violation {
                    record_id: record.id,
                    field: "response_y",
                    rule: alloc::format!(
                        "response must lie in [0, 100], got {}",
                        record.response_y
                    ),
                });
            }
            if record.memberships.len() != self.group_names.len() {
                violations.push(Violation {
                    record_id: record.id,
                    field: "memberships",
                    rule: alloc::format!(
                        "record carries {} membership degrees for {} declared groups",
                        record.memberships.len(),
                        self.group_names.len()
                    ),
                });
            }
            for (i, &degree) in record.memberships.iter().enumerate() {
                if !(0.0..=1.0).contains(&degree) {
                    let label = self
                        .group_names
                        .get(i)
                        .map(String::as_str)
                        .unwrap_or("<undeclared>");
                    violations.push(Violation {
                        record_id: record.id,
                        field: "memberships",
                        rule: alloc::format!(
                            "degree for group '{label}' must lie in [0, 1], got {degree}"
                        ),
                    });
                }
            }
        }
        violations
    }
}

/// One record-level invariant breach found by [`Dataset::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub record_id: u64,
    pub field: &'static str,
    pub rule: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row={} field={} rule={}",
            self.record_id, self.field, self.rule
        )
    }
}

/// How a mean item score on the 1..=5 scale becomes a membership
/// degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizationScheme {
    /// `mean / 5`: degrees land in `[0.2, 1]`.
    Div5,
    /// `(mean - 1) / 4`: degrees span the full `[0, 1]`.
    Affine,
}

impl fmt::Display for NormalizationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalizationScheme::Div5 => f.write_str("div5"),
            NormalizationScheme::Affine => f.write_str("affine"),
        }
    }
}

impl FromStr for NormalizationScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "div5" => Ok(NormalizationScheme::Div5),
            "affine" => Ok(NormalizationScheme::Affine),
            other => Err(Error::UnknownNormalization {
                value: String::from(other),
            }),
        }
    }
}

/// Turns a mean item score into a membership degree.
///
/// # Errors
///
/// Returns [`Error::MeanScoreOutOfRange`] when `mean_score` is NaN or
/// outside `[1, 5]`.
pub fn normalize_score(mean_score: f64, scheme: NormalizationScheme) -> Result<f64> {
    if !(1.0..=5.0).contains(&mean_score) {
        return Err(Error::MeanScoreOutOfRange { value: mean_score });
    }
    Ok(match scheme {
        NormalizationScheme::Div5 => mean_score / 5.0,
        NormalizationScheme::Affine => (mean_score - 1.0) / 4.0,
    })
}

/// One raw questionnaire row: per-group item scores on the 1..=5
/// scale plus the covariate and response.
#[derive(Debug, Clone, PartialEq)]
pub struct QuestionnaireRow {
    pub id: u64,
    pub item_scores: BTreeMap<String, Vec<u8>>,
    pub covariate_x: f64,
    pub response_y: f64,
}

impl QuestionnaireRow {
    /// Averages each group's item scores and normalizes the means into
    /// membership degrees, in `group_names` order.
    ///
    /// # Errors
    ///
    /// Fails when a declared group is missing from the row, has no
    /// items, or carries a score outside 1..=5.
    pub fn to_sample(
        &self,
        group_names: &[String],
        scheme: NormalizationScheme,
    ) -> Result<SampleRecord> {
        let mut memberships = Vec::with_capacity(group_names.len());
        for name in group_names {
            let items = self
                .item_scores
                .get(name)
                .ok_or_else(|| Error::MissingGroup {
                    group: name.clone(),
                })?;
            if items.is_empty() {
                return Err(Error::EmptyItemScores {
                    group: name.clone(),
                });
            }
            for &score in items {
                if !(1..=5).contains(&score) {
                    return Err(Error::ItemScoreOutOfRange { value: score });
                }
            }
            let mean = items.iter().map(|&s| f64::from(s)).sum::<f64>() / items.len() as f64;
            memberships.push(normalize_score(mean, scheme)?);
        }
        Ok(SampleRecord {
            id: self.id,
            memberships,
            covariate_x: self.covariate_x,
            response_y: self.response_y,
        })
    }
}
