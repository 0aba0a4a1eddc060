//! Error type shared by every module in the crate.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::regression::CovariateUnit;

/// Everything that can go wrong while building memberships, datasets,
/// fits, or analyses.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Membership bounds must be finite with `lower < upper`.
    InvalidMembershipBounds { lower: f64, upper: f64 },
    /// A membership degree fell outside `[0, 1]`.
    DegreeOutOfRange { value: f64 },
    /// A questionnaire item score fell outside the 1..=5 scale.
    ItemScoreOutOfRange { value: u8 },
    /// A mean item score fell outside the `[1, 5]` interval.
    MeanScoreOutOfRange { value: f64 },
    /// A row does not carry scores for a declared group.
    MissingGroup { group: String },
    /// A group is present but has no item scores to average.
    EmptyItemScores { group: String },
    /// A dataset needs at least one declared group.
    NoGroups,
    /// Group names must be nonempty.
    EmptyGroupName,
    /// Group names must be unique.
    DuplicateGroup { group: String },
    /// An unrecognized normalization scheme name.
    UnknownNormalization { value: String },
    /// A design matrix needs at least one row and one column.
    EmptyDesign,
    /// Two containers that must agree in length do not.
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    /// Fewer samples than the operation can work with.
    InsufficientSamples { needed: usize, got: usize },
    /// A numeric input was NaN or infinite.
    NonFiniteInput { what: &'static str },
    /// A value that must lie in `[0, 1]` does not.
    EntryOutOfRange { what: &'static str, value: f64 },
    /// The covariate column has (numerically) zero variance.
    DegenerateCovariate,
    /// Every sample weight is zero, so the weighted fit is undefined.
    AllZeroWeights,
    /// The normal equations are singular; elimination stalled at the
    /// given category column.
    SingularSystem { category: usize },
    /// A fit in one covariate unit was combined with one in another.
    UnitMismatch {
        expected: CovariateUnit,
        actual: CovariateUnit,
    },
    /// The group line and the baseline have (numerically) equal slopes,
    /// so no intersection exists.
    ParallelLines,
    /// The per-group analysis expects a single-category design.
    SingleCategoryOnly { got: usize },
    /// A synthetic cohort configuration failed validation.
    InvalidSynthConfig { reason: &'static str },
    /// An error raised while processing a named group.
    Group { group: String, source: Box<Error> },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidMembershipBounds { lower, upper } => {
                write!(
                    f,
                    "membership bounds must be finite with lower < upper, got [{lower}, {upper}]"
                )
            }
            Error::DegreeOutOfRange { value } => {
                write!(f, "membership degree {value} is outside [0, 1]")
            }
            Error::ItemScoreOutOfRange { value } => {
                write!(f, "item score {value} is outside the 1..=5 scale")
            }
            Error::MeanScoreOutOfRange { value } => {
                write!(f, "mean item score {value} is outside [1, 5]")
            }
            Error::MissingGroup { group } => {
                write!(f, "row carries no scores for group '{group}'")
            }
            Error::EmptyItemScores { group } => {
                write!(f, "group '{group}' has no item scores to average")
            }
            Error::NoGroups => {
                write!(f, "dataset needs at least one declared group")
            }
            Error::EmptyGroupName => {
                write!(f, "group names must be nonempty")
            }
            Error::DuplicateGroup { group } => {
                write!(f, "duplicate group name '{group}'")
            }
            Error::UnknownNormalization { value } => {
                write!(
                    f,
                    "unknown normalization scheme '{value}' (expected div5 or affine)"
                )
            }
            Error::EmptyDesign => {
                write!(f, "design matrix needs at least one row and one column")
            }
            Error::DimensionMismatch {
                what,
                expected,
                actual,
            } => {
                write!(f, "{what}: expected length {expected}, got {actual}")
            }
            Error::InsufficientSamples { needed, got } => {
                write!(f, "need at least {needed} samples, got {got}")
            }
            Error::NonFiniteInput { what } => {
                write!(f, "{what} must be finite")
            }
            Error::EntryOutOfRange { what, value } => {
                write!(f, "{what} {value} is outside [0, 1]")
            }
            Error::DegenerateCovariate => {
                write!(f, "covariate column has zero variance")
            }
            Error::AllZeroWeights => {
                write!(f, "all sample weights are zero")
            }
            Error::SingularSystem { category } => {
                write!(f, "normal equations are singular at category {category}")
            }
            Error::UnitMismatch { expected, actual } => {
                write!(f, "expected a fit in {expected} units, got {actual}")
            }
            Error::ParallelLines => {
                write!(f, "group and baseline slopes are equal; no intersection")
            }
            Error::SingleCategoryOnly { got } => {
                write!(f, "per-group analysis expects one category, got {got}")
            }
            Error::InvalidSynthConfig { reason } => {
                write!(f, "invalid synthetic cohort config: {reason}")
            }
            Error::Group { group, source } => {
                write!(f, "group '{group}': {source}")
            }
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::Group { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
