//! Per-group interpretation of fitted category weights: contribution
//! over the baseline, intersection with the baseline line, and the
//! covariate threshold where the group's line overtakes it.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::membership::RampMembership;
use crate::regression::{
    fqt_fit, ols_fit, CovariateUnit, DesignMatrix, LinearFit, ResponseVector, WeightVector,
};

/// Absolute slope-difference threshold below which a group line and
/// the baseline count as parallel (no intersection).
pub const PARALLEL_TOLERANCE: f64 = 1e-12;

/// Point where a group's no-intercept line `y = a_mu * mu` crosses the
/// baseline `y = slope * mu + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intersection {
    /// Membership degree at the crossing.
    pub mu: f64,
    /// Response value at the crossing.
    pub y: f64,
}

impl Intersection {
    /// Whether the crossing lies inside the membership domain `[0, 1]`.
    pub fn in_unit_range(&self) -> bool {
        (0.0..=1.0).contains(&self.mu)
    }
}

/// Qualifiers attached to a group's analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisFlag {
    /// Group and baseline slopes are numerically equal.
    NoCrossing,
    /// The lines cross outside the membership domain `[0, 1]`.
    IntersectionOutOfRange,
}

impl fmt::Display for AnalysisFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisFlag::NoCrossing => f.write_str("no_crossing"),
            AnalysisFlag::IntersectionOutOfRange => f.write_str("intersection_out_of_range"),
        }
    }
}

/// Full analysis of one fuzzy group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAnalysis {
    pub group_name: String,
    /// Fitted category weight in membership units.
    pub a_mu: f64,
    /// The same weight converted to raw covariate units
    /// (`a_mu / span`).
    pub a_x: f64,
    /// Slope advantage over the membership baseline.
    pub contribution_mu: f64,
    /// Crossing with the baseline, when one exists.
    pub intersection: Option<Intersection>,
    /// Raw covariate value at the crossing, when it lies in domain.
    pub threshold_x: Option<f64>,
    pub flags: Vec<AnalysisFlag>,
}

/// The two reference fits every group is compared against: ordinary
/// least squares on the raw covariate and on its membership transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Baselines {
    raw: LinearFit,
    membership: LinearFit,
}

impl Baselines {
    /// Pairs the raw-x and membership baselines.
    ///
    /// # Errors
    ///
    /// Returns [`Error::UnitMismatch`] unless the fits carry the
    /// raw-x and membership units respectively.
    pub fn new(raw: LinearFit, membership: LinearFit) -> Result<Self> {
        if raw.unit != CovariateUnit::RawX {
            return Err(Error::UnitMismatch {
                expected: CovariateUnit::RawX,
                actual: raw.unit,
            });
        }
        if membership.unit != CovariateUnit::Membership {
            return Err(Error::UnitMismatch {
                expected: CovariateUnit::Membership,
                actual: membership.unit,
            });
        }
        Ok(Self { raw, membership })
    }

    pub fn raw(&self) -> &LinearFit {
        &self.raw
    }

    pub fn membership(&self) -> &LinearFit {
        &self.membership
    }
}

/// Complete analysis output: baselines, per-group results, and the
/// contribution ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub baseline_x: LinearFit,
    pub baseline_mu: LinearFit,
    pub groups: Vec<GroupAnalysis>,
    /// Group names ordered by descending contribution, ties broken
    /// lexicographically.
    pub ranking: Vec<String>,
    /// First entry of the ranking, when any group was analyzed.
    pub dominant: Option<String>,
}

/// Slope advantage of a group's line over the membership baseline.
///
/// # Errors
///
/// Returns [`Error::UnitMismatch`] when the baseline is not in
/// membership units.
pub fn contribution(a_mu: f64, baseline_mu: &LinearFit) -> Result<f64> {
    require_membership_unit(baseline_mu)?;
    Ok(a_mu - baseline_mu.slope)
}

/// Crossing of `y = a_mu * mu` with the membership baseline.
///
/// The crossing may land outside `[0, 1]`; see
/// [`Intersection::in_unit_range`].
///
/// # Errors
///
/// Returns [`Error::ParallelLines`] when the slopes differ by less
/// than [`PARALLEL_TOLERANCE`], and [`Error::UnitMismatch`] for a
/// baseline in the wrong unit.
pub fn intersection(a_mu: f64, baseline_mu: &LinearFit) -> Result<Intersection> {
    require_membership_unit(baseline_mu)?;
    let slope_gap = a_mu - baseline_mu.slope;
    if slope_gap.abs() < PARALLEL_TOLERANCE {
        return Err(Error::ParallelLines);
    }
    let mu = baseline_mu.intercept / slope_gap;
    Ok(Intersection { mu, y: a_mu * mu })
}

/// Fits one group's category weight and derives its comparison
/// against the membership baseline.
///
/// The design must hold exactly one category (the group's membership
/// transform of the covariate); the weight vector carries the group's
/// per-sample degrees. A crossing outside `[0, 1]` or parallel lines
/// are not errors: they surface as flags with the affected outputs
/// absent.
///
/// # Errors
///
/// Fitting and unit failures are wrapped in [`Error::Group`] naming
/// the offending group.
pub fn analyze_group(
    group_name: &str,
    design: &DesignMatrix,
    weights: &WeightVector,
    response: &ResponseVector,
    baseline_mu: &LinearFit,
    ramp: &RampMembership,
) -> Result<GroupAnalysis> {
    if design.cols() != 1 {
        return Err(in_group(
            group_name,
            Error::SingleCategoryOnly { got: design.cols() },
        ));
    }
    let fitted = fqt_fit(design, weights, response).map_err(|e| in_group(group_name, e))?;
    let a_mu = fitted.values()[0];
    let contribution_mu = contribution(a_mu, baseline_mu).map_err(|e| in_group(group_name, e))?;
    let a_x = a_mu / ramp.span();

    let (crossing, threshold_x, flags) = match intersection(a_mu, baseline_mu) {
        Ok(point) if point.in_unit_range() => {
            let threshold = ramp.invert(point.mu).map_err(|e| in_group(group_name, e))?;
            (Some(point), Some(threshold), Vec::new())
        }
        Ok(point) => (
            Some(point),
            None,
            alloc::vec![AnalysisFlag::IntersectionOutOfRange],
        ),
        Err(Error::ParallelLines) => (None, None, alloc::vec![AnalysisFlag::NoCrossing]),
        Err(other) => return Err(in_group(group_name, other)),
    };

    Ok(GroupAnalysis {
        group_name: String::from(group_name),
        a_mu,
        a_x,
        contribution_mu,
        intersection: crossing,
        threshold_x,
        flags,
    })
}

/// Group names ordered by descending contribution; ties fall back to
/// lexicographic name order. Total over any input, including empty.
pub fn rank_groups(groups: &[GroupAnalysis]) -> Vec<String> {
    let mut order: Vec<&GroupAnalysis> = groups.iter().collect();
    order.sort_by(|left, right| {
        right
            .contribution_mu
            .total_cmp(&left.contribution_mu)
            .then_with(|| left.group_name.cmp(&right.group_name))
    });
    order.into_iter().map(|g| g.group_name.clone()).collect()
}

/// Assembles the final report: baselines, group analyses, ranking,
/// and the dominant group (the ranking's head).
pub fn build_report(baselines: &Baselines, groups: Vec<GroupAnalysis>) -> AnalysisReport {
    let ranking = rank_groups(&groups);
    let dominant = ranking.first().cloned();
    AnalysisReport {
        baseline_x: *baselines.raw(),
        baseline_mu: *baselines.membership(),
        groups,
        ranking,
        dominant,
    }
}

/// Runs the whole pipeline on a dataset: both baselines, one
/// weighted fit per declared group, and the assembled report.
///
/// The response is regressed on the membership transform of the
/// covariate; each group in turn supplies its degrees as the sample
/// weights.
///
/// # Errors
///
/// Baseline failures (too few samples, constant covariate) surface
/// as-is; per-group failures are wrapped in [`Error::Group`].
pub fn analyze_dataset(dataset: &Dataset, ramp: &RampMembership) -> Result<AnalysisReport> {
    let xs = dataset.covariate_values();
    let ys = dataset.response_values();
    let mus: Vec<f64> = xs.iter().map(|&x| ramp.eval(x)).collect();

    let baseline_x = ols_fit(&xs, &ys, CovariateUnit::RawX)?;
    let baseline_mu = ols_fit(&mus, &ys, CovariateUnit::Membership)?;
    let baselines = Baselines::new(baseline_x, baseline_mu)?;

    let design = DesignMatrix::from_column(mus)?;
    let response = ResponseVector::new(ys)?;
    let mut groups = Vec::with_capacity(dataset.group_names().len());
    for name in dataset.group_names() {
        let column = dataset
            .membership_column(name)
            .ok_or_else(|| Error::MissingGroup {
                group: name.clone(),
            })?;
        let weights = WeightVector::new(column).map_err(|e| in_group(name, e))?;
        groups.push(analyze_group(
            name,
            &design,
            &weights,
            &response,
            baselines.membership(),
            ramp,
        )?);
    }
    Ok(build_report(&baselines, groups))
}

fn require_membership_unit(fit: &LinearFit) -> Result<()> {
    if fit.unit != CovariateUnit::Membership {
        return Err(Error::UnitMismatch {
            expected: CovariateUnit::Membership,
            actual: fit.unit,
        });
    }
    Ok(())
}

fn in_group(group: &str, error: Error) -> Error {
    Error::Group {
        group: String::from(group),
        source: Box::new(error),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn baseline(slope: f64, intercept: f64) -> LinearFit {
        LinearFit {
            slope,
            intercept,
            unit: CovariateUnit::Membership,
        }
    }

    #[test]
    fn contribution_is_slope_difference() {
        assert_eq!(contribution(8.0, &baseline(3.0, 1.0)).unwrap(), 5.0);
        let raw = LinearFit {
            slope: 3.0,
            intercept: 1.0,
            unit: CovariateUnit::RawX,
        };
        assert!(matches!(
            contribution(8.0, &raw),
            Err(Error::UnitMismatch { .. })
        ));
    }

    #[test]
    fn intersection_solves_the_crossing() {
        let point = intersection(10.0, &baseline(5.0, 2.5)).unwrap();
        assert_eq!(point.mu, 0.5);
        assert_eq!(point.y, 5.0);
        assert!(point.in_unit_range());
    }

    #[test]
    fn equal_slopes_have_no_crossing() {
        assert_eq!(
            intersection(5.0, &baseline(5.0, 2.5)).unwrap_err(),
            Error::ParallelLines
        );
        assert_eq!(
            intersection(5.0 + 0.4e-12, &baseline(5.0, 2.5)).unwrap_err(),
            Error::ParallelLines
        );
    }

    #[test]
    fn crossing_outside_unit_interval_is_flagged_not_failed() {
        let point = intersection(10.0, &baseline(9.9, 2.0)).unwrap();
        assert!(!point.in_unit_range());
    }

    #[test]
    fn analyze_group_derives_all_outputs() {
        let design = DesignMatrix::from_column(vec![0.5, 1.0]).unwrap();
        let weights = WeightVector::new(vec![1.0, 1.0]).unwrap();
        let response = ResponseVector::new(vec![5.0, 10.0]).unwrap();
        let ramp = RampMembership::default();
        let analysis = analyze_group(
            "alpha",
            &design,
            &weights,
            &response,
            &baseline(5.0, 2.5),
            &ramp,
        )
        .unwrap();
        assert_eq!(analysis.group_name, "alpha");
        assert!((analysis.a_mu - 10.0).abs() <= 1e-12);
        assert!((analysis.a_x - 0.625).abs() <= 1e-12);
        assert!((analysis.contribution_mu - 5.0).abs() <= 1e-12);
        let point = analysis.intersection.unwrap();
        assert!((point.mu - 0.5).abs() <= 1e-12);
        assert!((point.y - 5.0).abs() <= 1e-12);
        assert!((analysis.threshold_x.unwrap() - 8.0).abs() <= 1e-12);
        assert!(analysis.flags.is_empty());
    }

    #[test]
    fn analyze_group_flags_out_of_range_crossing() {
        // a_mu = 10, baseline slope 9.9: crossing at mu = 20.
        let design = DesignMatrix::from_column(vec![0.5, 1.0]).unwrap();
        let weights = WeightVector::new(vec![1.0, 1.0]).unwrap();
        let response = ResponseVector::new(vec![5.0, 10.0]).unwrap();
        let analysis = analyze_group(
            "alpha",
            &design,
            &weights,
            &response,
            &baseline(9.9, 2.0),
            &RampMembership::default(),
        )
        .unwrap();
        assert!(analysis.intersection.is_some());
        assert_eq!(analysis.threshold_x, None);
        assert_eq!(analysis.flags, vec![AnalysisFlag::IntersectionOutOfRange]);
    }

    #[test]
    fn analyze_group_flags_parallel_lines() {
        let design = DesignMatrix::from_column(vec![0.5, 1.0]).unwrap();
        let weights = WeightVector::new(vec![1.0, 1.0]).unwrap();
        let response = ResponseVector::new(vec![5.0, 10.0]).unwrap();
        let analysis = analyze_group(
            "alpha",
            &design,
            &weights,
            &response,
            &baseline(10.0, 2.0),
            &RampMembership::default(),
        )
        .unwrap();
        assert_eq!(analysis.intersection, None);
        assert_eq!(analysis.threshold_x, None);
        assert_eq!(analysis.flags, vec![AnalysisFlag::NoCrossing]);
    }

    #[test]
    fn analyze_group_wraps_fit_errors_with_the_group_name() {
        let design = DesignMatrix::from_column(vec![0.0, 0.0]).unwrap();
        let weights = WeightVector::new(vec![1.0, 1.0]).unwrap();
        let response = ResponseVector::new(vec![5.0, 10.0]).unwrap();
        let error = analyze_group(
            "alpha",
            &design,
            &weights,
            &response,
            &baseline(5.0, 2.5),
            &RampMembership::default(),
        )
        .unwrap_err();
        match error {
            Error::Group { group, source } => {
                assert_eq!(group, "alpha");
                assert_eq!(*source, Error::SingularSystem { category: 0 });
            }
            other => panic!("expected a group-wrapped error, got {other:?}"),
        }
    }

    fn bare(name: &str, contribution_mu: f64) -> GroupAnalysis {
        GroupAnalysis {
            group_name: name.to_string(),
            a_mu: 0.0,
            a_x: 0.0,
            contribution_mu,
            intersection: None,
            threshold_x: None,
            flags: vec![],
        }
    }

    #[test]
    fn ranking_sorts_by_contribution_then_name() {
        let groups = vec![bare("beta", 2.0), bare("alpha", 2.0), bare("gamma", 5.0)];
        assert_eq!(rank_groups(&groups), vec!["gamma", "alpha", "beta"]);
        assert_eq!(rank_groups(&[]), Vec::<String>::new());
    }

    #[test]
    fn report_head_is_the_dominant_group() {
        let baselines = Baselines::new(
            LinearFit {
                slope: 1.0,
                intercept: 2.0,
                unit: CovariateUnit::RawX,
            },
            baseline(5.0, 2.5),
        )
        .unwrap();
        let report = build_report(&baselines, vec![bare("beta", 2.0), bare("gamma", 5.0)]);
        assert_eq!(report.ranking, vec!["gamma", "beta"]);
        assert_eq!(report.dominant.as_deref(), Some("gamma"));
        let empty = build_report(&baselines, vec![]);
        assert_eq!(empty.dominant, None);
    }

    #[test]
    fn baselines_validate_units() {
        let raw = LinearFit {
            slope: 1.0,
            intercept: 2.0,
            unit: CovariateUnit::RawX,
        };
        assert!(Baselines::new(raw, baseline(5.0, 2.5)).is_ok());
        assert!(matches!(
            Baselines::new(baseline(5.0, 2.5), baseline(5.0, 2.5)),
            Err(Error::UnitMismatch { .. })
        ));
        assert!(matches!(
            Baselines::new(raw, raw),
            Err(Error::UnitMismatch { .. })
        ));
    }

    #[test]
    fn analyze_dataset_fits_baselines_and_every_group() {
        use crate::dataset::SampleRecord;

        // Responses sit exactly on y = 80 * mu(x), so the membership
        // baseline matches every group's line: contribution 0 and no
        // crossing. Degrees are dyadic, keeping all sums exact so the
        // parallel-slope comparison is deterministic.
        let records = [(4.0, 0.5), (8.0, 0.25), (12.0, 0.75), (16.0, 0.625)]
            .iter()
            .enumerate()
            .map(|(i, &(x, degree))| SampleRecord {
                id: i as u64 + 1,
                memberships: alloc::vec![degree],
                covariate_x: x,
                response_y: 80.0 * (x / 16.0),
            })
            .collect();
        let dataset = Dataset::new(alloc::vec!["alpha".to_string()], records).unwrap();
        let report = analyze_dataset(&dataset, &RampMembership::default()).unwrap();

        assert!((report.baseline_x.slope - 5.0).abs() <= 1e-12);
        assert!(report.baseline_x.intercept.abs() <= 1e-10);
        assert!((report.baseline_mu.slope - 80.0).abs() <= 1e-12);
        assert!(report.baseline_mu.intercept.abs() <= 1e-10);
        assert_eq!(report.groups.len(), 1);
        let group = &report.groups[0];
        assert!((group.a_mu - 80.0).abs() <= 1e-10);
        assert!((group.a_x - 5.0).abs() <= 1e-10);
        assert!(group.contribution_mu.abs() <= 1e-10);
        assert_eq!(group.flags, vec![AnalysisFlag::NoCrossing]);
        assert_eq!(report.ranking, vec!["alpha"]);
        assert_eq!(report.dominant.as_deref(), Some("alpha"));
    }

    #[test]
    fn flags_have_stable_names() {
        assert_eq!(AnalysisFlag::NoCrossing.to_string(), "no_crossing");
        assert_eq!(
            AnalysisFlag::IntersectionOutOfRange.to_string(),
            "intersection_out_of_range"
        );
    }
}
