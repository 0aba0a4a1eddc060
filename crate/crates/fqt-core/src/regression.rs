//! Least-squares fits: the weighted no-intercept fit over membership
//! categories and ordinary least squares for baselines.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::numeric::stable_sum;

/// Relative pivot threshold for the normal-equations solve. A pivot
/// smaller than this times the largest initial `|entry|` of `X'GX` is
/// treated as zero and reported as a singularity.
pub const PIVOT_RELATIVE_TOLERANCE: f64 = 1e-9;

/// Relative spread threshold below which a covariate column counts as
/// constant and ordinary least squares refuses to fit a slope.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

/// Unit a linear fit is expressed in: the raw covariate or its
/// membership transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovariateUnit {
    /// Raw covariate values.
    RawX,
    /// Membership degrees in `[0, 1]`.
    Membership,
}

impl fmt::Display for CovariateUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CovariateUnit::RawX => f.write_str("raw-x"),
            CovariateUnit::Membership => f.write_str("membership"),
        }
    }
}

/// A fitted line `y = slope * v + intercept` in a stated covariate unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub unit: CovariateUnit,
}

impl LinearFit {
    /// Predicted response at covariate value `v` (in this fit's unit).
    pub fn predict(&self, v: f64) -> f64 {
        self.slope * v + self.intercept
    }
}

/// Row-major `n x p` matrix of membership degrees, one row per sample
/// and one column per category.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl DesignMatrix {
    /// Builds an `n x p` design from row-major entries.
    ///
    /// # Errors
    ///
    /// Rejects empty shapes, a length that is not `rows * cols`, and
    /// entries outside `[0, 1]` (NaN included).
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDesign);
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "design matrix entries",
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        for &value in &entries {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::EntryOutOfRange {
                    what: "design matrix entry",
                    value,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a single-category design from one membership column.
    pub fn from_column(values: Vec<f64>) -> Result<Self> {
        let rows = values.len();
        Self::new(rows, 1, values)
    }

    /// Builds a design from equally long membership columns.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let cols = columns.len();
        if cols == 0 {
            return Err(Error::EmptyDesign);
        }
        let rows = columns[0].len();
        for column in columns {
            if column.len() != rows {
                return Err(Error::DimensionMismatch {
                    what: "design matrix column",
                    expected: rows,
                    actual: column.len(),
                });
            }
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for row in 0..rows {
            for column in columns {
                entries.push(column[row]);
            }
        }
        Self::new(rows, cols, entries)
    }

    /// Number of samples (rows).
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of categories (columns).
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(row, col)`.
    ///
    /// # Panics
    ///
    /// Panics when either index is out of bounds.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries[row * self.cols + col]
    }
}

/// Per-sample fuzzy weights, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Validates that every weight lies in `[0, 1]`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for &value in &values {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::EntryOutOfRange {
                    what: "sample weight",
                    value,
                });
            }
        }
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Per-sample responses; any finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseVector(Vec<f64>);

impl ResponseVector {
    /// Validates that every response is finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for &value in &values {
            if !value.is_finite() {
                return Err(Error::NonFiniteInput {
                    what: "response value",
                });
            }
        }
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Fitted category weights, one per design column, in membership units.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryWeights(Vec<f64>);

impl CategoryWeights {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Ordinary least squares for `y = slope * x + intercept`.
///
/// Uses the centered two-pass form, so the slope is the ratio of the
/// centered cross moment to the centered second moment.
///
/// # Errors
///
/// Needs at least two samples, equal-length finite inputs, and a
/// covariate whose spread exceeds [`DEGENERACY_TOLERANCE`] relative to
/// its mean.
pub fn ols_fit(xs: &[f64], ys: &[f64], unit: CovariateUnit) -> Result<LinearFit> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            what: "response vs covariate",
            expected: xs.len(),
            actual: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            got: xs.len(),
        });
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFiniteInput {
            what: "covariate value",
        });
    }
    if ys.iter().any(|y| !y.is_finite()) {
        return Err(Error::NonFiniteInput {
            what: "response value",
        });
    }

    let n = xs.len() as f64;
    let mean_x = stable_sum(xs.to_vec()) / n;
    let mean_y = stable_sum(ys.to_vec()) / n;

    let spread = xs
        .iter()
        .map(|x| (x - mean_x).abs())
        .fold(0.0_f64, f64::max);
    if spread <= DEGENERACY_TOLERANCE * (1.0 + mean_x.abs()) {
        return Err(Error::DegenerateCovariate);
    }

    let sxx = stable_sum(xs.iter().map(|x| (x - mean_x) * (x - mean_x)).collect());
    let sxy = stable_sum(
        xs.iter()
            .zip(ys)
            .map(|(x, y)| (x - mean_x) * (y - mean_y))
            .collect(),
    );

    let slope = sxy / sxx;
    Ok(LinearFit {
        slope,
        intercept: mean_y - slope * mean_x,
        unit,
    })
}

/// Weighted least squares without intercept: solves
/// `(X'GX) a = X'Gy` for the category weights `a`.
///
/// The normal equations are accumulated with an order-independent sum,
/// so any permutation of the samples yields bit-identical weights, and
/// are solved by Gaussian elimination with partial pivoting.
///
/// # Errors
///
/// * [`Error::DimensionMismatch`] when weights or responses do not
///   match the design's row count.
/// * [`Error::AllZeroWeights`] when every sample weight is zero.
/// * [`Error::SingularSystem`] when elimination hits a pivot below
///   [`PIVOT_RELATIVE_TOLERANCE`] relative to the largest initial
///   entry of `X'GX`; the reported index is the stalled category.
pub fn fqt_fit(
    design: &DesignMatrix,
    weights: &WeightVector,
    response: &ResponseVector,
) -> Result<CategoryWeights> {
    let n = design.rows();
    let p = design.cols();
    if weights.len() != n {
        return Err(Error::DimensionMismatch {
            what: "weight vector",
            expected: n,
            actual: weights.len(),
        });
    }
    if response.len() != n {
        return Err(Error::DimensionMismatch {
            what: "response vector",
            expected: n,
            actual: response.len(),
        });
    }
    let g = weights.as_slice();
    let y = response.as_slice();
    if g.iter().all(|&w| w == 0.0) {
        return Err(Error::AllZeroWeights);
    }

    let mut a = vec![0.0_f64; p * p];
    let mut b = vec![0.0_f64; p];
    for j in 0..p {
        for l in j..p {
            let entry = stable_sum(
                (0..n)
                    .map(|k| g[k] * design.get(k, j) * design.get(k, l))
                    .collect(),
            );
            a[j * p + l] = entry;
            a[l * p + j] = entry;
        }
        b[j] = stable_sum((0..n).map(|k| g[k] * design.get(k, j) * y[k]).collect());
    }

    let scale = a.iter().map(|v| v.abs()).fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return Err(Error::SingularSystem { category: 0 });
    }

    for col in 0..p {
        let mut pivot_row = col;
        let mut pivot_mag = a[col * p + col].abs();
        for row in (col + 1)..p {
            let mag = a[row * p + col].abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_mag < PIVOT_RELATIVE_TOLERANCE * scale {
            return Err(Error::SingularSystem { category: col });
        }
        if pivot_row != col {
            for c in 0..p {
                a.swap(col * p + c, pivot_row * p + c);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * p + col];
        for row in (col + 1)..p {
            let factor = a[row * p + col] / pivot;
            if factor != 0.0 {
                a[row * p + col] = 0.0;
                for c in (col + 1)..p {
                    a[row * p + c] -= factor * a[col * p + c];
                }
                b[row] -= factor * b[col];
            }
        }
    }

    let mut out = vec![0.0_f64; p];
    for col in (0..p).rev() {
        let mut acc = b[col];
        for c in (col + 1)..p {
            acc -= a[col * p + c] * out[c];
        }
        out[col] = acc / a[col * p + col];
    }
    debug_assert!(out.iter().all(|v| v.is_finite()));
    Ok(CategoryWeights(out))
}

/// Weighted sum of squared residuals of `candidate` on the given data:
/// `sum_k g_k (y_k - sum_j candidate_j x_kj)^2`.
///
/// This is the objective that [`fqt_fit`] minimizes.
///
/// # Panics
///
/// Panics when `weights`, `response`, or `candidate` do not match the
/// design's shape.
pub fn weighted_sse(
    design: &DesignMatrix,
    weights: &WeightVector,
    response: &ResponseVector,
    candidate: &[f64],
) -> f64 {
    let n = design.rows();
    let p = design.cols();
    assert_eq!(weights.len(), n, "weight vector length mismatch");
    assert_eq!(response.len(), n, "response vector length mismatch");
    assert_eq!(candidate.len(), p, "candidate length mismatch");
    let g = weights.as_slice();
    let y = response.as_slice();
    stable_sum(
        (0..n)
            .map(|k| {
                let mut predicted = 0.0;
                for (j, &a) in candidate.iter().enumerate() {
                    predicted += a * design.get(k, j);
                }
                let residual = y[k] - predicted;
                g[k] * residual * residual
            })
            .collect(),
    )
}
