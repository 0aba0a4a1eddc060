//! Qualitative regression with fuzzy-group sample weights.
//!
//! The crate fits a no-intercept line per fuzzy group by weighted
//! least squares, where each sample's weight is its membership degree
//! in the group, and compares every group against ordinary
//! least-squares baselines. On top of the fits it derives each
//! group's contribution (slope advantage over the membership
//! baseline), the intersection point with the baseline, and the raw
//! covariate threshold beyond which belonging to the group pays off.
//!
//! # Modules
//!
//! * [`membership`]: ramp membership functions mapping a covariate
//!   onto `[0, 1]`.
//! * [`dataset`]: sample records, datasets, questionnaire score
//!   normalization, and structural validation.
//! * [`regression`]: the weighted no-intercept fit and ordinary least
//!   squares.
//! * [`analysis`]: contributions, intersections, thresholds, ranking,
//!   and report assembly.
//! * [`synth`]: seeded synthetic cohorts with known ground truth.
//!
//! The crate is `no_std` (allocation required), so the numerics run
//! anywhere with a heap. IO, file formats, and the command-line tool
//! live in the companion crate `fqt-cli`.
//!
//! # Example
//!
//! ```
//! use fqt_core::membership::RampMembership;
//! use fqt_core::regression::{
//!     fqt_fit, ols_fit, CovariateUnit, DesignMatrix, ResponseVector, WeightVector,
//! };
//! use fqt_core::analysis::{analyze_group, Baselines};
//!
//! let ramp = RampMembership::default();
//! let xs = [4.0, 8.0, 12.0, 16.0];
//! let ys = [30.0, 45.0, 65.0, 90.0];
//! let mus: Vec<f64> = xs.iter().map(|&x| ramp.eval(x)).collect();
//!
//! let baseline_mu = ols_fit(&mus, &ys, CovariateUnit::Membership)?;
//! let design = DesignMatrix::from_column(mus)?;
//! let weights = WeightVector::new(vec![0.9, 0.8, 0.95, 0.7])?;
//! let response = ResponseVector::new(ys.to_vec())?;
//! let report = analyze_group("alpha", &design, &weights, &response, &baseline_mu, &ramp)?;
//! assert!(report.a_mu > 0.0);
//! # Ok::<(), fqt_core::Error>(())
//! ```

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod dataset;
pub mod error;
pub mod membership;
mod numeric;
pub mod regression;
pub mod synth;

pub use error::{Error, Result};
