//! Seeded synthetic cohorts with known ground-truth category weights.
//!
//! Each sample draws a covariate uniformly from `covariate_range` and
//! one degree per group uniformly from `membership_range`. The
//! noiseless response blends the ground-truth weights by the sample's
//! degrees,
//!
//! ```text
//! abar = sum_B(deg_B * w_B) / sum_B(deg_B)
//! y    = abar * mu(x)          (+ sigma * N(0, 1) when sigma > 0)
//! ```
//!
//! so with a single group (or equal weights) the response reduces to
//! `w * mu(x)` and a noiseless fit recovers `w`. Responses are clamped
//! into `[0, 100]` and the output reports how many samples clamped.
//!
//! All randomness comes from a xoshiro256++ generator seeded through
//! splitmix64 (both public-domain designs by Blackman and Vigna), so a
//! seed pins the cohort byte for byte across platforms. Per sample the
//! draw order is: covariate, one degree per group in declared order,
//! then one Gaussian deviate only when `noise_sigma > 0`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::dataset::{Dataset, SampleRecord};
use crate::error::{Error, Result};
use crate::membership::RampMembership;

/// Configuration for one synthetic cohort.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    /// Number of samples to draw.
    pub samples: usize,
    /// Ground-truth weight per group, in declared order.
    pub true_weights: Vec<(String, f64)>,
    /// Standard deviation of the additive Gaussian noise; 0 disables
    /// the noise draw entirely.
    pub noise_sigma: f64,
    /// Uniform range for membership degrees, within `[0, 1]`.
    pub membership_range: (f64, f64),
    /// Uniform range for the raw covariate, non-negative.
    pub covariate_range: (f64, f64),
    /// RNG seed; equal seeds give byte-identical cohorts.
    pub seed: u64,
}

impl SynthConfig {
    /// Default degree range: well inside `[0, 1]` so group columns
    /// stay informative without saturating.
    pub const DEFAULT_MEMBERSHIP_RANGE: (f64, f64) = (0.5, 1.0);
    /// Default covariate range: spans most of the default ramp while
    /// keeping responses clear of the clamp bounds.
    pub const DEFAULT_COVARIATE_RANGE: (f64, f64) = (4.0, 16.0);

    /// Builds a config with the default draw ranges.
    pub fn new(
        samples: usize,
        true_weights: Vec<(String, f64)>,
        noise_sigma: f64,
        seed: u64,
    ) -> Self {
        Self {
            samples,
            true_weights,
            noise_sigma,
            membership_range: Self::DEFAULT_MEMBERSHIP_RANGE,
            covariate_range: Self::DEFAULT_COVARIATE_RANGE,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidSynthConfig {
                reason: "samples must be at least 1",
            });
        }
        if self.true_weights.is_empty() {
            return Err(Error::InvalidSynthConfig {
                reason: "at least one group weight is required",
            });
        }
        for (i, (name, weight)) in self.true_weights.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidSynthConfig {
                    reason: "group names must be nonempty",
                });
            }
            if self.true_weights[..i]
                .iter()
                .any(|(other, _)| other == name)
            {
                return Err(Error::InvalidSynthConfig {
                    reason: "group names must be unique",
                });
            }
            if !weight.is_finite() {
                return Err(Error::InvalidSynthConfig {
                    reason: "group weights must be finite",
                });
            }
        }
        if !(self.noise_sigma.is_finite() && self.noise_sigma >= 0.0) {
            return Err(Error::InvalidSynthConfig {
                reason: "noise sigma must be finite and non-negative",
            });
        }
        let (mlo, mhi) = self.membership_range;
        if !(0.0 <= mlo && mlo <= mhi && mhi <= 1.0) {
            return Err(Error::InvalidSynthConfig {
                reason: "membership range must satisfy 0 <= lo <= hi <= 1",
            });
        }
        let (clo, chi) = self.covariate_range;
        if !(clo.is_finite() && chi.is_finite() && 0.0 <= clo && clo <= chi) {
            return Err(Error::InvalidSynthConfig {
                reason: "covariate range must satisfy 0 <= lo <= hi",
            });
        }
        Ok(())
    }
}

/// A generated cohort plus how many responses hit the `[0, 100]`
/// clamp.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthOutput {
    pub dataset: Dataset,
    pub clamped: usize,
}

/// Draws a cohort under `cfg`, mapping covariates to membership
/// degrees with `ramp` (an analysis of the cohort should use the same
/// ramp).
///
/// # Errors
///
/// Returns [`Error::InvalidSynthConfig`] when the configuration fails
/// validation.
pub fn generate(cfg: &SynthConfig, ramp: &RampMembership) -> Result<SynthOutput> {
    cfg.validate()?;
    let mut rng = Xoshiro256PlusPlus::from_seed(cfg.seed);
    let groups = cfg.true_weights.len();
    let mut records = Vec::with_capacity(cfg.samples);
    let mut clamped = 0usize;

    for id in 1..=cfg.samples as u64 {
        let x = uniform_in(&mut rng, cfg.covariate_range);
        let mut memberships = Vec::with_capacity(groups);
        for _ in 0..groups {
            memberships.push(uniform_in(&mut rng, cfg.membership_range));
        }

        let mut weighted = 0.0;
        let mut total = 0.0;
        for (degree, (_, w)) in memberships.iter().zip(&cfg.true_weights) {
            weighted += degree * w;
            total += degree;
        }
        let blended = if total > 0.0 {
            weighted / total
        } else {
            cfg.true_weights.iter().map(|(_, w)| w).sum::<f64>() / groups as f64
        };

        let mut y = blended * ramp.eval(x);
        if cfg.noise_sigma > 0.0 {
            y += cfg.noise_sigma * rng.next_standard_normal();
        }
        if y < 0.0 {
            y = 0.0;
            clamped += 1;
        } else if y > 100.0 {
            y = 100.0;
            clamped += 1;
        }

        records.push(SampleRecord {
            id,
            memberships,
            covariate_x: x,
            response_y: y,
        });
    }

    let group_names = cfg
        .true_weights
        .iter()
        .map(|(name, _)| name.clone())
        .collect();
    Ok(SynthOutput {
        dataset: Dataset::new(group_names, records)?,
        clamped,
    })
}

fn uniform_in(rng: &mut Xoshiro256PlusPlus, (lo, hi): (f64, f64)) -> f64 {
    lo + rng.next_unit() * (hi - lo)
}

const UNIT_SCALE: f64 = 1.0 / (1u64 << 53) as f64;

/// splitmix64, used only to expand a 64-bit seed into generator state.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

/// xoshiro256++ with the reference update function.
struct Xoshiro256PlusPlus {
    s: [u64; 4],
}

impl Xoshiro256PlusPlus {
    fn from_seed(seed: u64) -> Self {
        let mut mix = SplitMix64 { state: seed };
        Self {
            s: [mix.next(), mix.next(), mix.next(), mix.next()],
        }
    }

    fn next_u64(&mut self) -> u64 {
        let result = self.s[0]
            .wrapping_add(self.s[3])
            .rotate_left(23)
            .wrapping_add(self.s[0]);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform double in `[0, 1)` from the top 53 bits.
    fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * UNIT_SCALE
    }

    /// Uniform double in `(0, 1]`, safe to feed into a logarithm.
    fn next_unit_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * UNIT_SCALE
    }

    /// Standard normal deviate via the Box-Muller transform; consumes
    /// exactly two raw draws.
    fn next_standard_normal(&mut self) -> f64 {
        let u1 = self.next_unit_open();
        let u2 = self.next_unit();
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
    }
}
