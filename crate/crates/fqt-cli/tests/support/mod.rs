//! Helpers for the acceptance suite: a small deterministic RNG for
//! fixture generation, an independent brute-force minimizer of the
//! weighted SSE, a condition gate for random instances, and the
//! cohort-fitting pipeline used by the recovery checks.

use fqt_core::membership::RampMembership;
use fqt_core::regression::{fqt_fit, weighted_sse, DesignMatrix, ResponseVector, WeightVector};
use fqt_core::synth::{generate, SynthConfig};

/// splitmix64; deterministic fixtures without pulling in a dependency.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

const GOLDEN_RATIO_CONJUGATE: f64 = 0.618_033_988_749_894_9;

/// Minimum of a function along a line: golden-section search to
/// localize, then parabolic refinement. Comparison-based search alone
/// stalls once the bracket is narrower than about sqrt(eps) times the
/// objective's scale (the function is flat to machine precision
/// there), which here means ~1e-6. The SSE is exactly quadratic along
/// any line, so the vertex of an interpolating parabola recovers the
/// true minimum up to rounding.
fn line_minimum(eval: &mut impl FnMut(f64) -> f64, center: f64, radius: f64) -> f64 {
    let mut lo = center - radius;
    let mut hi = center + radius;
    let mut x1 = hi - GOLDEN_RATIO_CONJUGATE * (hi - lo);
    let mut x2 = lo + GOLDEN_RATIO_CONJUGATE * (hi - lo);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    for _ in 0..48 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN_RATIO_CONJUGATE * (hi - lo);
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN_RATIO_CONJUGATE * (hi - lo);
            f2 = eval(x2);
        }
    }
    let mut t = 0.5 * (lo + hi);
    let h = 1e-2;
    for _ in 0..2 {
        let f_minus = eval(t - h);
        let f_center = eval(t);
        let f_plus = eval(t + h);
        let curvature = f_plus - 2.0 * f_center + f_minus;
        if curvature > 0.0 {
            t -= h * (f_plus - f_minus) / (2.0 * curvature);
        }
    }
    t
}

/// Minimization of the SSE along `direction` from `point`, applied in
/// place. The direction is normalized to unit max-norm first so the
/// parabolic refinement always sees curvature well above rounding
/// noise.
fn line_step(
    design: &DesignMatrix,
    weights: &WeightVector,
    response: &ResponseVector,
    point: &mut [f64],
    direction: &[f64],
) {
    let scale = direction.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
    if scale == 0.0 {
        return;
    }
    let unit: Vec<f64> = direction.iter().map(|d| d / scale).collect();
    let mut eval = |t: f64| {
        let probe: Vec<f64> = point.iter().zip(&unit).map(|(c, d)| c + t * d).collect();
        weighted_sse(design, weights, response, &probe)
    };
    let t = line_minimum(&mut eval, 0.0, 5000.0);
    for (c, d) in point.iter_mut().zip(&unit) {
        *c += t * d;
    }
}

fn coordinate_basis(p: usize) -> Vec<Vec<f64>> {
    (0..p)
        .map(|j| (0..p).map(|l| f64::from(u8::from(l == j))).collect())
        .collect()
}

/// Minimizes the weighted SSE by multi-start coordinate descent with
/// golden-section line searches. Plain cyclic sweeps zigzag badly on
/// these all-positive, strongly correlated design columns, so each
/// sweep is followed by a pattern move along the sweep's composite
/// direction, which then replaces the oldest search direction (the
/// classic direction-set scheme; with exact line searches it finishes
/// a quadratic in a handful of rounds). Brute force on purpose beyond
/// that: it shares no code with the closed-form normal-equations
/// solver, so agreement between the two is meaningful.
pub fn brute_force_weights(
    design: &DesignMatrix,
    weights: &WeightVector,
    response: &ResponseVector,
) -> Vec<f64> {
    let p = design.cols();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for start in [0.0, 100.0, -100.0] {
        let mut point = vec![start; p];
        let mut directions = coordinate_basis(p);
        for round in 0..200 {
            // Periodic reset guards against the direction set
            // degenerating into linear dependence.
            if round > 0 && round % 10 == 0 {
                directions = coordinate_basis(p);
            }
            let before = point.clone();
            for direction in &directions {
                line_step(design, weights, response, &mut point, direction);
            }
            let composite: Vec<f64> = point.iter().zip(&before).map(|(a, b)| a - b).collect();
            let movement = composite.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
            if movement <= 1e-11 {
                break;
            }
            line_step(design, weights, response, &mut point, &composite);
            directions.rotate_left(1);
            *directions.last_mut().expect("p >= 1") = composite;
        }
        let sse = weighted_sse(design, weights, response, &point);
        if best.as_ref().is_none_or(|(best_sse, _)| sse < *best_sse) {
            best = Some((sse, point));
        }
    }
    best.expect("at least one start").1
}

fn norm1(matrix: &[Vec<f64>]) -> f64 {
    let p = matrix.len();
    (0..p)
        .map(|j| (0..p).map(|i| matrix[i][j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn minor2(matrix: &[Vec<f64>], row: usize, col: usize) -> f64 {
    let rows: Vec<usize> = (0..3).filter(|&k| k != row).collect();
    let cols: Vec<usize> = (0..3).filter(|&k| k != col).collect();
    matrix[rows[0]][cols[0]] * matrix[rows[1]][cols[1]]
        - matrix[rows[0]][cols[1]] * matrix[rows[1]][cols[0]]
}

fn invert(matrix: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    match matrix.len() {
        1 => {
            let det = matrix[0][0];
            (det != 0.0).then(|| vec![vec![1.0 / det]])
        }
        2 => {
            let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
            (det.abs() > f64::MIN_POSITIVE).then(|| {
                vec![
                    vec![matrix[1][1] / det, -matrix[0][1] / det],
                    vec![-matrix[1][0] / det, matrix[0][0] / det],
                ]
            })
        }
        3 => {
            let det = matrix[0][0] * minor2(matrix, 0, 0) - matrix[0][1] * minor2(matrix, 0, 1)
                + matrix[0][2] * minor2(matrix, 0, 2);
            if det.abs() <= f64::MIN_POSITIVE {
                return None;
            }
            let mut inverse = vec![vec![0.0; 3]; 3];
            for (j, row) in inverse.iter_mut().enumerate() {
                for (i, entry) in row.iter_mut().enumerate() {
                    let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                    *entry = sign * minor2(matrix, i, j) / det;
                }
            }
            Some(inverse)
        }
        _ => None,
    }
}

/// 1-norm condition number of `X'GX` via an explicit inverse
/// (`p <= 3`); `None` when the matrix is numerically singular.
pub fn condition_number(design: &DesignMatrix, weights: &WeightVector) -> Option<f64> {
    let n = design.rows();
    let p = design.cols();
    let g = weights.as_slice();
    let mut moment = vec![vec![0.0_f64; p]; p];
    for (j, row) in moment.iter_mut().enumerate() {
        for (l, entry) in row.iter_mut().enumerate() {
            *entry = (0..n)
                .map(|k| g[k] * design.get(k, j) * design.get(k, l))
                .sum();
        }
    }
    let inverse = invert(&moment)?;
    Some(norm1(&moment) * norm1(&inverse))
}

/// Draws a cohort and fits the first group's category weight through
/// the same pipeline `analyze` uses: the design column is the
/// membership transform of the covariate and the sample weights are
/// that group's degrees.
pub fn fitted_cohort_weight(cfg: &SynthConfig, ramp: &RampMembership) -> f64 {
    let cohort = generate(cfg, ramp).expect("valid synth config");
    let dataset = &cohort.dataset;
    let group = &cfg.true_weights[0].0;
    let degrees = dataset.membership_column(group).expect("group exists");
    let mus: Vec<f64> = dataset
        .covariate_values()
        .iter()
        .map(|&x| ramp.eval(x))
        .collect();
    let design = DesignMatrix::from_column(mus).expect("degrees in range");
    let weights = WeightVector::new(degrees).expect("degrees in range");
    let response = ResponseVector::new(dataset.response_values()).expect("finite responses");
    fqt_fit(&design, &weights, &response)
        .expect("well-posed cohort")
        .values()[0]
}
