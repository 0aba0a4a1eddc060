//! Small numeric helpers shared by the fitting routines.

use alloc::vec::Vec;

/// Sums `terms` in a canonical order so the result is bit-identical
/// under any permutation of the inputs.
///
/// Floating point addition is not associative, so a plain left fold
/// changes with input order. Sorting by total order first makes every
/// reduction of the same multiset of terms take the same path.
pub(crate) fn stable_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_unstable_by(f64::total_cmp);
    terms.iter().sum()
}
