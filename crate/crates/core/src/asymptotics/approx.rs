//! Floating-point evaluations for voter counts beyond the exact engine.

use statrs::function::gamma::ln_gamma;

use num_traits::ToPrimitive;

use crate::exact;
use crate::measures::BeliefMeasure;
use crate::systems::WeightedVotingSystem;
use crate::{Error, Result};

/// Largest `(N+1) × (scaled quota + 1)` table [`efficiency_f64`] allocates.
pub const MAX_APPROX_CELLS: usize = 20_000_000;

/// Penrose-Banzhaf decisiveness `C(N-1, m-1) / 2^(N-1)` of a unit-weight
/// system whose smallest winning coalition has `m` members, via log-gamma.
pub fn banzhaf_decisiveness_simple(voters: usize, min_winning_size: usize) -> Result<f64> {
    if voters == 0 || min_winning_size == 0 || min_winning_size > voters {
        return Err(Error::domain(
            "minimal winning size",
            min_winning_size,
            "1 <= m <= N",
        ));
    }
    let n = voters as f64;
    let m = min_winning_size as f64;
    let ln_choose = ln_gamma(n) - ln_gamma(m) - ln_gamma(n - m + 1.0);
    Ok((ln_choose - (n - 1.0) * std::f64::consts::LN_2).exp())
}

/// Efficiency `P_μ(winning)` for an arbitrary weighted system.
///
/// Tracks, for each coalition size `k`, the fraction of size-`k` subsets of
/// the voters seen so far at each (quota-capped) weight. Fractions stay in
/// `[0, 1]` and each update is a convex combination, so the recursion is
/// stable at sizes where raw subset counts overflow `f64`. The per-size
/// probabilities come from the exact kernel.
pub fn efficiency_f64(sys: &WeightedVotingSystem, mu: &BeliefMeasure) -> Result<f64> {
    let n = sys.voter_count();
    let scaled = sys.scaled();
    let too_big = || {
        Error::Resource(format!(
            "scaled quota {} needs more than {MAX_APPROX_CELLS} cells",
            scaled.quota
        ))
    };
    let quota = scaled.quota.to_usize().ok_or_else(too_big)?;
    let width = quota + 1;
    let cells = (n + 1).checked_mul(width).ok_or_else(too_big)?;
    if cells > MAX_APPROX_CELLS {
        return Err(too_big());
    }

    let mut frac = vec![0f64; cells];
    frac[0] = 1.0;
    for (j, w) in scaled.weights.iter().enumerate() {
        let x = w.to_usize().map_or(quota, |w| w.min(quota));
        let seen = (j + 1) as f64;
        for k in (0..=j + 1).rev() {
            let keep = (j + 1 - k) as f64 / seen;
            let join = k as f64 / seen;
            let (lo, hi) = frac.split_at_mut(k * width);
            let row = &mut hi[..width];
            row.iter_mut().for_each(|c| *c *= keep);
            if k > 0 {
                let prev = &lo[(k - 1) * width..];
                for (w, &c) in prev.iter().enumerate() {
                    if c != 0.0 {
                        row[(w + x).min(quota)] += c * join;
                    }
                }
            }
        }
    }

    let kernel = mu.kernel(n)?;
    Ok((0..=n)
        .map(|k| exact::to_f64(&kernel.size_probability(k)) * frac[k * width + quota])
        .sum())
}
