use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::EngineLimits;
use crate::exact;
use crate::systems::WeightedVotingSystem;
use crate::{Error, Result};

/// Per-size coalition counts for one focal voter `v`.
///
/// Index `k` is always the size of the coalition `A` named in the field:
///
/// * `win_all[k]`: winning `A`, `|A| = k`
/// * `swing_plus[k]`: `A ∌ v` losing with `A ∪ {v}` winning
/// * `win_with[k]`: winning `A ∋ v`
/// * `lose_without[k]`: losing `A ∌ v`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeProfile {
    pub voter: usize,
    pub voters: usize,
    pub win_all: Vec<BigUint>,
    pub swing_plus: Vec<BigUint>,
    pub win_with: Vec<BigUint>,
    pub lose_without: Vec<BigUint>,
}

impl SizeProfile {
    /// Counts of `A ∋ v` winning with `A \ {v}` losing, by `|A|`. This is
    /// `swing_plus` shifted by one through the bijection `A ↦ A ∪ {v}`.
    pub fn swing_minus(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); self.voters + 1];
        out[1..].clone_from_slice(&self.swing_plus[..self.voters]);
        out
    }

    fn empty(voter: usize, voters: usize) -> Self {
        let zeros = vec![BigUint::zero(); voters + 1];
        SizeProfile {
            voter,
            voters,
            win_all: zeros.clone(),
            swing_plus: zeros.clone(),
            win_with: zeros.clone(),
            lose_without: zeros,
        }
    }
}

pub(super) fn compute(
    sys: &WeightedVotingSystem,
    voter: usize,
    limits: &EngineLimits,
) -> Result<SizeProfile> {
    let n = sys.voter_count();
    if voter >= n {
        return Err(Error::VoterOutOfRange { voter, voters: n });
    }
    match sys.min_winning_size() {
        Some(m) => uniform(n, m, voter, limits),
        None => by_weight(sys, voter, limits),
    }
}

/// All voters alike: a coalition's weight is fixed by its size, so every
/// count is a binomial coefficient.
fn uniform(n: usize, m: usize, voter: usize, limits: &EngineLimits) -> Result<SizeProfile> {
    if n > limits.max_uniform_voters {
        return Err(Error::Resource(format!(
            "{n} voters exceeds the exact engine cap of {} for equal weights; \
             use the Monte Carlo estimator or closed forms",
            limits.max_uniform_voters
        )));
    }
    let others = exact::binomial_row(n - 1);
    let mut p = SizeProfile::empty(voter, n);
    for (k, c) in others.iter().enumerate() {
        if k < m {
            p.lose_without[k] = c.clone();
            if k + 1 == m {
                p.swing_plus[k] = c.clone();
            }
        }
        if k + 1 >= m {
            p.win_with[k + 1] = c.clone();
        }
    }
    // winners of size k: those containing v plus those avoiding v
    p.win_all.clone_from(&p.win_with);
    for (k, c) in others.iter().enumerate().skip(m) {
        p.win_all[k] += c;
    }
    Ok(p)
}

/// Subset-count DP over the voters other than `voter`, with state
/// (members chosen, accumulated weight capped at the quota).
fn by_weight(
    sys: &WeightedVotingSystem,
    voter: usize,
    limits: &EngineLimits,
) -> Result<SizeProfile> {
    let n = sys.voter_count();
    let scaled = sys.scaled();
    let too_big = || {
        Error::Resource(format!(
            "scaled quota {} needs more than {} DP cells; \
             use brute force for small systems or the Monte Carlo estimator",
            scaled.quota, limits.max_dp_cells
        ))
    };
    let quota = scaled.quota.to_usize().ok_or_else(too_big)?;
    let width = quota + 1;
    let cells = n.checked_mul(width).ok_or_else(too_big)?;
    if cells > limits.max_dp_cells {
        return Err(too_big());
    }
    let cap = |w: &BigUint| w.to_usize().map_or(quota, |w| w.min(quota));

    // cells[k * width + w]: subsets of size k with weight w (w == quota
    // means "at least quota").
    let mut counts = vec![BigUint::zero(); cells];
    counts[0] = BigUint::from(1u8);
    let mut processed = 0usize;
    for (i, w) in scaled.weights.iter().enumerate() {
        if i == voter {
            continue;
        }
        let x = cap(w);
        for k in (0..=processed).rev() {
            let (lo, hi) = counts.split_at_mut((k + 1) * width);
            let src = &lo[k * width..];
            let dst = &mut hi[..width];
            for (w, c) in src.iter().enumerate() {
                if !c.is_zero() {
                    dst[(w + x).min(quota)] += c;
                }
            }
        }
        processed += 1;
    }

    let x = cap(&scaled.weights[voter]);
    let threshold = quota - x;
    let mut p = SizeProfile::empty(voter, n);
    for k in 0..n {
        let row = &counts[k * width..(k + 1) * width];
        let losing: BigUint = row[..quota].iter().sum();
        let swings: BigUint = row[threshold..quota].iter().sum();
        let with_v: BigUint = row[threshold..].iter().sum();
        let winning_without = &row[quota];
        p.win_all[k] += winning_without;
        p.win_all[k + 1] += &with_v;
        p.lose_without[k] = losing;
        p.swing_plus[k] = swings;
        p.win_with[k + 1] = with_v;
    }
    Ok(p)
}
