//! Exact decisiveness, success and efficiency.
//!
//! Every supported measure is exchangeable, so the probability of an event
//! family is `Σ_k count_k · w_N(k)` where `count_k` counts the family's
//! coalitions of size `k`. [`analyze`] obtains the counts by dynamic
//! programming; [`brute_force_analyze`] classifies all `2^N` coalitions
//! directly and serves as the independent oracle.

mod oracle;
mod profile;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use oracle::{brute_force_analyze, brute_force_analyze_with_cap, MAX_BRUTE_FORCE_VOTERS};
pub use profile::SizeProfile;

use crate::exact::Rational;
use crate::measures::BeliefMeasure;
use crate::systems::WeightedVotingSystem;
use crate::{Quantity, Result};

/// Resource caps for the exact engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineLimits {
    /// Largest voter count for systems with equal weights.
    pub max_uniform_voters: usize,
    /// Largest `N × (scaled quota + 1)` table for the weighted DP.
    pub max_dp_cells: usize,
}

impl Default for EngineLimits {
    fn default() -> Self {
        EngineLimits {
            max_uniform_voters: 5000,
            max_dp_cells: 2_000_000,
        }
    }
}

/// Per-size counts for voter `voter` (0-based) under default limits.
pub fn size_profile(sys: &WeightedVotingSystem, voter: usize) -> Result<SizeProfile> {
    size_profile_with(sys, voter, &EngineLimits::default())
}

pub fn size_profile_with(
    sys: &WeightedVotingSystem,
    voter: usize,
    limits: &EngineLimits,
) -> Result<SizeProfile> {
    profile::compute(sys, voter, limits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoterPower {
    /// 0-based voter index.
    pub voter: usize,
    pub d_plus: Rational,
    pub d_minus: Rational,
    pub d: Rational,
    pub s_plus: Rational,
    pub s_minus: Rational,
    pub s: Rational,
}

impl VoterPower {
    fn from_parts(
        voter: usize,
        d_plus: Rational,
        d_minus: Rational,
        s_plus: Rational,
        s_minus: Rational,
    ) -> Self {
        VoterPower {
            voter,
            d: &d_plus + &d_minus,
            s: &s_plus + &s_minus,
            d_plus,
            d_minus,
            s_plus,
            s_minus,
        }
    }

    /// `None` for the system-level quantity `E`.
    pub fn get(&self, quantity: Quantity) -> Option<&Rational> {
        match quantity {
            Quantity::DPlus => Some(&self.d_plus),
            Quantity::DMinus => Some(&self.d_minus),
            Quantity::D => Some(&self.d),
            Quantity::SPlus => Some(&self.s_plus),
            Quantity::SMinus => Some(&self.s_minus),
            Quantity::S => Some(&self.s),
            Quantity::E => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerReport {
    pub system: String,
    pub measure: String,
    pub voters: Vec<VoterPower>,
    pub efficiency: Rational,
}

impl PowerReport {
    /// Value of `quantity` for `voter`; `E` ignores the voter.
    pub fn value(&self, quantity: Quantity, voter: usize) -> &Rational {
        self.voters[voter].get(quantity).unwrap_or(&self.efficiency)
    }
}

/// Exact power report for every voter.
pub fn analyze(sys: &WeightedVotingSystem, mu: &BeliefMeasure) -> Result<PowerReport> {
    analyze_with(sys, mu, &EngineLimits::default())
}

pub fn analyze_with(
    sys: &WeightedVotingSystem,
    mu: &BeliefMeasure,
    limits: &EngineLimits,
) -> Result<PowerReport> {
    let n = sys.voter_count();

    // Voters of equal weight share a profile; one DP per distinct weight.
    let mut classes: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
    for (v, w) in sys.weights().iter().enumerate() {
        classes.entry(w).or_default().push(v);
    }
    let representatives: Vec<usize> = classes.values().map(|vs| vs[0]).collect();
    let profiles: Vec<SizeProfile> = representatives
        .par_iter()
        .map(|&v| size_profile_with(sys, v, limits))
        .collect::<Result<_>>()?;

    let kernel = mu.kernel(n)?;
    let mut voters: Vec<Option<VoterPower>> = vec![None; n];
    for (members, profile) in classes.values().zip(&profiles) {
        let d_plus = kernel.weighted_sum(&profile.swing_plus, 0);
        let d_minus = kernel.weighted_sum(&profile.swing_plus, 1);
        let s_plus = kernel.weighted_sum(&profile.win_with, 0);
        let s_minus = kernel.weighted_sum(&profile.lose_without, 0);
        for &v in members {
            voters[v] = Some(VoterPower::from_parts(
                v,
                d_plus.clone(),
                d_minus.clone(),
                s_plus.clone(),
                s_minus.clone(),
            ));
        }
    }
    let efficiency = kernel.weighted_sum(&profiles[0].win_all, 0);

    Ok(PowerReport {
        system: sys.label(),
        measure: mu.label(),
        voters: voters
            .into_iter()
            .map(|v| v.expect("every voter is classed"))
            .collect(),
        efficiency,
    })
}
