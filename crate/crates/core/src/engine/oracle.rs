use num_bigint::BigUint;

use super::{PowerReport, VoterPower};
use crate::measures::BeliefMeasure;
use crate::systems::VotingRule;
use crate::{Error, Result};

pub const MAX_BRUTE_FORCE_VOTERS: usize = 20;

/// Enumerates all `2^N` coalitions and classifies each one against the
/// definitions of decisiveness, success and efficiency. Each coalition is
/// weighted by `w_N(|A|)`.
pub fn brute_force_analyze(
    rule: &impl VotingRule,
    mu: &BeliefMeasure,
    label: &str,
) -> Result<PowerReport> {
    brute_force_analyze_with_cap(rule, mu, label, MAX_BRUTE_FORCE_VOTERS)
}

pub fn brute_force_analyze_with_cap(
    rule: &impl VotingRule,
    mu: &BeliefMeasure,
    label: &str,
    max_voters: usize,
) -> Result<PowerReport> {
    let n = rule.voters();
    if n > max_voters || n >= 64 {
        return Err(Error::Resource(format!(
            "brute force enumerates 2^N coalitions; N = {n} exceeds the cap of {max_voters}"
        )));
    }
    let table = rule.winning_table();

    // tallies[v][event][|A|]
    const D_PLUS: usize = 0;
    const D_MINUS: usize = 1;
    const S_PLUS: usize = 2;
    const S_MINUS: usize = 3;
    let mut tallies = vec![
        [
            vec![0u64; n + 1],
            vec![0u64; n + 1],
            vec![0u64; n + 1],
            vec![0u64; n + 1]
        ];
        n
    ];
    let mut winning = vec![0u64; n + 1];

    for (mask, &wins) in table.iter().enumerate() {
        let size = mask.count_ones() as usize;
        if wins {
            winning[size] += 1;
        }
        for (v, t) in tallies.iter_mut().enumerate() {
            let bit = 1usize << v;
            if mask & bit != 0 {
                if wins {
                    t[S_PLUS][size] += 1;
                    if !table[mask ^ bit] {
                        t[D_MINUS][size] += 1;
                    }
                }
            } else if !wins {
                t[S_MINUS][size] += 1;
                if table[mask | bit] {
                    t[D_PLUS][size] += 1;
                }
            }
        }
    }

    let kernel = mu.kernel(n)?;
    let prob = |counts: &[u64]| {
        let counts: Vec<BigUint> = counts.iter().map(|&c| BigUint::from(c)).collect();
        kernel.weighted_sum(&counts, 0)
    };
    let voters = tallies
        .iter()
        .enumerate()
        .map(|(v, t)| {
            VoterPower::from_parts(
                v,
                prob(&t[D_PLUS]),
                prob(&t[D_MINUS]),
                prob(&t[S_PLUS]),
                prob(&t[S_MINUS]),
            )
        })
        .collect();

    Ok(PowerReport {
        system: label.to_string(),
        measure: mu.label(),
        voters,
        efficiency: prob(&winning),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::analyze;
    use crate::exact::{integer, rational};
    use crate::systems::{ExplicitVotingSystem, WeightedVotingSystem};

    #[test]
    fn banzhaf_index_of_321_quota_4() {
        let sys = WeightedVotingSystem::new(vec![integer(3), integer(2), integer(1)], integer(4))
            .unwrap();
        let r = brute_force_analyze(&sys, &BeliefMeasure::penrose_banzhaf(), &sys.label()).unwrap();
        let d: Vec<_> = r.voters.iter().map(|v| v.d.clone()).collect();
        assert_eq!(d, vec![rational(3, 4), rational(1, 4), rational(1, 4)]);
        assert_eq!(r, analyze(&sys, &BeliefMeasure::penrose_banzhaf()).unwrap());
    }

    #[test]
    fn shapley_decisiveness_of_majority_five() {
        let sys = WeightedVotingSystem::simple_majority(5).unwrap();
        let r = brute_force_analyze(&sys, &BeliefMeasure::shapley_shubik(), "m5").unwrap();
        assert!(r.voters.iter().all(|v| v.d == rational(1, 5)));
    }

    #[test]
    fn shapley_success_of_majority_four() {
        let sys = WeightedVotingSystem::simple_majority(4).unwrap();
        let r = brute_force_analyze(&sys, &BeliefMeasure::shapley_shubik(), "m4").unwrap();
        for v in &r.voters {
            assert_eq!(v.s_plus, rational(7, 20));
            assert_eq!(v.s_minus, rational(9, 20));
            assert_eq!(v.s, rational(4, 5));
        }
    }

    #[test]
    fn explicit_dictator_family() {
        let family = vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 1, 2]];
        let sys = ExplicitVotingSystem::new(3, &family).unwrap();
        let r = brute_force_analyze(&sys, &BeliefMeasure::shapley_shubik(), "dictator").unwrap();
        assert_eq!(r.voters[0].d, integer(1));
        assert_eq!(r.voters[1].d, integer(0));
        assert_eq!(r.voters[0].s, integer(1));
        assert_eq!(r.efficiency, rational(1, 2));
    }

    #[test]
    fn cap_is_enforced() {
        let sys = WeightedVotingSystem::simple_majority(21).unwrap();
        assert!(matches!(
            brute_force_analyze(&sys, &BeliefMeasure::penrose_banzhaf(), "m21"),
            Err(Error::Resource(_))
        ));
        let small = WeightedVotingSystem::simple_majority(5).unwrap();
        assert!(
            brute_force_analyze_with_cap(&small, &BeliefMeasure::penrose_banzhaf(), "m5", 4)
                .is_err()
        );
    }
}
