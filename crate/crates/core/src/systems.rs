//! Weighted and explicitly enumerated voting systems.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{self, Rational};
use crate::{Error, Result};

/// Largest voter count accepted by [`ExplicitVotingSystem`].
pub const MAX_EXPLICIT_VOTERS: usize = 24;

/// Anything that can decide whether a coalition, given as a bit mask over
/// voters `0..voters()`, is winning.
pub trait VotingRule {
    fn voters(&self) -> usize;

    fn wins_mask(&self, mask: u64) -> bool;

    /// Winning status of every coalition, indexed by mask.
    fn winning_table(&self) -> Vec<bool> {
        (0..1u64 << self.voters())
            .map(|m| self.wins_mask(m))
            .collect()
    }
}

/// A weighted system: coalition `A` wins iff `Σ_{i∈A} w_i ≥ q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedVotingSystem {
    weights: Vec<Rational>,
    quota: Rational,
    scaled: ScaledWeights,
}

/// Weights and quota multiplied by the LCM of all denominators. Since
/// weight sums are then integers, the quota is replaced by its ceiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledWeights {
    pub weights: Vec<BigUint>,
    pub quota: BigUint,
}

impl WeightedVotingSystem {
    /// Requires non-negative weights with positive total and
    /// `0 < quota ≤ total weight`, so the grand coalition wins and the empty
    /// one loses. Zero-weight (dummy) voters are allowed.
    pub fn new(weights: Vec<Rational>, quota: Rational) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSystem("no voters".into()));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(Error::InvalidSystem(format!(
                "voter {} has negative weight {w}",
                i + 1
            )));
        }
        let total: Rational = weights.iter().sum();
        if total.is_zero() {
            return Err(Error::InvalidSystem("total weight must be positive".into()));
        }
        if !quota.is_positive() || quota > total {
            return Err(Error::InvalidSystem(format!(
                "quota {quota} must lie in (0, {total}]"
            )));
        }
        let scaled = scale(&weights, &quota);
        Ok(WeightedVotingSystem {
            weights,
            quota,
            scaled,
        })
    }

    /// Quota given relative to the total weight, `q = r · Σw`, exactly.
    pub fn with_relative_quota(weights: Vec<Rational>, relative_quota: &Rational) -> Result<Self> {
        if !relative_quota.is_positive() || *relative_quota > Rational::one() {
            return Err(Error::domain("relative quota", relative_quota, "(0, 1]"));
        }
        let total: Rational = weights.iter().sum();
        let quota = relative_quota * total;
        Self::new(weights, quota)
    }

    /// Unit weights with relative quota `r`.
    pub fn simple(voters: usize, relative_quota: &Rational) -> Result<Self> {
        if voters == 0 {
            return Err(Error::domain("N", 0, "N >= 1"));
        }
        Self::with_relative_quota(vec![Rational::one(); voters], relative_quota)
    }

    /// Unit weights with `r = ½ + 1/(2N)`: a coalition wins iff it holds
    /// more than half of the voters.
    pub fn simple_majority(voters: usize) -> Result<Self> {
        if voters == 0 {
            return Err(Error::domain("N", 0, "N >= 1"));
        }
        let quota = exact::rational(voters as i64 + 1, 2);
        Self::new(vec![Rational::one(); voters], quota)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn quota(&self) -> &Rational {
        &self.quota
    }

    pub fn voter_count(&self) -> usize {
        self.weights.len()
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn relative_quota(&self) -> Rational {
        &self.quota / self.total_weight()
    }

    pub fn scaled(&self) -> &ScaledWeights {
        &self.scaled
    }

    /// True when every voter carries the same (positive) weight.
    pub fn has_uniform_weights(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }

    /// For uniform weights, the smallest winning coalition size.
    pub fn min_winning_size(&self) -> Option<usize> {
        if !self.has_uniform_weights() {
            return None;
        }
        let k = exact::ceil(&(&self.quota / &self.weights[0]));
        k.to_usize()
    }

    /// Winning test for a coalition of 0-based voter indices.
    pub fn is_winning(&self, coalition: &[usize]) -> Result<bool> {
        let n = self.voter_count();
        let mut sum = Rational::zero();
        let mut seen = vec![false; n];
        for &v in coalition {
            if v >= n {
                return Err(Error::VoterOutOfRange {
                    voter: v,
                    voters: n,
                });
            }
            if !std::mem::replace(&mut seen[v], true) {
                sum += &self.weights[v];
            }
        }
        Ok(sum >= self.quota)
    }

    /// Explicit winning family; limited to [`MAX_EXPLICIT_VOTERS`].
    pub fn to_explicit(&self) -> Result<ExplicitVotingSystem> {
        ExplicitVotingSystem::from_rule(self)
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for WeightedVotingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weights=[")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "];quota={}", self.quota)
    }
}

fn scale(weights: &[Rational], quota: &Rational) -> ScaledWeights {
    let mut all = weights.to_vec();
    all.push(quota.clone());
    let (_, factor) = exact::common_scale(&all);
    let factor = Rational::from_integer(factor);
    let to_uint = |r: Rational| -> BigUint {
        r.to_integer()
            .to_biguint()
            .expect("weights are non-negative")
    };
    ScaledWeights {
        weights: weights.iter().map(|w| to_uint(w * &factor)).collect(),
        quota: to_uint((quota * &factor).ceil()),
    }
}

impl VotingRule for WeightedVotingSystem {
    fn voters(&self) -> usize {
        self.voter_count()
    }

    fn wins_mask(&self, mask: u64) -> bool {
        let sum: BigUint = self
            .scaled
            .weights
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, w)| w)
            .sum();
        sum >= self.scaled.quota
    }

    /// Incremental subset sums; falls back to big integers only when the
    /// scaled total does not fit in `u128`.
    fn winning_table(&self) -> Vec<bool> {
        let n = self.voter_count();
        let small: Option<Vec<u128>> = self.scaled.weights.iter().map(|w| w.to_u128()).collect();
        let total: Option<u128> = small
            .as_ref()
            .and_then(|ws| ws.iter().try_fold(0u128, |acc, &w| acc.checked_add(w)));
        match (small, total, self.scaled.quota.to_u128()) {
            (Some(ws), Some(_), Some(q)) => {
                let mut sums = vec![0u128; 1 << n];
                for mask in 1..sums.len() {
                    let low = mask.trailing_zeros() as usize;
                    sums[mask] = sums[mask & (mask - 1)] + ws[low];
                }
                sums.into_iter().map(|s| s >= q).collect()
            }
            _ => {
                let mut sums = vec![BigUint::zero(); 1 << n];
                for mask in 1..sums.len() {
                    let low = mask.trailing_zeros() as usize;
                    sums[mask] = &sums[mask & (mask - 1)] + &self.scaled.weights[low];
                }
                sums.into_iter().map(|s| s >= self.scaled.quota).collect()
            }
        }
    }
}

/// Laakso-Taagepera concentration `Σw² / (Σw)²`; `1/N` for equal weights.
pub fn laakso_taagepera(weights: &[Rational]) -> Result<Rational> {
    if weights.iter().any(|w| w.is_negative()) {
        return Err(Error::InvalidSystem("weights must be non-negative".into()));
    }
    let total: Rational = weights.iter().sum();
    if total.is_zero() {
        return Err(Error::InvalidSystem("weights must not all be zero".into()));
    }
    let squares: Rational = weights.iter().map(|w| w * w).sum();
    Ok(squares / (&total * &total))
}

/// A voting system given by its full winning family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitVotingSystem {
    voters: usize,
    winning: Vec<bool>,
}

impl ExplicitVotingSystem {
    /// Builds the system from its winning coalitions (0-based voter
    /// indices). The family must contain the grand coalition, exclude the
    /// empty one and be closed under supersets.
    pub fn new(voters: usize, winning: &[Vec<usize>]) -> Result<Self> {
        if voters == 0 || voters > MAX_EXPLICIT_VOTERS {
            return Err(Error::Resource(format!(
                "explicit systems support 1..={MAX_EXPLICIT_VOTERS} voters, got {voters}"
            )));
        }
        let mut table = vec![false; 1 << voters];
        for coalition in winning {
            let mut mask = 0usize;
            for &v in coalition {
                if v >= voters {
                    return Err(Error::VoterOutOfRange { voter: v, voters });
                }
                mask |= 1 << v;
            }
            table[mask] = true;
        }
        Self::from_table(voters, table)
    }

    pub fn from_rule(rule: &impl VotingRule) -> Result<Self> {
        let voters = rule.voters();
        if voters == 0 || voters > MAX_EXPLICIT_VOTERS {
            return Err(Error::Resource(format!(
                "explicit systems support 1..={MAX_EXPLICIT_VOTERS} voters, got {voters}"
            )));
        }
        Self::from_table(voters, rule.winning_table())
    }

    fn from_table(voters: usize, table: Vec<bool>) -> Result<Self> {
        let full = table.len() - 1;
        if !table[full] {
            return Err(Error::InvalidSystem(
                "grand coalition must be winning".into(),
            ));
        }
        if table[0] {
            return Err(Error::InvalidSystem(
                "empty coalition must be losing".into(),
            ));
        }
        for mask in 0..table.len() {
            if !table[mask] {
                continue;
            }
            for v in 0..voters {
                let sup = mask | 1 << v;
                if !table[sup] {
                    return Err(Error::InvalidSystem(format!(
                        "family is not monotone: {:?} wins but {:?} loses",
                        members(mask, voters),
                        members(sup, voters)
                    )));
                }
            }
        }
        Ok(ExplicitVotingSystem {
            voters,
            winning: table,
        })
    }

    pub fn voter_count(&self) -> usize {
        self.voters
    }

    pub fn is_winning(&self, coalition: &[usize]) -> Result<bool> {
        let mut mask = 0usize;
        for &v in coalition {
            if v >= self.voters {
                return Err(Error::VoterOutOfRange {
                    voter: v,
                    voters: self.voters,
                });
            }
            mask |= 1 << v;
        }
        Ok(self.winning[mask])
    }

    /// Winning coalitions as sorted 0-based voter lists, in mask order.
    pub fn winning_coalitions(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.winning
            .iter()
            .enumerate()
            .filter(|(_, &w)| w)
            .map(|(mask, _)| members(mask, self.voters))
    }

    /// If winning depends only on coalition size, the equivalent system
    /// with unit weights and quota equal to the smallest winning size.
    pub fn detect_invariant(&self) -> Option<WeightedVotingSystem> {
        let mut status: Vec<Option<bool>> = vec![None; self.voters + 1];
        for (mask, &wins) in self.winning.iter().enumerate() {
            let k = mask.count_ones() as usize;
            match status[k] {
                None => status[k] = Some(wins),
                Some(s) if s != wins => return None,
                Some(_) => {}
            }
        }
        let quota = status.iter().position(|s| *s == Some(true))?;
        WeightedVotingSystem::new(
            vec![Rational::one(); self.voters],
            Rational::from_integer(BigInt::from(quota)),
        )
        .ok()
    }
}

impl VotingRule for ExplicitVotingSystem {
    fn voters(&self) -> usize {
        self.voters
    }

    fn wins_mask(&self, mask: u64) -> bool {
        self.winning[mask as usize]
    }

    fn winning_table(&self) -> Vec<bool> {
        self.winning.clone()
    }
}

fn members(mask: usize, voters: usize) -> Vec<usize> {
    (0..voters).filter(|v| mask >> v & 1 == 1).collect()
}
