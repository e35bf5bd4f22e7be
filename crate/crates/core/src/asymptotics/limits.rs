use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};

use crate::exact::{self, Rational};
use crate::measures::BeliefMeasure;
use crate::{Error, Result};

/// `2 / √(2πN)`, the large-N Penrose-Banzhaf decisiveness under simple
/// majority.
pub fn db_approx(voters: usize) -> f64 {
    2.0 / (2.0 * PI * voters as f64).sqrt()
}

/// `½ + 1/√(2πN)`, the matching Penrose-Banzhaf success rate.
pub fn sb_approx(voters: usize) -> f64 {
    0.5 + 1.0 / (2.0 * PI * voters as f64).sqrt()
}

/// Large-N limits for unit-weight systems (or any weight sequence whose
/// Laakso-Taagepera index vanishes, for the common-belief part) at fixed
/// relative quota `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub relative_quota: Rational,
    pub banzhaf_efficiency: Rational,
    pub banzhaf_success_plus: Rational,
    pub banzhaf_success_minus: Rational,
    pub banzhaf_success: Rational,
    pub shapley_efficiency: Rational,
    pub shapley_success_plus: Rational,
    pub shapley_success_minus: Rational,
    pub shapley_success: Rational,
    pub common_belief: Option<CommonBeliefLimits>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonBeliefLimits {
    /// `μ([r, 1])`
    pub efficiency: Rational,
    /// `∫_[r,1] p dμ`
    pub success_plus: Rational,
    /// `∫_[0,r) (1-p) dμ`
    pub success_minus: Rational,
    pub success: Rational,
    /// `μ({r})`; the limits above assume it is zero.
    pub atom_at_quota: Rational,
}

pub fn limits(relative_quota: &Rational, mu: Option<&BeliefMeasure>) -> Result<Limits> {
    let r = relative_quota;
    if !r.is_positive() || *r >= Rational::one() {
        return Err(Error::domain("r", r, "(0, 1)"));
    }
    let half = exact::rational(1, 2);
    let quarter = exact::rational(1, 4);
    let zero = Rational::zero();
    let one = Rational::one();

    let (banzhaf_efficiency, banzhaf_success_plus, banzhaf_success_minus) = match r.cmp(&half) {
        std::cmp::Ordering::Less => (one.clone(), half.clone(), zero.clone()),
        std::cmp::Ordering::Equal => (half.clone(), quarter.clone(), quarter.clone()),
        std::cmp::Ordering::Greater => (zero.clone(), zero.clone(), half.clone()),
    };
    let co = &one - r;
    let shapley_success_plus = &half - r * r / exact::integer(2);
    let shapley_success_minus = &half - &co * &co / exact::integer(2);

    let mut warnings = Vec::new();
    let common_belief = match mu {
        Some(mu) => {
            let tails = mu.tail_integrals(r)?;
            if tails.atom_at_threshold.is_positive() {
                warnings.push(format!(
                    "μ({{{r}}}) = {} > 0: the common-belief limits assume no atom at the relative quota",
                    tails.atom_at_threshold
                ));
            }
            Some(CommonBeliefLimits {
                success: &tails.first_moment_tail + &tails.complement_moment_tail,
                efficiency: tails.mass_tail,
                success_plus: tails.first_moment_tail,
                success_minus: tails.complement_moment_tail,
                atom_at_quota: tails.atom_at_threshold,
            })
        }
        None => None,
    };

    Ok(Limits {
        relative_quota: r.clone(),
        banzhaf_success: &banzhaf_success_plus + &banzhaf_success_minus,
        banzhaf_efficiency,
        banzhaf_success_plus,
        banzhaf_success_minus,
        shapley_efficiency: co,
        shapley_success: &shapley_success_plus + &shapley_success_minus,
        shapley_success_plus,
        shapley_success_minus,
        common_belief,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn simple_majority_limits() {
        let l = limits(&rational(1, 2), None).unwrap();
        assert_eq!(l.shapley_success, rational(3, 4));
        assert_eq!(l.banzhaf_efficiency, rational(1, 2));
        assert_eq!(l.banzhaf_success, rational(1, 2));
    }

    #[test]
    fn shapley_limits_agree_with_uniform_tails() {
        let mu = BeliefMeasure::shapley_shubik();
        let l = limits(&rational(3, 10), Some(&mu)).unwrap();
        let cb = l.common_belief.as_ref().unwrap();
        assert_eq!(cb.efficiency, rational(7, 10));
        assert_eq!(cb.efficiency, l.shapley_efficiency);
        assert_eq!(cb.success_plus, l.shapley_success_plus);
        assert_eq!(cb.success_minus, l.shapley_success_minus);
        assert!(l.warnings.is_empty());
    }

    #[test]
    fn extreme_quotas_approach_one_half() {
        let lo = limits(&rational(1, 1_000_000), None).unwrap();
        let hi = limits(&rational(999_999, 1_000_000), None).unwrap();
        let eps = rational(1, 100_000);
        assert!((lo.shapley_success - rational(1, 2)).abs() < eps);
        assert!((hi.shapley_success - rational(1, 2)).abs() < eps);
    }

    #[test]
    fn shapley_success_limit_peaks_at_one_half() {
        let best = (1..100)
            .map(|j| limits(&rational(j, 100), None).unwrap())
            .max_by(|a, b| a.shapley_success.cmp(&b.shapley_success))
            .unwrap();
        assert_eq!(best.relative_quota, rational(1, 2));
        assert_eq!(best.shapley_success, rational(3, 4));
        for j in 1..100 {
            let l = limits(&rational(j, 100), None).unwrap();
            let r = rational(j, 100);
            let co = Rational::one() - &r;
            let expect = Rational::one() - (&r * &r + &co * &co) / exact::integer(2);
            assert_eq!(&l.shapley_success_plus + &l.shapley_success_minus, expect);
        }
    }

    #[test]
    fn warns_on_atom_at_quota() {
        let l = limits(&rational(1, 2), Some(&BeliefMeasure::penrose_banzhaf())).unwrap();
        assert_eq!(l.warnings.len(), 1);
        assert!(limits(&rational(1, 1), None).is_err());
    }

    #[test]
    fn approximations_at_small_n() {
        assert!((db_approx(1) - 0.797_884_560_802_865_4).abs() < 1e-15);
        assert!((sb_approx(1) - 0.5 - 0.398_942_280_401_432_7).abs() < 1e-15);
    }
}
