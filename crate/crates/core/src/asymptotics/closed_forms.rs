use num_traits::{One, Signed, ToPrimitive};

use crate::exact::{self, Rational};
use crate::{Error, Result};

/// Exact Shapley-Shubik values for the unit-weight system with `N` voters
/// and relative quota `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForms {
    pub voters: usize,
    pub relative_quota: Rational,
    /// `⌈rN⌉`: a coalition wins iff it has at least this many members.
    pub min_winning_size: usize,
    pub success_plus: Rational,
    pub success_minus: Rational,
    pub success: Rational,
    pub efficiency: Rational,
    pub decisiveness_plus: Rational,
    pub decisiveness_minus: Rational,
    pub decisiveness: Rational,
    /// Odd/even simple-majority formulas for the same `N`.
    pub majority: MajorityForms,
}

/// Shapley-Shubik values for the simple majority system, split by parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityForms {
    pub success_plus: Rational,
    pub success_minus: Rational,
    pub success: Rational,
    pub decisiveness_plus: Rational,
    pub decisiveness_minus: Rational,
    pub decisiveness: Rational,
}

pub fn majority_closed_forms(voters: usize) -> Result<MajorityForms> {
    if voters == 0 {
        return Err(Error::domain("N", 0, "N >= 1"));
    }
    let n = voters as i64;
    let eighth = exact::rational(1, 8);
    let three_eighths = exact::rational(3, 8);
    let (success_plus, success_minus, decisiveness_plus, decisiveness_minus) = if voters % 2 == 1 {
        let s = &three_eighths + exact::rational(1, 8 * n);
        let d = exact::rational(1, 2 * n);
        (s.clone(), s, d.clone(), d)
    } else {
        let correction = exact::rational(1, 2 * n * (n + 1));
        (
            &three_eighths - &eighth * exact::rational(1, n + 1),
            &three_eighths + exact::rational(3, 8 * (n + 1)),
            exact::rational(1, 2 * n) - &correction,
            exact::rational(1, 2 * n) + &correction,
        )
    };
    Ok(MajorityForms {
        success: &success_plus + &success_minus,
        decisiveness: &decisiveness_plus + &decisiveness_minus,
        success_plus,
        success_minus,
        decisiveness_plus,
        decisiveness_minus,
    })
}

/// With `m = ⌈rN⌉` and `M = m - 1`:
///
/// * `S⁺ = ½ - M(M+1) / (2N(N+1))`
/// * `S⁻ = ½ - (N-m)(N-m+1) / (2N(N+1))`
/// * `E  = (N - m + 1) / (N+1)`
/// * `D⁺ = (N-M) / (N(N+1))`, `D⁻ = (M+1) / (N(N+1))`
pub fn closed_forms(voters: usize, relative_quota: &Rational) -> Result<ClosedForms> {
    if voters == 0 {
        return Err(Error::domain("N", 0, "N >= 1"));
    }
    if !relative_quota.is_positive() || *relative_quota > Rational::one() {
        return Err(Error::domain("r", relative_quota, "(0, 1]"));
    }
    let n = voters as i64;
    let m = exact::ceil(&(relative_quota * exact::integer(n)))
        .to_i64()
        .expect("bounded by N");
    let big_m = m - 1;
    let denom = 2 * n * (n + 1);
    let half = exact::rational(1, 2);
    let success_plus = &half - exact::rational(big_m * (big_m + 1), denom);
    let success_minus = &half - exact::rational((n - m) * (n - m + 1), denom);
    let decisiveness_plus = exact::rational(n - big_m, n * (n + 1));
    let decisiveness_minus = exact::rational(big_m + 1, n * (n + 1));
    Ok(ClosedForms {
        voters,
        relative_quota: relative_quota.clone(),
        min_winning_size: m as usize,
        success: &success_plus + &success_minus,
        efficiency: exact::rational(n - m + 1, n + 1),
        decisiveness: &decisiveness_plus + &decisiveness_minus,
        success_plus,
        success_minus,
        decisiveness_plus,
        decisiveness_minus,
        majority: majority_closed_forms(voters)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn majority_odd_and_even() {
        let three = majority_closed_forms(3).unwrap();
        assert_eq!(three.success_plus, rational(5, 12));
        assert_eq!(three.success, rational(5, 6));
        let four = majority_closed_forms(4).unwrap();
        assert_eq!(four.success_plus, rational(3, 8) - rational(1, 40));
        assert_eq!(four.success_minus, rational(3, 8) + rational(3, 40));
        assert_eq!(four.success, rational(3, 4) + rational(1, 20));
        // N = 2: D⁺ = P({2}) = 1/6, D⁻ = P({1,2}) = 1/3.
        let two = majority_closed_forms(2).unwrap();
        assert_eq!(two.decisiveness_plus, rational(1, 6));
        assert_eq!(two.decisiveness_minus, rational(1, 3));
    }

    #[test]
    fn general_quota() {
        let cf = closed_forms(10, &rational(3, 5)).unwrap();
        assert_eq!(cf.min_winning_size, 6);
        assert_eq!(cf.success_plus, rational(4, 11));
        assert_eq!(cf.efficiency, rational(5, 11));
        assert_eq!(cf.decisiveness, rational(1, 10));
    }

    #[test]
    fn general_quota_agrees_with_majority_parity_forms() {
        for n in 1..60usize {
            let r = rational(1, 2) + rational(1, 2 * n as i64);
            let cf = closed_forms(n, &r).unwrap();
            assert_eq!(cf.success_plus, cf.majority.success_plus, "N = {n}");
            assert_eq!(cf.success_minus, cf.majority.success_minus, "N = {n}");
            assert_eq!(
                cf.decisiveness_plus, cf.majority.decisiveness_plus,
                "N = {n}"
            );
            assert_eq!(
                cf.decisiveness_minus, cf.majority.decisiveness_minus,
                "N = {n}"
            );
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(closed_forms(0, &rational(1, 2)).is_err());
        assert!(closed_forms(5, &rational(0, 1)).is_err());
        assert!(closed_forms(5, &rational(6, 5)).is_err());
    }
}
