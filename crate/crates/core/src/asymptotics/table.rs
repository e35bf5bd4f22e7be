use std::fmt;

use super::{approx, bounds, closed_forms, limits};
use crate::engine::{self, EngineLimits};
use crate::exact::{self, Rational};
use crate::measures::BeliefMeasure;
use crate::systems::WeightedVotingSystem;
use crate::{Error, Quantity, Result};

/// Which unit-weight system to build at each `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemFamily {
    /// `r = ½ + 1/(2N)`.
    Majority,
    /// Fixed relative quota.
    Simple { relative_quota: Rational },
}

impl SystemFamily {
    fn relative_quota_at(&self, voters: usize) -> Rational {
        match self {
            SystemFamily::Majority => exact::rational(1, 2) + exact::rational(1, 2 * voters as i64),
            SystemFamily::Simple { relative_quota } => relative_quota.clone(),
        }
    }

    /// Relative quota the family converges to.
    fn limiting_quota(&self) -> Rational {
        match self {
            SystemFamily::Majority => exact::rational(1, 2),
            SystemFamily::Simple { relative_quota } => relative_quota.clone(),
        }
    }

    fn system(&self, voters: usize) -> Result<WeightedVotingSystem> {
        match self {
            SystemFamily::Majority => WeightedVotingSystem::simple_majority(voters),
            SystemFamily::Simple { relative_quota } => {
                WeightedVotingSystem::simple(voters, relative_quota)
            }
        }
    }
}

impl fmt::Display for SystemFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemFamily::Majority => write!(f, "simple-majority"),
            SystemFamily::Simple { relative_quota } => write!(f, "simple(r={relative_quota})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => exact::to_f64(r),
            Value::Approx(x) => *x,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitRow {
    pub voters: usize,
    pub value: Value,
    /// Limit, or the N-dependent asymptote for Penrose-Banzhaf majority
    /// decisiveness and success.
    pub limit: Option<f64>,
    pub bound: Option<f64>,
    pub gap: Option<f64>,
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    pub quantity: Quantity,
    pub family: String,
    pub measure: String,
    pub rows: Vec<LimitRow>,
    pub warnings: Vec<String>,
}

pub fn convergence_table(
    quantity: Quantity,
    family: &SystemFamily,
    mu: &BeliefMeasure,
    voter_counts: &[usize],
) -> Result<LimitReport> {
    convergence_table_with(quantity, family, mu, voter_counts, &EngineLimits::default())
}

/// Evaluates `quantity` (for voter 1, all voters being alike) at each `N`.
///
/// Values are exact: Shapley-Shubik uses the closed forms and other
/// measures the engine. Penrose-Banzhaf decisiveness and total success past
/// the engine cap fall back to log-gamma floating evaluation.
pub fn convergence_table_with(
    quantity: Quantity,
    family: &SystemFamily,
    mu: &BeliefMeasure,
    voter_counts: &[usize],
    engine_limits: &EngineLimits,
) -> Result<LimitReport> {
    if voter_counts.is_empty() {
        return Err(Error::domain("N list", "[]", "a non-empty ascending list"));
    }
    if voter_counts.windows(2).any(|w| w[0] >= w[1]) || voter_counts[0] == 0 {
        return Err(Error::domain(
            "N list",
            format!("{voter_counts:?}"),
            "strictly ascending positive voter counts",
        ));
    }
    let r_limit = family.limiting_quota();
    let lim = if r_limit < Rational::from_integer(1.into()) {
        Some(limits::limits(&r_limit, Some(mu))?)
    } else {
        None
    };
    let majority_pb = matches!(family, SystemFamily::Majority) && mu.is_penrose_banzhaf();

    let mut rows = Vec::with_capacity(voter_counts.len());
    for &n in voter_counts {
        let value = evaluate(quantity, family, mu, n, engine_limits)?;
        let limit = if majority_pb {
            Some(match quantity {
                Quantity::D => limits::db_approx(n),
                Quantity::DPlus | Quantity::DMinus => limits::db_approx(n) / 2.0,
                Quantity::S => limits::sb_approx(n),
                Quantity::SPlus | Quantity::SMinus => 0.25,
                Quantity::E => 0.5,
            })
        } else {
            lim.as_ref().map(|l| limit_value(quantity, mu, l))
        };

        let r_n = family.relative_quota_at(n);
        let bound = if mu.is_penrose_banzhaf() && r_n > exact::rational(1, 2) {
            match quantity {
                Quantity::E => Some(bounds::effb_bound(&r_n, n)?),
                Quantity::SPlus => Some(bounds::sbp_bound(&r_n, n)?),
                _ => None,
            }
        } else {
            None
        };

        let v = value.to_f64();
        if let Some(b) = bound {
            if v > b {
                return Err(Error::BoundViolated {
                    n,
                    value: v,
                    bound: b,
                });
            }
        }
        rows.push(LimitRow {
            voters: n,
            gap: limit.map(|l| (v - l).abs()),
            ratio: limit.filter(|l| *l != 0.0).map(|l| v / l),
            value,
            limit,
            bound,
        });
    }

    Ok(LimitReport {
        quantity,
        family: family.to_string(),
        measure: mu.label(),
        rows,
        warnings: lim.map(|l| l.warnings).unwrap_or_default(),
    })
}

fn limit_value(quantity: Quantity, mu: &BeliefMeasure, l: &limits::Limits) -> f64 {
    let pick = |pb: &Rational, ss: &Rational, cb: fn(&limits::CommonBeliefLimits) -> &Rational| {
        if mu.is_penrose_banzhaf() {
            exact::to_f64(pb)
        } else if mu.is_shapley_shubik() {
            exact::to_f64(ss)
        } else {
            exact::to_f64(cb(l.common_belief.as_ref().expect("measure supplied")))
        }
    };
    match quantity {
        Quantity::D | Quantity::DPlus | Quantity::DMinus => 0.0,
        Quantity::E => pick(&l.banzhaf_efficiency, &l.shapley_efficiency, |c| {
            &c.efficiency
        }),
        Quantity::SPlus => pick(&l.banzhaf_success_plus, &l.shapley_success_plus, |c| {
            &c.success_plus
        }),
        Quantity::SMinus => pick(&l.banzhaf_success_minus, &l.shapley_success_minus, |c| {
            &c.success_minus
        }),
        Quantity::S => pick(&l.banzhaf_success, &l.shapley_success, |c| &c.success),
    }
}

fn evaluate(
    quantity: Quantity,
    family: &SystemFamily,
    mu: &BeliefMeasure,
    n: usize,
    engine_limits: &EngineLimits,
) -> Result<Value> {
    if mu.is_shapley_shubik() {
        let cf = closed_forms::closed_forms(n, &family.relative_quota_at(n))?;
        let v = match quantity {
            Quantity::DPlus => cf.decisiveness_plus,
            Quantity::DMinus => cf.decisiveness_minus,
            Quantity::D => cf.decisiveness,
            Quantity::SPlus => cf.success_plus,
            Quantity::SMinus => cf.success_minus,
            Quantity::S => cf.success,
            Quantity::E => cf.efficiency,
        };
        return Ok(Value::Exact(v));
    }

    let sys = family.system(n)?;
    if n <= engine_limits.max_uniform_voters {
        let report = engine::analyze_with(&sys, mu, engine_limits)?;
        return Ok(Value::Exact(report.value(quantity, 0).clone()));
    }

    if mu.is_penrose_banzhaf() {
        let m = sys.min_winning_size().expect("unit weights");
        let d = approx::banzhaf_decisiveness_simple(n, m)?;
        match quantity {
            Quantity::D => return Ok(Value::Approx(d)),
            Quantity::DPlus | Quantity::DMinus => return Ok(Value::Approx(d / 2.0)),
            // Penrose-Banzhaf success is ½ + ½·D for every system.
            Quantity::S => return Ok(Value::Approx(0.5 + d / 2.0)),
            _ => {}
        }
    }
    Err(Error::Resource(format!(
        "{quantity} at N = {n} exceeds the exact engine cap of {} voters and has no closed form for {}",
        engine_limits.max_uniform_voters,
        mu.label()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn shapley_efficiency_gaps_shrink() {
        let fam = SystemFamily::Simple {
            relative_quota: rational(3, 5),
        };
        let t = convergence_table(
            Quantity::E,
            &fam,
            &BeliefMeasure::shapley_shubik(),
            &[11, 101, 1001],
        )
        .unwrap();
        let gaps: Vec<f64> = t.rows.iter().map(|r| r.gap.unwrap()).collect();
        assert!(gaps.windows(2).all(|g| g[1] < g[0]), "{gaps:?}");
        for row in &t.rows {
            let n = row.voters as f64;
            assert!(row.gap.unwrap() < 1.0 / (n + 1.0) + 1.0 / n);
            assert!((row.limit.unwrap() - 0.4).abs() < 1e-15);
        }
        assert_eq!(t.rows[0].value, Value::Exact(rational(5, 12)));
    }

    #[test]
    fn banzhaf_majority_decisiveness_tracks_asymptote() {
        let t = convergence_table(
            Quantity::D,
            &SystemFamily::Majority,
            &BeliefMeasure::penrose_banzhaf(),
            &[101, 1001, 10001],
        )
        .unwrap();
        assert!(matches!(t.rows[0].value, Value::Exact(_)));
        assert!(matches!(t.rows[2].value, Value::Approx(_)));
        let err: Vec<f64> = t
            .rows
            .iter()
            .map(|r| (r.ratio.unwrap() - 1.0).abs())
            .collect();
        assert!(err.windows(2).all(|e| e[1] < e[0]), "{err:?}");
        assert!(err[2] < 1e-3);
    }

    #[test]
    fn shapley_majority_success_is_exact() {
        let ns: Vec<usize> = (3..=101).step_by(2).collect();
        let t = convergence_table(
            Quantity::S,
            &SystemFamily::Simple {
                relative_quota: rational(1, 2),
            },
            &BeliefMeasure::shapley_shubik(),
            &ns,
        )
        .unwrap();
        for row in &t.rows {
            let n = row.voters as i64;
            assert_eq!(row.value, Value::Exact(rational(3, 4) + rational(1, 4 * n)));
        }
    }

    #[test]
    fn banzhaf_bounds_are_attached_and_hold() {
        let fam = SystemFamily::Simple {
            relative_quota: rational(3, 5),
        };
        for q in [Quantity::E, Quantity::SPlus] {
            let t = convergence_table(q, &fam, &BeliefMeasure::penrose_banzhaf(), &[10, 50, 100])
                .unwrap();
            for row in &t.rows {
                assert!(row.bound.unwrap() >= row.value.to_f64());
            }
        }
    }

    #[test]
    fn argument_errors() {
        let mu = BeliefMeasure::unanimity();
        assert!(convergence_table(Quantity::E, &SystemFamily::Majority, &mu, &[]).is_err());
        assert!(convergence_table(Quantity::E, &SystemFamily::Majority, &mu, &[5, 3]).is_err());
        assert!(convergence_table(Quantity::E, &SystemFamily::Majority, &mu, &[0, 3]).is_err());
        assert!(matches!(
            convergence_table(Quantity::E, &SystemFamily::Majority, &mu, &[6000]),
            Err(Error::Resource(_))
        ));
    }
}
