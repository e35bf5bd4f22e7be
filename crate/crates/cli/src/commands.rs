use cbpower::asymptotics::{convergence_table, SystemFamily, Value};
use cbpower::engine::{self, PowerReport};
use cbpower::exact::{self, Rational};
use cbpower::{
    montecarlo, BeliefMeasure, Error, ExplicitVotingSystem, Quantity, VotingRule,
    WeightedVotingSystem,
};
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::args::{AnalyzeArgs, ConvergeArgs, InvariantCheckArgs, SampleArgs, ValidateArgs};
use crate::error::{CliError, Result};
use crate::input::{self, SystemInput};
use crate::report::{
    AnalysisDoc, CheckRow, ConvergenceDoc, ConvergenceRow, EstimateRow, InvariantDoc, Numeric,
    SampleDoc, Status, ValidationDoc,
};

fn explicit_label(sys: &ExplicitVotingSystem) -> String {
    format!(
        "explicit(voters={};winning={})",
        sys.voter_count(),
        sys.winning_coalitions().count()
    )
}

pub fn analyze(args: &AnalyzeArgs, numeric: Numeric) -> Result<AnalysisDoc> {
    let mu = input::load_measure(&args.measure)?;
    input::require_symmetric(&mu, false)?;
    let report = match input::load_system(&args.system)? {
        SystemInput::Weighted(sys) => engine::analyze(&sys, &mu)?,
        SystemInput::Explicit(sys) => {
            engine::brute_force_analyze(&sys, &mu, &explicit_label(&sys))?
        }
    };
    Ok(AnalysisDoc::new(&report, numeric))
}

struct Checks {
    rows: Vec<CheckRow>,
}

impl Checks {
    fn push(&mut self, check: &str, measure: &str, ok: bool, pass: String, fail: String) {
        let (status, detail) = if ok {
            (Status::Pass, pass)
        } else {
            (Status::Fail, fail)
        };
        self.rows.push(CheckRow {
            check: check.into(),
            measure: measure.into(),
            status,
            detail,
        });
    }

    fn skip(&mut self, check: &str, measure: &str, detail: String) {
        self.rows.push(CheckRow {
            check: check.into(),
            measure: measure.into(),
            status: Status::Skip,
            detail,
        });
    }
}

fn unit_interval(r: &Rational) -> bool {
    *r >= Rational::zero() && *r <= Rational::one()
}

fn measure_checks(checks: &mut Checks, name: &str, mu: &BeliefMeasure, n: usize) -> Result<()> {
    let kernel = mu.kernel(n)?;
    let total: Rational = (0..=n).map(|k| kernel.size_probability(k)).sum();
    let symmetric = (0..=n).all(|k| kernel.value(k) == kernel.value(n - k));
    checks.push(
        "kernel",
        name,
        total.is_one() && symmetric,
        format!("sum of size probabilities is 1 and w(k) = w(N-k) for N = {n}"),
        format!("sum of size probabilities = {total}, symmetric = {symmetric}"),
    );
    Ok(())
}

fn report_checks(checks: &mut Checks, name: &str, mu: &BeliefMeasure, report: &PowerReport) {
    let ranges = unit_interval(&report.efficiency)
        && report.voters.iter().all(|v| {
            v.d == &v.d_plus + &v.d_minus
                && v.s == &v.s_plus + &v.s_minus
                && [&v.d_plus, &v.d_minus, &v.d, &v.s_plus, &v.s_minus, &v.s]
                    .into_iter()
                    .all(unit_interval)
        });
    checks.push(
        "ranges",
        name,
        ranges,
        "all values in [0,1], D = DPlus + DMinus, S = SPlus + SMinus".into(),
        "a value leaves [0,1] or a split does not add up".into(),
    );

    if mu.is_penrose_banzhaf() {
        let bad = report
            .voters
            .iter()
            .find(|v| v.s != exact::rational(1, 2) + &v.d / exact::integer(2));
        checks.push(
            "dubey-shapiro",
            name,
            bad.is_none(),
            "S = 1/2 + D/2 for every voter".into(),
            format!("fails for voter {}", bad.map_or(0, |v| v.voter + 1)),
        );
    }
    if mu.is_shapley_shubik() {
        let total: Rational = report.voters.iter().map(|v| &v.d).sum();
        checks.push(
            "decisiveness-sum",
            name,
            total.is_one(),
            "sum of D over voters is 1".into(),
            format!("sum of D over voters is {total}"),
        );
    }
}

fn swing_check(checks: &mut Checks, sys: &WeightedVotingSystem) -> Result<()> {
    let table = sys.winning_table();
    let mut bad = None;
    for v in 0..sys.voter_count() {
        let profile = engine::size_profile(sys, v)?;
        let plus: BigUint = profile.swing_plus.iter().sum();
        let bit = 1usize << v;
        let minus = (0..table.len())
            .filter(|&a| a & bit != 0 && table[a] && !table[a ^ bit])
            .count();
        if plus != BigUint::from(minus) {
            bad = Some(v + 1);
            break;
        }
    }
    checks.push(
        "swing-bijection",
        "-",
        bad.is_none(),
        "joining and leaving swings are equinumerous for every voter".into(),
        format!("swing counts differ for voter {}", bad.unwrap_or(0)),
    );
    Ok(())
}

/// Returns the document and whether every check passed.
pub fn validate(args: &ValidateArgs) -> Result<(ValidationDoc, bool)> {
    let sys = input::load_weighted(&args.system)?;
    let n = sys.voter_count();
    let n_max = args.n_max as usize;
    let measures: Vec<(String, BeliefMeasure)> = match &args.measure {
        Some(m) => {
            let mu = input::load_measure(m)?;
            input::require_symmetric(&mu, false)?;
            vec![(mu.label(), mu)]
        }
        None => vec![
            ("penrose-banzhaf".into(), BeliefMeasure::penrose_banzhaf()),
            ("shapley-shubik".into(), BeliefMeasure::shapley_shubik()),
            ("unanimity".into(), BeliefMeasure::unanimity()),
        ],
    };

    let mut checks = Checks { rows: Vec::new() };
    if n <= n_max {
        swing_check(&mut checks, &sys)?;
    } else {
        checks.skip(
            "swing-bijection",
            "-",
            format!("N = {n} exceeds --n-max {n_max}"),
        );
    }
    for (name, mu) in &measures {
        measure_checks(&mut checks, name, mu, n)?;
        let report = engine::analyze(&sys, mu)?;
        report_checks(&mut checks, name, mu, &report);
        if n <= n_max {
            let oracle = engine::brute_force_analyze(&sys, mu, &sys.label())?;
            checks.push(
                "oracle",
                name,
                oracle == report,
                format!("engine equals enumeration of all {} coalitions", 1u64 << n),
                "engine and enumeration disagree".into(),
            );
        } else {
            checks.skip("oracle", name, format!("N = {n} exceeds --n-max {n_max}"));
        }
    }

    let count = |s: Status| checks.rows.iter().filter(|c| c.status == s).count();
    let (passed, failed, skipped) = (
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skip),
    );
    let ok = failed == 0;
    Ok((
        ValidationDoc {
            system: sys.label(),
            status: if ok { Status::Pass } else { Status::Fail },
            summary: format!("{passed} passed, {failed} failed, {skipped} skipped"),
            checks: checks.rows,
        },
        ok,
    ))
}

pub fn converge(args: &ConvergeArgs, numeric: Numeric) -> Result<ConvergenceDoc> {
    let quantity: Quantity = args.quantity.parse()?;
    let mu = input::load_measure(&args.measure)?;
    input::require_symmetric(&mu, false)?;
    let family = if args.majority {
        SystemFamily::Majority
    } else {
        let r = args
            .relative_quota
            .as_deref()
            .ok_or_else(|| CliError::Usage("--simple needs --relative-quota".into()))?;
        SystemFamily::Simple {
            relative_quota: exact::parse_rational(r)?,
        }
    };
    let voters = input::parse_voter_range(&args.voters)?;
    let table = convergence_table(quantity, &family, &mu, &voters)?;
    Ok(ConvergenceDoc {
        quantity: quantity.to_string(),
        family: table.family,
        measure: table.measure,
        warnings: table.warnings,
        rows: table
            .rows
            .into_iter()
            .map(|row| {
                let (value, exact) = match &row.value {
                    Value::Exact(r) => (numeric.format(r), true),
                    Value::Approx(x) => (x.to_string(), false),
                };
                ConvergenceRow {
                    voters: row.voters,
                    value,
                    exact,
                    limit: row.limit,
                    bound: row.bound,
                    gap: row.gap,
                    ratio: row.ratio,
                }
            })
            .collect(),
    })
}

fn parse_quantities(list: Option<&str>) -> Result<Vec<Quantity>> {
    match list {
        None => Ok(Quantity::ALL.to_vec()),
        Some(text) => Ok(text
            .split(',')
            .map(|q| q.trim().parse())
            .collect::<Result<Vec<Quantity>, Error>>()?),
    }
}

pub fn sample(args: &SampleArgs, numeric: Numeric) -> Result<SampleDoc> {
    let sys = input::load_weighted(&args.system)?;
    let mu = input::load_measure(&args.measure)?;
    input::require_symmetric(&mu, args.allow_asymmetric)?;
    let quantities = parse_quantities(args.quantity.as_deref())?;
    let estimates = montecarlo::estimate(&sys, &mu, &quantities, None, args.samples, args.seed)?;

    let mut warnings = Vec::new();
    let exact_report = match engine::analyze(&sys, &mu) {
        Ok(r) => Some(r),
        Err(e @ Error::Resource(_)) => {
            warnings.push(format!("exact values unavailable: {e}"));
            None
        }
        Err(e) => return Err(e.into()),
    };

    let rows = estimates
        .iter()
        .map(|e| {
            let exact_value = exact_report
                .as_ref()
                .map(|r| r.value(e.quantity, e.voter.unwrap_or(0)));
            let z = exact_value
                .filter(|_| e.std_error > 0.0)
                .map(|x| (e.estimate - exact::to_f64(x)).abs() / e.std_error);
            EstimateRow {
                voter: e.voter.map(|v| v + 1),
                quantity: e.quantity.to_string(),
                estimate: e.estimate,
                std_error: e.std_error,
                hits: e.hits,
                exact: exact_value.map(|x| numeric.format(x)),
                z,
            }
        })
        .collect();
    Ok(SampleDoc {
        system: sys.label(),
        measure: mu.label(),
        samples: args.samples,
        seed: args.seed,
        warnings,
        estimates: rows,
    })
}

pub fn invariant_check(args: &InvariantCheckArgs, numeric: Numeric) -> Result<InvariantDoc> {
    let family = input::load_family(&args.family)?;
    let detected = family.detect_invariant();
    Ok(InvariantDoc {
        voters: family.voter_count(),
        winning_coalitions: family.winning_coalitions().count(),
        invariant: detected.is_some(),
        weights: detected
            .as_ref()
            .map(|s| s.weights().iter().map(|w| numeric.format(w)).collect()),
        quota: detected.as_ref().map(|s| numeric.format(s.quota())),
    })
}
