#![allow(dead_code)]

use cbpower::exact::{integer, rational};
use cbpower::measures::{Atom, Segment};
use cbpower::{BeliefMeasure, Rational, WeightedVotingSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random weighted system: integer weights in `0..=9` (not all zero) and a
/// quota drawn from the achievable range `(0, Σw]`, sometimes half-integral.
pub fn random_system(rng: &mut impl Rng, max_voters: usize) -> WeightedVotingSystem {
    let n = rng.random_range(1..=max_voters);
    let mut weights: Vec<i64> = (0..n).map(|_| rng.random_range(0..=9)).collect();
    if weights.iter().all(|&w| w == 0) {
        weights[0] = 1;
    }
    let total: i64 = weights.iter().sum();
    let quota = if total > 1 && rng.random_bool(0.3) {
        rational(rng.random_range(1..2 * total), 2)
    } else {
        integer(rng.random_range(1..=total))
    };
    WeightedVotingSystem::new(weights.into_iter().map(integer).collect(), quota).unwrap()
}

pub fn corpus(seed: u64, count: usize, max_voters: usize) -> Vec<WeightedVotingSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_system(&mut rng, max_voters))
        .collect()
}

/// `¼δ_{1/5} + ¼δ_{4/5} + ½·uniform[0,1]`.
pub fn two_atom_mixture() -> BeliefMeasure {
    BeliefMeasure::new(
        vec![
            Atom {
                location: rational(1, 5),
                mass: rational(1, 4),
            },
            Atom {
                location: rational(4, 5),
                mass: rational(1, 4),
            },
        ],
        vec![Segment {
            start: integer(0),
            end: integer(1),
            mass: rational(1, 2),
        }],
    )
    .unwrap()
}

/// `½·uniform[0,1] + ¼δ_{3/10} + ¼δ_{7/10}`.
pub fn tenths_mixture() -> BeliefMeasure {
    BeliefMeasure::new(
        vec![
            Atom {
                location: rational(3, 10),
                mass: rational(1, 4),
            },
            Atom {
                location: rational(7, 10),
                mass: rational(1, 4),
            },
        ],
        vec![Segment {
            start: integer(0),
            end: integer(1),
            mass: rational(1, 2),
        }],
    )
    .unwrap()
}

/// Symmetric measure with a split segment and an atom at ½.
pub fn split_mixture() -> BeliefMeasure {
    BeliefMeasure::new(
        vec![Atom {
            location: rational(1, 2),
            mass: rational(1, 5),
        }],
        vec![
            Segment {
                start: integer(0),
                end: rational(1, 3),
                mass: rational(2, 5),
            },
            Segment {
                start: rational(2, 3),
                end: integer(1),
                mass: rational(2, 5),
            },
        ],
    )
    .unwrap()
}

pub fn four_measures() -> Vec<(&'static str, BeliefMeasure)> {
    vec![
        ("penrose-banzhaf", BeliefMeasure::penrose_banzhaf()),
        ("shapley-shubik", BeliefMeasure::shapley_shubik()),
        ("unanimity", BeliefMeasure::unanimity()),
        ("two-atom mixture", two_atom_mixture()),
    ]
}

pub fn measure_corpus() -> Vec<(&'static str, BeliefMeasure)> {
    let mut all = four_measures();
    all.push(("tenths mixture", tenths_mixture()));
    all.push(("split mixture", split_mixture()));
    all
}

pub fn half() -> Rational {
    rational(1, 2)
}
