//! Monte Carlo cross-validation by two-stage sampling: draw a bias `p ~ μ`,
//! then let every voter vote yes independently with probability `p`.
//!
//! Sample `i` always uses ChaCha stream `i` under the run seed, so results
//! do not depend on how samples are split across threads.

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exact::{self, Rational};
use crate::measures::BeliefMeasure;
use crate::systems::WeightedVotingSystem;
use crate::{Error, Quantity, Result};

const CHUNK: u64 = 2048;

#[derive(Debug, Clone, Copy)]
enum Component {
    Point(f64),
    Uniform { start: f64, width: f64 },
}

/// Precomputed mixture components of a measure for fast bias draws.
#[derive(Debug, Clone)]
pub struct Sampler {
    /// Cumulative masses, accumulated exactly and then rounded.
    cumulative: Vec<f64>,
    components: Vec<Component>,
}

impl Sampler {
    pub fn new(mu: &BeliefMeasure) -> Self {
        let mut acc = Rational::zero();
        let mut cumulative = Vec::new();
        let mut components = Vec::new();
        for atom in mu.atoms() {
            acc += &atom.mass;
            cumulative.push(exact::to_f64(&acc));
            components.push(Component::Point(exact::to_f64(&atom.location)));
        }
        for seg in mu.segments() {
            acc += &seg.mass;
            cumulative.push(exact::to_f64(&acc));
            let start = exact::to_f64(&seg.start);
            components.push(Component::Uniform {
                start,
                width: exact::to_f64(&seg.end) - start,
            });
        }
        Sampler {
            cumulative,
            components,
        }
    }

    /// Draws the common bias `p`.
    pub fn draw_bias<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        let i = self
            .cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(self.components.len() - 1);
        match self.components[i] {
            Component::Point(p) => p,
            Component::Uniform { start, width } => start + width * rng.random::<f64>(),
        }
    }

    /// One voting profile: `true` means a yes vote.
    pub fn sample_profile<R: Rng + ?Sized>(&self, voters: usize, rng: &mut R) -> Vec<bool> {
        let p = self.draw_bias(rng);
        (0..voters).map(|_| rng.random::<f64>() < p).collect()
    }
}

/// Convenience wrapper around [`Sampler::sample_profile`].
pub fn sample_profile<R: Rng + ?Sized>(
    mu: &BeliefMeasure,
    voters: usize,
    rng: &mut R,
) -> Vec<bool> {
    Sampler::new(mu).sample_profile(voters, rng)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub quantity: Quantity,
    /// 0-based voter; `None` for the system-level `E`.
    pub voter: Option<usize>,
    pub estimate: f64,
    pub std_error: f64,
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
}

impl EstimateReport {
    fn new(quantity: Quantity, voter: Option<usize>, hits: u64, samples: u64, seed: u64) -> Self {
        let p = hits as f64 / samples as f64;
        EstimateReport {
            quantity,
            voter,
            estimate: p,
            std_error: (p * (1.0 - p) / samples as f64).sqrt(),
            hits,
            samples,
            seed,
        }
    }
}

/// Raw event counts over a run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tally {
    pub samples: u64,
    pub winning: u64,
    pub losing: u64,
    pub d_plus: Vec<u64>,
    pub d_minus: Vec<u64>,
    pub s_plus: Vec<u64>,
    pub s_minus: Vec<u64>,
}

impl Tally {
    fn zero(voters: usize) -> Self {
        Tally {
            samples: 0,
            winning: 0,
            losing: 0,
            d_plus: vec![0; voters],
            d_minus: vec![0; voters],
            s_plus: vec![0; voters],
            s_minus: vec![0; voters],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.samples += other.samples;
        self.winning += other.winning;
        self.losing += other.losing;
        for (a, b) in [
            (&mut self.d_plus, other.d_plus),
            (&mut self.d_minus, other.d_minus),
            (&mut self.s_plus, other.s_plus),
            (&mut self.s_minus, other.s_minus),
        ] {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        }
        self
    }

    /// Hits for `quantity`; `voter` is ignored for `E`.
    pub fn hits(&self, quantity: Quantity, voter: usize) -> u64 {
        match quantity {
            Quantity::DPlus => self.d_plus[voter],
            Quantity::DMinus => self.d_minus[voter],
            Quantity::D => self.d_plus[voter] + self.d_minus[voter],
            Quantity::SPlus => self.s_plus[voter],
            Quantity::SMinus => self.s_minus[voter],
            Quantity::S => self.s_plus[voter] + self.s_minus[voter],
            Quantity::E => self.winning,
        }
    }
}

fn integer_weights(sys: &WeightedVotingSystem) -> Result<(Vec<u128>, u128)> {
    let scaled = sys.scaled();
    let overflow = || Error::Resource("scaled weights exceed 128-bit sampling arithmetic".into());
    let weights: Vec<u128> = scaled
        .weights
        .iter()
        .map(|w| w.to_u128().ok_or_else(overflow))
        .collect::<Result<_>>()?;
    weights
        .iter()
        .try_fold(0u128, |acc, &w| acc.checked_add(w))
        .ok_or_else(overflow)?;
    let quota = scaled.quota.to_u128().ok_or_else(overflow)?;
    Ok((weights, quota))
}

/// Counts every event indicator over `samples` sampled profiles.
pub fn tally(
    sys: &WeightedVotingSystem,
    mu: &BeliefMeasure,
    samples: u64,
    seed: u64,
) -> Result<Tally> {
    if samples == 0 {
        return Err(Error::domain("samples", 0, "samples >= 1"));
    }
    let (weights, quota) = integer_weights(sys)?;
    let n = weights.len();
    let sampler = Sampler::new(mu);
    let base = ChaCha8Rng::seed_from_u64(seed);

    let chunks = samples.div_ceil(CHUNK);
    let total = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut t = Tally::zero(n);
            let mut votes = vec![false; n];
            for i in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let mut rng = base.clone();
                rng.set_stream(i);
                rng.set_word_pos(0);
                let p = sampler.draw_bias(&mut rng);
                let mut weight = 0u128;
                for (vote, &w) in votes.iter_mut().zip(&weights) {
                    *vote = rng.random::<f64>() < p;
                    if *vote {
                        weight += w;
                    }
                }
                let wins = weight >= quota;
                t.samples += 1;
                if wins {
                    t.winning += 1;
                } else {
                    t.losing += 1;
                }
                for (v, (&yes, &w)) in votes.iter().zip(&weights).enumerate() {
                    match (yes, wins) {
                        (true, true) => {
                            t.s_plus[v] += 1;
                            if weight - w < quota {
                                t.d_minus[v] += 1;
                            }
                        }
                        (false, false) => {
                            t.s_minus[v] += 1;
                            if weight + w >= quota {
                                t.d_plus[v] += 1;
                            }
                        }
                        _ => {}
                    }
                }
            }
            t
        })
        .reduce(|| Tally::zero(n), Tally::merge);
    Ok(total)
}

/// Point estimates with binomial standard errors. Per-voter quantities get
/// one report per voter in `voters` (all voters when `None`).
pub fn estimate(
    sys: &WeightedVotingSystem,
    mu: &BeliefMeasure,
    quantities: &[Quantity],
    voters: Option<&[usize]>,
    samples: u64,
    seed: u64,
) -> Result<Vec<EstimateReport>> {
    let n = sys.voter_count();
    let all: Vec<usize> = (0..n).collect();
    let voters = voters.unwrap_or(&all);
    if let Some(&v) = voters.iter().find(|&&v| v >= n) {
        return Err(Error::VoterOutOfRange {
            voter: v,
            voters: n,
        });
    }
    let t = tally(sys, mu, samples, seed)?;
    let mut out = Vec::new();
    for &q in quantities {
        if q.is_per_voter() {
            for &v in voters {
                out.push(EstimateReport::new(q, Some(v), t.hits(q, v), samples, seed));
            }
        } else {
            out.push(EstimateReport::new(q, None, t.hits(q, 0), samples, seed));
        }
    }
    Ok(out)
}
