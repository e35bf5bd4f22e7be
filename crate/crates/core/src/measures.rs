//! Common-belief voting measures.
//!
//! A [`BeliefMeasure`] is a finite mixture of point masses and uniform
//! segments on `[0, 1]`. It induces the exchangeable voting measure
//! `P(A) = ∫ p^|A| (1-p)^(N-|A|) dμ(p)`, whose per-size values form the
//! [`Kernel`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub location: Rational,
    pub mass: Rational,
}

/// Uniform density on `[start, end]` carrying total mass `mass`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub start: Rational,
    pub end: Rational,
    pub mass: Rational,
}

impl Segment {
    fn density(&self) -> Rational {
        &self.mass / (&self.end - &self.start)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefMeasure {
    atoms: Vec<Atom>,
    segments: Vec<Segment>,
}

impl BeliefMeasure {
    /// Builds a mixture measure after structural validation: non-negative
    /// masses summing to exactly one, locations inside `[0, 1]`, pairwise
    /// distinct atoms and segments with disjoint interiors.
    ///
    /// Zero-mass components are dropped. Reflection symmetry is *not*
    /// required here; see [`BeliefMeasure::is_reflection_symmetric`].
    pub fn new(atoms: Vec<Atom>, segments: Vec<Segment>) -> Result<Self> {
        let zero = Rational::zero();
        let one = Rational::one();
        let invalid = |msg: String| Err(Error::InvalidMeasure(msg));

        for atom in &atoms {
            if atom.mass < zero {
                return invalid(format!(
                    "atom at {} has negative mass {}",
                    atom.location, atom.mass
                ));
            }
            if atom.location < zero || atom.location > one {
                return invalid(format!("atom location {} outside [0, 1]", atom.location));
            }
        }
        for seg in &segments {
            if seg.mass < zero {
                return invalid(format!(
                    "segment [{}, {}] has negative mass {}",
                    seg.start, seg.end, seg.mass
                ));
            }
            if seg.start < zero || seg.end > one || seg.start >= seg.end {
                return invalid(format!(
                    "segment [{}, {}] is not a proper subinterval of [0, 1]",
                    seg.start, seg.end
                ));
            }
        }

        let mut atoms = atoms;
        atoms.sort_by(|a, b| a.location.cmp(&b.location));
        if let Some(w) = atoms.windows(2).find(|w| w[0].location == w[1].location) {
            return invalid(format!("duplicate atom location {}", w[0].location));
        }
        let mut segments = segments;
        segments.sort_by(|a, b| a.start.cmp(&b.start));
        if let Some(w) = segments.windows(2).find(|w| w[0].end > w[1].start) {
            return invalid(format!(
                "segments [{}, {}] and [{}, {}] overlap",
                w[0].start, w[0].end, w[1].start, w[1].end
            ));
        }

        let total: Rational = atoms
            .iter()
            .map(|a| &a.mass)
            .chain(segments.iter().map(|s| &s.mass))
            .sum();
        if total != one {
            return invalid(format!("total mass is {total}, expected 1"));
        }

        atoms.retain(|a| !a.mass.is_zero());
        segments.retain(|s| !s.mass.is_zero());
        Ok(BeliefMeasure { atoms, segments })
    }

    /// Point mass at `p`; the measure of independent voting with bias `p`.
    pub fn point(p: Rational) -> Result<Self> {
        Self::new(
            vec![Atom {
                location: p,
                mass: Rational::one(),
            }],
            Vec::new(),
        )
    }

    /// μ = δ_{1/2}: every coalition equally likely.
    pub fn penrose_banzhaf() -> Self {
        Self::point(exact::rational(1, 2)).expect("valid measure")
    }

    /// μ = uniform on `[0, 1]`: every coalition size equally likely.
    pub fn shapley_shubik() -> Self {
        Self::new(
            Vec::new(),
            vec![Segment {
                start: Rational::zero(),
                end: Rational::one(),
                mass: Rational::one(),
            }],
        )
        .expect("valid measure")
    }

    /// μ = ½δ₀ + ½δ₁: all voters vote alike.
    pub fn unanimity() -> Self {
        let half = exact::rational(1, 2);
        Self::new(
            vec![
                Atom {
                    location: Rational::zero(),
                    mass: half.clone(),
                },
                Atom {
                    location: Rational::one(),
                    mass: half,
                },
            ],
            Vec::new(),
        )
        .expect("valid measure")
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_penrose_banzhaf(&self) -> bool {
        *self == Self::penrose_banzhaf()
    }

    pub fn is_shapley_shubik(&self) -> bool {
        *self == Self::shapley_shubik()
    }

    pub fn is_unanimity(&self) -> bool {
        *self == Self::unanimity()
    }

    /// Mass of the single point `p`.
    pub fn mass_at(&self, p: &Rational) -> Rational {
        self.atoms
            .iter()
            .find(|a| &a.location == p)
            .map(|a| a.mass.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Exact test of `μ([½+a, ½+b]) = μ([½-b, ½-a])` for all `a < b`.
    ///
    /// Atoms must pair up under `p ↦ 1-p` with equal masses, and the
    /// piecewise-constant density of the segment part must satisfy
    /// `f(p) = f(1-p)` almost everywhere. Comparing densities rather than the
    /// segment list means a measure split into differently placed pieces is
    /// still recognised.
    pub fn is_reflection_symmetric(&self) -> bool {
        let one = Rational::one();
        let n = self.atoms.len();
        let atoms_match = (0..n).all(|i| {
            let (lo, hi) = (&self.atoms[i], &self.atoms[n - 1 - i]);
            &lo.location + &hi.location == one && lo.mass == hi.mass
        });
        if !atoms_match {
            return false;
        }

        let mut breaks: Vec<Rational> = vec![Rational::zero(), one.clone()];
        for seg in &self.segments {
            for x in [&seg.start, &seg.end] {
                breaks.push(x.clone());
                breaks.push(&one - x);
            }
        }
        breaks.sort();
        breaks.dedup();
        breaks.windows(2).all(|w| {
            let mid = (&w[0] + &w[1]) / exact::integer(2);
            self.density_at(&mid) == self.density_at(&(&one - &mid))
        })
    }

    /// Density of the continuous part at an interior point of a segment
    /// (or zero outside all segments).
    fn density_at(&self, x: &Rational) -> Rational {
        self.segments
            .iter()
            .find(|s| &s.start < x && x < &s.end)
            .map(Segment::density)
            .unwrap_or_else(Rational::zero)
    }

    /// Size kernel `w_N(k) = ∫ p^k (1-p)^(N-k) dμ(p)` for `k = 0..=N`.
    pub fn kernel(&self, voters: usize) -> Result<Kernel> {
        if voters == 0 {
            return Err(Error::domain("N", 0, "N >= 1"));
        }
        let mut parts: Vec<Part> = Vec::new();
        for atom in &self.atoms {
            parts.push(atom_part(atom, voters));
        }
        if !self.segments.is_empty() {
            let ctx = SegmentContext::new(voters);
            for seg in &self.segments {
                parts.push(ctx.segment_part(seg));
            }
        }
        Ok(Kernel::combine(voters, parts))
    }

    /// `μ([r,1])`, `∫_[r,1] p dμ` and `∫_[0,r) (1-p) dμ`, plus the atom
    /// mass `μ({r})` which the limit theorems require to vanish.
    pub fn tail_integrals(&self, r: &Rational) -> Result<TailIntegrals> {
        let zero = Rational::zero();
        let one = Rational::one();
        if *r <= zero || *r >= one {
            return Err(Error::domain("r", r, "(0, 1)"));
        }
        let two = exact::integer(2);
        let mut out = TailIntegrals {
            mass_tail: Rational::zero(),
            first_moment_tail: Rational::zero(),
            complement_moment_tail: Rational::zero(),
            atom_at_threshold: self.mass_at(r),
        };
        for atom in &self.atoms {
            if atom.location >= *r {
                out.mass_tail += &atom.mass;
                out.first_moment_tail += &atom.mass * &atom.location;
            } else {
                out.complement_moment_tail += &atom.mass * (&one - &atom.location);
            }
        }
        for seg in &self.segments {
            let density = seg.density();
            let lo = (&seg.start).max(r);
            if lo < &seg.end {
                let hi = &seg.end;
                out.mass_tail += &density * (hi - lo);
                out.first_moment_tail += &density * (hi * hi - lo * lo) / &two;
            }
            let hi = (&seg.end).min(r);
            if &seg.start < hi {
                let lo = &seg.start;
                let antiderivative = |x: &Rational| x - x * x / &two;
                out.complement_moment_tail += &density * (antiderivative(hi) - antiderivative(lo));
            }
        }
        Ok(out)
    }

    /// Short identifier used in reports.
    pub fn label(&self) -> String {
        if self.is_penrose_banzhaf() {
            return "penrose-banzhaf".into();
        }
        if self.is_shapley_shubik() {
            return "shapley-shubik".into();
        }
        if self.is_unanimity() {
            return "unanimity".into();
        }
        self.to_string()
    }
}

impl fmt::Display for BeliefMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "common-belief(atoms=[")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", a.location, a.mass)?;
        }
        write!(f, "];segments=[")?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{},{}]:{}", s.start, s.end, s.mass)?;
        }
        write!(f, "])")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailIntegrals {
    /// `μ([r, 1])`, closed at `r`.
    pub mass_tail: Rational,
    /// `∫_[r,1] p dμ(p)`.
    pub first_moment_tail: Rational,
    /// `∫_[0,r) (1-p) dμ(p)`.
    pub complement_moment_tail: Rational,
    /// `μ({r})`.
    pub atom_at_threshold: Rational,
}

/// Exact per-size coalition probabilities for a fixed number of voters.
///
/// Stored as integer numerators over one common denominator so that the
/// engine's weighted sums are pure big-integer dot products. The fraction is
/// not reduced; values are normalized when read out.
#[derive(Debug, Clone)]
pub struct Kernel {
    voters: usize,
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

/// One mixture component as numerators over a denominator.
struct Part {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl Kernel {
    fn combine(voters: usize, parts: Vec<Part>) -> Self {
        let denominator = parts
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator));
        let mut numerators = vec![BigInt::zero(); voters + 1];
        for part in parts {
            let factor = &denominator / &part.denominator;
            for (acc, n) in numerators.iter_mut().zip(part.numerators) {
                *acc += n * &factor;
            }
        }
        Kernel {
            voters,
            numerators,
            denominator,
        }
    }

    pub fn voters(&self) -> usize {
        self.voters
    }

    /// `w_N(k)`; zero for `k > N`.
    pub fn value(&self, k: usize) -> Rational {
        match self.numerators.get(k) {
            Some(n) => Rational::new(n.clone(), self.denominator.clone()),
            None => Rational::zero(),
        }
    }

    pub fn values(&self) -> Vec<Rational> {
        (0..=self.voters).map(|k| self.value(k)).collect()
    }

    /// Probability that the coalition has exactly `k` members:
    /// `C(N, k) · w_N(k)`.
    pub fn size_probability(&self, k: usize) -> Rational {
        Rational::from_integer(exact::binomial(self.voters, k).into()) * self.value(k)
    }

    /// `Σ_k counts[k] · w_N(k + shift)`, evaluated exactly.
    pub fn weighted_sum(&self, counts: &[BigUint], shift: usize) -> Rational {
        let mut acc = BigInt::zero();
        for (k, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(n) = self.numerators.get(k + shift) {
                acc += BigInt::from(c.clone()) * n;
            }
        }
        Rational::new(acc, self.denominator.clone())
    }
}

fn split(r: &Rational) -> (BigInt, BigInt) {
    (r.numer().clone(), r.denom().clone())
}

fn atom_part(atom: &Atom, voters: usize) -> Part {
    let (s, t) = split(&atom.location);
    let (u, v) = split(&atom.mass);
    let yes = exact::powers(&s, voters);
    let no = exact::powers(&(&t - &s), voters);
    let numerators = (0..=voters)
        .map(|k| &u * &yes[k] * &no[voters - k])
        .collect();
    Part {
        numerators,
        denominator: v * t.pow(voters as u32),
    }
}

/// Factorials and binomials shared by every segment of one kernel.
struct SegmentContext {
    voters: usize,
    factorials: Vec<BigUint>,
    binomials: Vec<BigUint>,
}

impl SegmentContext {
    fn new(voters: usize) -> Self {
        SegmentContext {
            voters,
            factorials: exact::factorials(voters + 1),
            binomials: exact::binomial_row(voters + 1),
        }
    }

    /// Upper binomial tails `Σ_{j>k} C(N+1, j) s^j (t-s)^(N+1-j)` for
    /// `k = 0..=N`, i.e. `t^(N+1) · P(Bin(N+1, s/t) > k)`.
    fn upper_tails(&self, x: &Rational) -> Vec<BigInt> {
        let m = self.voters + 1;
        let (s, t) = split(x);
        let yes = exact::powers(&s, m);
        let no = exact::powers(&(&t - &s), m);
        let mut tails = vec![BigInt::zero(); self.voters + 1];
        let mut acc = BigInt::zero();
        for k in (0..=self.voters).rev() {
            let j = k + 1;
            acc += BigInt::from(self.binomials[j].clone()) * &yes[j] * &no[m - j];
            tails[k] = acc.clone();
        }
        tails
    }

    /// Uses `∫_a^b p^k (1-p)^(N-k) dp = k!(N-k)!/(N+1)! · [T_b(k) - T_a(k)]`
    /// with `T_x(k) = P(Bin(N+1, x) ≥ k+1)`.
    fn segment_part(&self, seg: &Segment) -> Part {
        let n = self.voters;
        let m = (n + 1) as u32;
        let (u, v) = split(&seg.density());
        let ta = seg.start.denom().pow(m);
        let tb = seg.end.denom().pow(m);
        let tails_a = self.upper_tails(&seg.start);
        let tails_b = self.upper_tails(&seg.end);
        let numerators = (0..=n)
            .map(|k| {
                let beta = BigInt::from(&self.factorials[k] * &self.factorials[n - k]);
                let diff = &tails_b[k] * &ta - &tails_a[k] * &tb;
                debug_assert!(!diff.is_negative());
                &u * beta * diff
            })
            .collect();
        Part {
            numerators,
            denominator: v * BigInt::from(self.factorials[n + 1].clone()) * ta * tb,
        }
    }
}
