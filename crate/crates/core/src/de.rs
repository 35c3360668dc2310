//! Population dynamics for the density-evolution operators.
//!
//! A distribution over log-likelihood ratios is represented by `N` samples.
//! One step resamples: each new sample draws `k ~ Poisson(d)` members of
//! the previous generation (with replacement) and combines them through the
//! message kernel `±ln((1 ± tanh(η/2))/2)`, evaluated as `∓softplus(∓η)`.
//! The plain operator uses two independent signs per term; the boundary
//! (`plus`) operator reuses one sign, which is the entire difference
//! between the two fixed-point equations.
//!
//! Sample `j` of generation `g` draws from the stream `(seed, g, j)`, so a
//! generation is a parallel map whose output is independent of thread
//! count and schedule.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::math::{sigmoid, softplus};
use crate::rng::{self, tag};

/// Which space the samples live in: log-likelihood ratios on `ℝ` or
/// probabilities on `(0,1)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Space {
    Eta,
    Mu,
}

/// A multiset of samples representing one distribution.
#[derive(Clone, PartialEq, Debug)]
pub struct Population {
    samples: Vec<f64>,
    space: Space,
    generation: u32,
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum DeError {
    #[error("OutOfRegime: d must be in [0, 2), got {0}")]
    OutOfRegime(f64),
}

/// Default population size; resampling noise at this size sits well below
/// the third decimal of the free-entropy estimates.
pub const DEFAULT_POPULATION: usize = 200_000;
/// Default iteration count for the fixed-point runs.
pub const DEFAULT_ITERATIONS: u32 = 24;

impl Population {
    /// Wrap an existing multiset of samples, e.g. a BP marginal multiset
    /// as a μ-space population.
    pub fn from_samples(samples: Vec<f64>, space: Space) -> Population {
        assert!(!samples.is_empty());
        if space == Space::Mu {
            assert!(samples.iter().all(|&m| (0.0..=1.0).contains(&m)));
        }
        Population { samples, space, generation: 0 }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn generation(&self) -> u32 {
        self.generation
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample mean and standard deviation.
    pub fn moments(&self) -> (f64, f64) {
        let n = self.samples.len() as f64;
        let mean = self.samples.iter().sum::<f64>() / n;
        let var = self.samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0).max(1.0);
        (mean, var.sqrt())
    }

    /// The sigmoid image in μ-space, clamped strictly inside `(0,1)`.
    ///
    /// Mapped so that `μ(-η) = 1 - μ(η)` holds bit-for-bit: the law is
    /// symmetric and carries atoms, and an atom pair must never straddle a
    /// CDF threshold inconsistently because its two halves were rounded
    /// through different code paths.
    pub fn to_mu(&self) -> Population {
        assert_eq!(self.space, Space::Eta, "already in mu space");
        let floor = (-700.0f64).exp();
        let ceil = 1.0 - f64::EPSILON / 2.0;
        let map = |e: f64| {
            let mu = if e >= 0.0 { sigmoid(e) } else { 1.0 - sigmoid(-e) };
            mu.clamp(floor, ceil)
        };
        let samples = self.samples.iter().map(|&e| map(e)).collect();
        Population { samples, space: Space::Mu, generation: self.generation }
    }
}

/// The atom at η = 0 (μ = 1/2): the canonical launch point.
pub fn de_init(n: usize) -> Population {
    assert!(n >= 1, "population must be nonempty");
    Population { samples: vec![0.0; n], space: Space::Eta, generation: 0 }
}

#[inline]
fn poisson_count<R: Rng>(rng: &mut R, mean: f64) -> usize {
    if mean <= 0.0 {
        0
    } else {
        Poisson::new(mean).expect("positive mean").sample(rng) as usize
    }
}

#[inline]
fn uniform_sign<R: Rng>(rng: &mut R) -> f64 {
    if rng.gen::<bool>() {
        1.0
    } else {
        -1.0
    }
}

/// One step of the plain operator:
/// `η' = Σ_{i≤k} s_i · ln((1 + s'_i tanh(η_i/2))/2)` with `k ~ Poisson(d)`
/// and independent uniform signs `s_i, s'_i`.
pub fn de_step(p: &Population, d: f64, seed: u64) -> Population {
    step_impl(p, d, seed, |rng, draw| {
        let s = uniform_sign(rng);
        let s2 = uniform_sign(rng);
        let eta = draw(rng);
        -s * softplus(-s2 * eta)
    })
}

/// One step of the boundary operator:
/// `η' = -Σ_{i≤k} s_i · ln((1 - s_i tanh(η_i/2))/2) = Σ_{i≤k} s_i · softplus(s_i η_i)`,
/// a single shared sign per term.
pub fn de_step_plus(p: &Population, d: f64, seed: u64) -> Population {
    step_impl(p, d, seed, |rng, draw| {
        let s = uniform_sign(rng);
        let eta = draw(rng);
        s * softplus(s * eta)
    })
}

fn step_impl<F>(p: &Population, d: f64, seed: u64, term: F) -> Population
where
    F: Fn(&mut rand_chacha::ChaCha8Rng, &dyn Fn(&mut rand_chacha::ChaCha8Rng) -> f64) -> f64 + Sync,
{
    assert_eq!(p.space, Space::Eta, "population dynamics runs in eta space");
    let n = p.samples.len();
    let generation = p.generation + 1;
    let prev = &p.samples;
    let samples: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut rng = rng::stream(seed, &[tag::DE_STEP, generation as u64, j as u64]);
            let k = poisson_count(&mut rng, d);
            let draw = |rng: &mut rand_chacha::ChaCha8Rng| prev[rng.gen_range(0..n)];
            (0..k).map(|_| term(&mut rng, &draw)).sum()
        })
        .collect();
    Population { samples, space: Space::Eta, generation }
}

/// Apply [`de_step`] to two populations with identical draws (`k`, signs,
/// indices into the sorted inputs), realizing the coupling behind the
/// contraction bound. Returns the two coupled images.
pub fn de_step_coupled(p: &Population, q: &Population, d: f64, seed: u64) -> (Population, Population) {
    assert_eq!(p.space, Space::Eta);
    assert_eq!(q.space, Space::Eta);
    assert_eq!(p.len(), q.len(), "coupling needs equal sizes");
    let n = p.len();
    let mut ps = p.samples.clone();
    let mut qs = q.samples.clone();
    ps.sort_by(f64::total_cmp);
    qs.sort_by(f64::total_cmp);
    let generation = p.generation.max(q.generation) + 1;
    let pairs: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut rng = rng::stream(seed, &[tag::DE_STEP, generation as u64, j as u64]);
            let k = poisson_count(&mut rng, d);
            let mut a = 0.0;
            let mut b = 0.0;
            for _ in 0..k {
                let s = uniform_sign(&mut rng);
                let s2 = uniform_sign(&mut rng);
                let idx = rng.gen_range(0..n);
                a += -s * softplus(-s2 * ps[idx]);
                b += -s * softplus(-s2 * qs[idx]);
            }
            (a, b)
        })
        .collect();
    let (sa, sb) = pairs.into_iter().unzip();
    (
        Population { samples: sa, space: Space::Eta, generation },
        Population { samples: sb, space: Space::Eta, generation },
    )
}

/// A completed fixed-point run.
#[derive(Clone, Debug)]
pub struct DeRun {
    /// final η-space population
    pub eta: Population,
    /// its μ-space image
    pub mu: Population,
    /// `W₂(generation t-1, generation t)` for `t = 1..=iterations`
    pub w2_trace: Vec<f64>,
}

/// Iterate [`de_step`] from the atom at zero and record the per-iteration
/// `W₂` between consecutive generations. Rejects `d` outside `[0, 2)`.
pub fn de_run(d: f64, iterations: u32, n: usize, seed: u64) -> Result<DeRun, DeError> {
    de_run_with(d, iterations, n, seed, de_step)
}

/// Same schedule as [`de_run`] but iterating the boundary operator.
pub fn de_run_plus(d: f64, iterations: u32, n: usize, seed: u64) -> Result<DeRun, DeError> {
    de_run_with(d, iterations, n, seed, de_step_plus)
}

fn de_run_with(
    d: f64,
    iterations: u32,
    n: usize,
    seed: u64,
    step: fn(&Population, f64, u64) -> Population,
) -> Result<DeRun, DeError> {
    if !(0.0..2.0).contains(&d) {
        return Err(DeError::OutOfRegime(d));
    }
    let mut p = de_init(n);
    let mut w2_trace = Vec::with_capacity(iterations as usize);
    for _ in 0..iterations {
        let next = step(&p, d, seed);
        w2_trace.push(wasserstein(&p, &next, 2).value);
        p = next;
    }
    let mu = p.to_mu();
    Ok(DeRun { eta: p, mu, w2_trace })
}

/// An empirical Wasserstein distance.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct WassersteinEstimate {
    pub q: u8,
    pub value: f64,
}

/// Exact `W_q` between two empirical measures: sort both and average
/// `|a_(i) - b_(i)|^q` over matched order statistics. Unequal sizes are
/// handled by deterministic quantile decimation of the larger sample.
pub fn wasserstein(a: &Population, b: &Population, q: u8) -> WassersteinEstimate {
    assert!(q == 1 || q == 2, "only W1 and W2 are supported");
    assert_eq!(a.space, b.space, "populations must share a space");
    let mut xs = a.samples.clone();
    let mut ys = b.samples.clone();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let n = xs.len().min(ys.len());
    let pick = |v: &[f64], i: usize| {
        // midpoint quantile of the sorted sample
        let j = ((i as f64 + 0.5) * v.len() as f64 / n as f64) as usize;
        v[j.min(v.len() - 1)]
    };
    let mean: f64 = (0..n)
        .map(|i| {
            let diff = (pick(&xs, i) - pick(&ys, i)).abs();
            if q == 1 {
                diff
            } else {
                diff * diff
            }
        })
        .sum::<f64>()
        / n as f64;
    let value = if q == 1 { mean } else { mean.sqrt() };
    WassersteinEstimate { q, value }
}

/// Empirical CDF of a sorted copy of a population.
#[derive(Clone, Debug)]
pub struct Cdf {
    sorted: Vec<f64>,
}

impl Cdf {
    pub fn new(p: &Population) -> Self {
        let mut sorted = p.samples.clone();
        sorted.sort_by(f64::total_cmp);
        Cdf { sorted }
    }

    /// `P(X <= x)`
    pub fn at(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }

    /// `P(X < x)`, the left limit.
    pub fn below(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v < x) as f64 / self.sorted.len() as f64
    }
}

/// Sample the empirical CDF of a μ-space population on a uniform grid of
/// `resolution` interior points of `(0,1)`. Monotone nondecreasing.
pub fn cdf_export(p: &Population, resolution: usize) -> Vec<(f64, f64)> {
    assert_eq!(p.space, Space::Mu, "cdf export expects a mu-space population");
    assert!(resolution >= 1);
    let cdf = Cdf::new(p);
    (1..=resolution)
        .map(|j| {
            let x = j as f64 / (resolution + 1) as f64;
            (x, cdf.at(x))
        })
        .collect()
}
