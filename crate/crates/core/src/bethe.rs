//! The Bethe free entropy and its cross-checks.
//!
//! Everything here is Monte Carlo over a converged η-space population.
//! Probabilities enter only through `ln μ = -softplus(-η)`, so products of
//! μ's are sums of log-sigmoids and the two-product numerator is one
//! log-sum-exp; nothing underflows no matter how large the Poisson draws
//! get. Every estimate carries its standard error so downstream checks can
//! state their tolerances in multiples of it.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::Serialize;

use crate::count;
use crate::de::{DeError, Population, Space};
use crate::formula::{sample_coupled, Formula};
use crate::math::{ln_sigmoid, log_sum_exp};
use crate::rng::{self, tag};

/// A Monte-Carlo estimate in nats per variable.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct BetheEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub d: f64,
    /// `None` tags the hard (β = ∞) functional.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

/// One row of the density curve.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct CurvePoint {
    pub d: f64,
    pub bethe: f64,
    pub bound: f64,
    pub std_error: f64,
}

const CHUNK: u64 = 1 << 14;

/// Chunked parallel Monte Carlo with a fixed-order reduction: chunk `c`
/// draws from stream `(seed, mc_tag, c)` and partial sums are combined in
/// chunk order, so the result is independent of thread count.
fn monte_carlo<F>(m: u64, seed: u64, mc_tag: u64, sample: F) -> (f64, f64)
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> f64 + Sync,
{
    let chunks = m.div_ceil(CHUNK);
    let partials: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = rng::stream(seed, &[mc_tag, c]);
            let lo = c * CHUNK;
            let hi = ((c + 1) * CHUNK).min(m);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in lo..hi {
                let v = sample(&mut rng);
                sum += v;
                sum_sq += v * v;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = partials.iter().fold((0.0, 0.0), |(a, b), &(s, ss)| (a + s, b + ss));
    let mean = sum / m as f64;
    let var = ((sum_sq - m as f64 * mean * mean) / (m as f64 - 1.0).max(1.0)).max(0.0);
    (mean, (var / m as f64).sqrt())
}

#[inline]
fn poisson_count<R: Rng>(rng: &mut R, mean: f64) -> usize {
    if mean <= 0.0 {
        0
    } else {
        Poisson::new(mean).expect("positive mean").sample(rng) as usize
    }
}

/// The hard Bethe free entropy
/// `E[ln(Π_{i≤k⁻} μ_i + Π_{i≤k⁺} μ'_i)] - (d/2)·E[ln(1 - μ₁μ₂)]` with
/// `k^± ~ Poisson(d/2)` i.i.d. and all μ's drawn from the population.
pub fn bethe_free_entropy(p: &Population, d: f64, m: u64, seed: u64) -> Result<BetheEstimate, DeError> {
    if !(0.0..2.0).contains(&d) {
        return Err(DeError::OutOfRegime(d));
    }
    assert_eq!(p.space(), Space::Eta, "expects the eta-space population");
    let etas = p.samples();
    let n = etas.len();
    let (value, std_error) = monte_carlo(m, seed, tag::BETHE_MC, |rng| {
        let ln_mu = |rng: &mut rand_chacha::ChaCha8Rng| ln_sigmoid(etas[rng.gen_range(0..n)]);
        let k_minus = poisson_count(rng, d / 2.0);
        let k_plus = poisson_count(rng, d / 2.0);
        let log_a: f64 = (0..k_minus).map(|_| ln_mu(rng)).sum();
        let log_b: f64 = (0..k_plus).map(|_| ln_mu(rng)).sum();
        let term1 = log_sum_exp(log_a, log_b);
        // ln(1 - μ₁μ₂) = ln(-expm1(ln μ₁ + ln μ₂))
        let term2 = (-(ln_mu(rng) + ln_mu(rng)).exp_m1()).ln();
        term1 - d / 2.0 * term2
    });
    Ok(BetheEstimate { value, std_error, samples: m, d, beta: None })
}

/// The annealed first moment bound `(1-d)·ln 2 + (d/2)·ln 3`.
pub fn first_moment_bound(d: f64) -> f64 {
    assert!(d >= 0.0);
    (1.0 - d) * std::f64::consts::LN_2 + d / 2.0 * 3f64.ln()
}

/// Diagnostic variant of [`bethe_free_entropy`] with both logarithms
/// truncated at `ln ε`. Log-domain evaluation makes the truncation
/// unnecessary for the plain estimate; this exists to quantify what the
/// truncation would change. Converges to the plain value as `ε → 0`.
pub fn bethe_free_entropy_truncated(
    p: &Population,
    d: f64,
    eps: f64,
    m: u64,
    seed: u64,
) -> Result<BetheEstimate, DeError> {
    if !(0.0..2.0).contains(&d) {
        return Err(DeError::OutOfRegime(d));
    }
    assert!(eps > 0.0 && eps < 1.0, "truncation level must be in (0,1)");
    assert_eq!(p.space(), Space::Eta, "expects the eta-space population");
    let etas = p.samples();
    let n = etas.len();
    let ln_eps = eps.ln();
    let (value, std_error) = monte_carlo(m, seed, tag::BETHE_MC, |rng| {
        let ln_mu = |rng: &mut rand_chacha::ChaCha8Rng| ln_sigmoid(etas[rng.gen_range(0..n)]);
        let k_minus = poisson_count(rng, d / 2.0);
        let k_plus = poisson_count(rng, d / 2.0);
        let log_a: f64 = (0..k_minus).map(|_| ln_mu(rng)).sum();
        let log_b: f64 = (0..k_plus).map(|_| ln_mu(rng)).sum();
        let term1 = log_sum_exp(log_a, log_b).max(ln_eps);
        let term2 = (-(ln_mu(rng) + ln_mu(rng)).exp_m1()).ln().max(ln_eps);
        term1 - d / 2.0 * term2
    });
    Ok(BetheEstimate { value, std_error, samples: m, d, beta: None })
}

/// The finite-β Bethe functional: clause factors pay `(1 - e^{-β})` times
/// the symmetrized μ instead of forbidding violation outright. Each factor
/// is computed as `(1-m) + m·e^{-β}`, which stays positive for all finite
/// β. At β = 0 every sample evaluates to `ln 2` exactly; as β grows the
/// estimate decreases toward the hard value.
pub fn soft_bethe(p: &Population, d: f64, beta: f64, m: u64, seed: u64) -> BetheEstimate {
    assert!(beta >= 0.0, "beta must be nonnegative");
    assert_eq!(p.space(), Space::Eta, "expects the eta-space population");
    let etas = p.samples();
    let n = etas.len();
    let eb = (-beta).exp();
    let (value, std_error) = monte_carlo(m, seed, tag::SOFT_MC, |rng| {
        // symmetrized draw: μ or 1-μ with equal probability
        let sym = |rng: &mut rand_chacha::ChaCha8Rng| -> f64 {
            let s2 = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            ln_sigmoid(s2 * etas[rng.gen_range(0..n)])
        };
        let k = poisson_count(rng, d);
        let mut ln_f_plus = 0.0;
        let mut ln_f_minus = 0.0;
        for _ in 0..k {
            let s_positive = rng.gen::<bool>();
            let ln_m = sym(rng);
            // factor for the violating side: 1 - (1-e^{-β})·m
            let ln_soft = ((-ln_m.exp_m1()) + eb * ln_m.exp()).ln();
            if s_positive {
                ln_f_minus += ln_soft;
            } else {
                ln_f_plus += ln_soft;
            }
        }
        let term1 = log_sum_exp(ln_f_plus, ln_f_minus);
        let ln_mm = sym(rng) + sym(rng);
        let term2 = ((-ln_mm.exp_m1()) + eb * ln_mm.exp()).ln();
        term1 - d / 2.0 * term2
    });
    BetheEstimate { value, std_error, samples: m, d, beta: Some(beta) }
}

/// Options threaded through [`curve`] into each fixed-point run.
#[derive(Clone, Copy, Debug)]
pub struct CurveOptions {
    pub population: usize,
    pub iterations: u32,
    pub mc_samples: u64,
}

impl Default for CurveOptions {
    fn default() -> Self {
        CurveOptions {
            population: crate::de::DEFAULT_POPULATION,
            iterations: crate::de::DEFAULT_ITERATIONS,
            mc_samples: 1_000_000,
        }
    }
}

/// For each grid density: run the fixed point, evaluate the Bethe value
/// and the first moment bound.
pub fn curve(d_grid: &[f64], opts: CurveOptions, seed: u64) -> Result<Vec<CurvePoint>, DeError> {
    d_grid
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let sub_seed = rng::derive(seed, &[tag::BETHE_MC, i as u64]);
            let run = crate::de::de_run(d, opts.iterations, opts.population, sub_seed)?;
            let est = bethe_free_entropy(&run.eta, d, opts.mc_samples, sub_seed)?;
            Ok(CurvePoint { d, bethe: est.value, bound: first_moment_bound(d), std_error: est.std_error })
        })
        .collect()
}

/// The empirical coupled-ensemble differences
/// `Δ₁ = E[ln(Z(extended)∨1) - ln(Z(base)∨1)]` and
/// `Δ₂ = E[ln(Z(grown)∨1) - ln(Z(base)∨1)]`, whose difference approximates
/// the Bethe value at `d`. Instances whose components exceed the cap are
/// skipped and reported, never silently dropped.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct AssDifference {
    pub delta1: f64,
    pub delta1_se: f64,
    pub delta2: f64,
    pub delta2_se: f64,
    pub difference: f64,
    pub difference_se: f64,
    pub trials_used: u64,
    pub skipped: u64,
}

impl AssDifference {
    pub fn skip_rate(&self) -> f64 {
        self.skipped as f64 / (self.trials_used + self.skipped) as f64
    }
}

pub fn ass_difference(n: usize, d: f64, trials: u64, cap: usize, seed: u64) -> AssDifference {
    let per_trial: Vec<Option<(f64, f64)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let triple = sample_coupled(n, d, rng::derive(seed, &[tag::ASS, t])).ok()?;
            let log_z = |f: &Formula| -> Option<f64> {
                count::count_exact(f, cap).ok().map(|r| r.log_z)
            };
            let base = log_z(&triple.base)?;
            let grown = log_z(&triple.grown)?;
            let extended = log_z(&triple.extended)?;
            Some((extended - base, grown - base))
        })
        .collect();
    let used: Vec<(f64, f64)> = per_trial.iter().flatten().copied().collect();
    let skipped = trials - used.len() as u64;
    let stats = |xs: &[f64]| -> (f64, f64) {
        let m = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / m;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0).max(1.0);
        (mean, (var / m).sqrt())
    };
    let (delta1, delta1_se) = stats(&used.iter().map(|&(a, _)| a).collect::<Vec<_>>());
    let (delta2, delta2_se) = stats(&used.iter().map(|&(_, b)| b).collect::<Vec<_>>());
    let (difference, difference_se) = stats(&used.iter().map(|&(a, b)| a - b).collect::<Vec<_>>());
    AssDifference {
        delta1,
        delta1_se,
        delta2,
        delta2_se,
        difference,
        difference_se,
        trials_used: used.len() as u64,
        skipped,
    }
}

/// Exact `n⁻¹·ln Z_β` averaged over random instances; the desk-scale left
/// side of the interpolation bound. Oversized instances are skipped and
/// counted.
pub fn mean_soft_log_partition(
    n: usize,
    d: f64,
    beta: f64,
    instances: u64,
    cap: usize,
    seed: u64,
) -> (f64, f64, u64) {
    let values: Vec<Option<f64>> = (0..instances)
        .into_par_iter()
        .map(|t| {
            let f = crate::formula::sample_formula(n, d, rng::derive(seed, &[tag::SOFT_MC, t])).ok()?;
            count::soft_partition(&f, beta, cap).ok().map(|lz| lz / n as f64)
        })
        .collect();
    let used: Vec<f64> = values.iter().flatten().copied().collect();
    let skipped = instances - used.len() as u64;
    let m = used.len() as f64;
    let mean = used.iter().sum::<f64>() / m;
    let var = used.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0).max(1.0);
    (mean, (var / m).sqrt(), skipped)
}

/// `Δ₂`'s sanity partner: adding clauses can only shrink the count.
pub fn count_is_monotone_under_clause_addition(triple: &crate::formula::CoupledTriple, cap: usize) -> bool {
    let base = count::count_exact(&triple.base, cap);
    let grown = count::count_exact(&triple.grown, cap);
    match (base, grown) {
        (Ok(b), Ok(g)) => g.z <= b.z,
        _ => true,
    }
}
