//! Exact counting oracle: satisfying-assignment counts, conditional counts,
//! exact marginals, and the soft partition function.
//!
//! All operations decompose the formula into connected components and
//! enumerate each component's assignments with a Gray-code sweep: one
//! variable flips per step and only the clauses touching it are re-checked.
//! The per-component result is a histogram of assignments by number of
//! violated clauses, from which the hard count (`hist[0]`), conditional
//! counts and `ln Z_β` all follow. Components larger than the caller's cap
//! abort with [`CountError::ComponentTooLarge`] so oversized instances are
//! skipped explicitly, never silently truncated.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::formula::{components, Assignment, Component, Formula};
use crate::math::log_sum_exp;

/// Exact count plus its natural log under the `log(z ∨ 1)` convention, so
/// an unsatisfiable formula reports `log_z = 0`, never `-inf`.
#[derive(Clone, PartialEq, Debug)]
pub struct CountResult {
    pub z: BigUint,
    pub log_z: f64,
}

/// Per-variable probabilities `P(σ_x = +1)` under a uniformly random
/// satisfying assignment.
#[derive(Clone, PartialEq, Debug)]
pub struct MarginalTable {
    pub p: Vec<f64>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("component {id} has {size} variables, exceeding the cap of {cap}")]
    ComponentTooLarge { id: usize, size: usize, cap: usize },
    #[error("formula is unsatisfiable")]
    Unsatisfiable,
    #[error("conditioned variable {0} is out of range")]
    BadCondition(usize),
}

/// Default per-component variable cap. `2^30` Gray-code steps touch a
/// couple of clauses each and finish in seconds; at `d < 2` components
/// this large are rare.
pub const DEFAULT_CAP: usize = 30;

/// Local view of one component: variables remapped to bit positions.
struct LocalComponent {
    num_vars: usize,
    /// (mask, forbidden-pattern): clause violated iff `m & mask == forbid`.
    clauses: Vec<(u64, u64)>,
    /// incident clause list per local variable
    var_clauses: Vec<Vec<usize>>,
}

impl LocalComponent {
    fn build(f: &Formula, comp: &Component) -> Self {
        let mut local_of = std::collections::HashMap::new();
        for (i, &v) in comp.vars.iter().enumerate() {
            local_of.insert(v, i);
        }
        let mut clauses = Vec::with_capacity(comp.clauses.len());
        let mut var_clauses = vec![Vec::new(); comp.vars.len()];
        for &ci in &comp.clauses {
            let c = f.clause(ci);
            let mut mask = 0u64;
            let mut forbid = 0u64;
            for lit in c.literals() {
                let bit = 1u64 << local_of[&lit.var];
                mask |= bit;
                if lit.sign < 0 {
                    forbid |= bit;
                }
            }
            let idx = clauses.len();
            clauses.push((mask, forbid));
            var_clauses[local_of[&c.first.var]].push(idx);
            var_clauses[local_of[&c.second.var]].push(idx);
        }
        LocalComponent { num_vars: comp.vars.len(), clauses, var_clauses }
    }

    #[inline]
    fn violations(&self, m: u64) -> usize {
        self.clauses.iter().filter(|&&(mask, forbid)| m & mask == forbid).count()
    }

    /// Histogram over violation counts, restricted to assignments matching
    /// `fixed` on the bits of `fixed_mask`. Bit set = variable `+1`.
    fn violation_histogram(&self, fixed_mask: u64, fixed: u64) -> Vec<u64> {
        let mut hist = vec![0u64; self.clauses.len() + 1];
        let free: Vec<usize> = {
            // Gray position k flips 2^(f-1-k) times; flip the low-degree
            // variables most often.
            let mut free: Vec<usize> = (0..self.num_vars)
                .filter(|&i| fixed_mask & (1 << i) == 0)
                .collect();
            free.sort_by_key(|&i| self.var_clauses[i].len());
            free
        };
        let mut m = fixed & fixed_mask;
        let mut viol = self.violations(m);
        hist[viol] += 1;
        let steps: u64 = if free.len() >= 64 { u64::MAX } else { (1u64 << free.len()) - 1 };
        for t in 1..=steps {
            let flip = free[t.trailing_zeros() as usize];
            let bit = 1u64 << flip;
            for &ci in &self.var_clauses[flip] {
                let (mask, forbid) = self.clauses[ci];
                let was = m & mask == forbid;
                let is = (m ^ bit) & mask == forbid;
                viol = viol + is as usize - was as usize;
            }
            m ^= bit;
            hist[viol] += 1;
        }
        hist
    }
}

fn check_cap(comps: &[Component], cap: usize) -> Result<(), CountError> {
    let cap = cap.min(63); // bitmask enumeration width
    for (id, c) in comps.iter().enumerate() {
        if c.vars.len() > cap {
            return Err(CountError::ComponentTooLarge { id, size: c.vars.len(), cap });
        }
    }
    Ok(())
}

/// Natural log of a positive big integer, accurate to a few ulps.
fn ln_biguint(z: &BigUint) -> f64 {
    debug_assert!(!z.is_zero());
    let bits = z.bits();
    if bits <= 53 {
        let v = z.iter_u64_digits().next().unwrap_or(0);
        (v as f64).ln()
    } else {
        let shift = bits - 53;
        let top: BigUint = z >> shift;
        let v = top.iter_u64_digits().next().unwrap_or(0);
        (v as f64).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

fn result_from_product(per_component: &[u64]) -> CountResult {
    let mut z = BigUint::one();
    for &c in per_component {
        z *= BigUint::from(c);
    }
    let log_z = if z.is_zero() { 0.0 } else { ln_biguint(&z) };
    CountResult { z, log_z }
}

/// Exact number of satisfying assignments, as the product of per-component
/// exhaustive counts.
pub fn count_exact(f: &Formula, cap: usize) -> Result<CountResult, CountError> {
    count_conditional(f, &Assignment::new(), cap)
}

/// Exact number of satisfying assignments agreeing with the partial
/// assignment `chi` on its domain. Empty `chi` recovers [`count_exact`].
pub fn count_conditional(f: &Formula, chi: &Assignment, cap: usize) -> Result<CountResult, CountError> {
    for (var, _) in chi.iter() {
        if var >= f.num_vars() {
            return Err(CountError::BadCondition(var));
        }
    }
    let comps = components(f);
    check_cap(&comps, cap)?;
    let per: Vec<u64> = comps
        .iter()
        .map(|comp| {
            let local = LocalComponent::build(f, comp);
            let (fixed_mask, fixed) = clamp_bits(comp, chi);
            local.violation_histogram(fixed_mask, fixed)[0]
        })
        .collect();
    Ok(result_from_product(&per))
}

fn clamp_bits(comp: &Component, chi: &Assignment) -> (u64, u64) {
    let mut mask = 0u64;
    let mut vals = 0u64;
    for (i, &v) in comp.vars.iter().enumerate() {
        if let Some(s) = chi.get(v) {
            mask |= 1 << i;
            if s > 0 {
                vals |= 1 << i;
            }
        }
    }
    (mask, vals)
}

/// Exact marginals `P(σ_x = +1)`, computed per component; fails with
/// [`CountError::Unsatisfiable`] when the formula has no satisfying
/// assignment.
pub fn marginals_exact(f: &Formula, cap: usize) -> Result<MarginalTable, CountError> {
    let comps = components(f);
    check_cap(&comps, cap)?;
    let mut p = vec![0.0; f.num_vars()];
    for comp in &comps {
        let local = LocalComponent::build(f, comp);
        let k = local.num_vars;
        let mut z_total = 0u64;
        let mut z_plus = vec![0u64; k];
        let steps: u64 = 1u64 << k;
        let mut m = 0u64;
        let mut viol = local.violations(0);
        for t in 0..steps {
            if t > 0 {
                let flip = t.trailing_zeros() as usize;
                let bit = 1u64 << flip;
                for &ci in &local.var_clauses[flip] {
                    let (mask, forbid) = local.clauses[ci];
                    let was = m & mask == forbid;
                    let is = (m ^ bit) & mask == forbid;
                    viol = viol + is as usize - was as usize;
                }
                m ^= bit;
            }
            if viol == 0 {
                z_total += 1;
                let mut rest = m;
                while rest != 0 {
                    let i = rest.trailing_zeros() as usize;
                    z_plus[i] += 1;
                    rest &= rest - 1;
                }
            }
        }
        if z_total == 0 {
            return Err(CountError::Unsatisfiable);
        }
        for (i, &v) in comp.vars.iter().enumerate() {
            p[v] = z_plus[i] as f64 / z_total as f64;
        }
    }
    Ok(MarginalTable { p })
}

/// `ln Z_β`: log of the assignment sum with an `exp(-β)` penalty per
/// violated clause, accumulated per component in the log domain.
pub fn soft_partition(f: &Formula, beta: f64, cap: usize) -> Result<f64, CountError> {
    assert!(beta >= 0.0, "beta must be nonnegative");
    let comps = components(f);
    check_cap(&comps, cap)?;
    let mut total = 0.0;
    for comp in &comps {
        let local = LocalComponent::build(f, comp);
        let hist = local.violation_histogram(0, 0);
        total += ln_z_beta_from_histogram(&hist, beta);
    }
    Ok(total)
}

/// `ln Σ_v hist[v]·e^{-βv}` from a violation histogram.
pub fn ln_z_beta_from_histogram(hist: &[u64], beta: f64) -> f64 {
    let mut acc = f64::NEG_INFINITY;
    for (v, &count) in hist.iter().enumerate() {
        if count > 0 {
            acc = log_sum_exp(acc, (count as f64).ln() - beta * v as f64);
        }
    }
    acc
}
