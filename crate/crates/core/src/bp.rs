//! Synchronous belief propagation on the clause/variable graph.
//!
//! Messages are probabilities of the value `+1`; the `-1` direction is the
//! complement. One round computes all clause→variable messages from the
//! previous round's variable→clause messages, then all variable→clause
//! messages from those fresh clause→variable values. Products over incident
//! edges are accumulated in the log domain; a normalizer that vanishes
//! exactly yields the conventional value `1/2`.

use rayon::prelude::*;

use crate::formula::{FactorGraph, Formula};

/// All directed messages of one round. `clause_to_var[edge]` and
/// `var_to_clause[edge]` store the probability of `+1` on edge
/// `2*clause + side`.
#[derive(Clone, PartialEq, Debug)]
pub struct MessageState {
    pub clause_to_var: Vec<f64>,
    pub var_to_clause: Vec<f64>,
    pub round: u32,
}

/// Per-variable estimates of `P(σ_x = +1)` after `round` rounds.
#[derive(Clone, PartialEq, Debug)]
pub struct MarginalEstimate {
    pub p: Vec<f64>,
    pub round: u32,
}

/// All messages start uniform at `1/2`.
pub fn init_messages(g: &FactorGraph) -> MessageState {
    MessageState {
        clause_to_var: vec![0.5; g.num_edges()],
        var_to_clause: vec![0.5; g.num_edges()],
        round: 0,
    }
}

// ln p with exact zeros kept separate from tiny positives; the floor stops
// subnormal underflow from turning into -inf before the 1/2 convention can
// see a true zero.
const LN_FLOOR: f64 = -700.0;

#[inline]
fn ln_floored(p: f64) -> f64 {
    p.ln().max(LN_FLOOR)
}

/// Log-domain product accumulator that tracks exact zero factors.
#[derive(Clone, Copy, Default)]
struct LogProduct {
    ln: f64,
    zeros: u32,
}

impl LogProduct {
    #[inline]
    fn push(&mut self, p: f64) {
        if p == 0.0 {
            self.zeros += 1;
        } else {
            self.ln += ln_floored(p);
        }
    }

    #[inline]
    fn without(mut self, p: f64) -> Self {
        if p == 0.0 {
            self.zeros -= 1;
        } else {
            self.ln -= ln_floored(p);
        }
        self
    }

    #[inline]
    fn is_zero(&self) -> bool {
        self.zeros > 0
    }
}

/// Normalize a (+1, -1) pair of log-products; both vanishing yields `1/2`.
#[inline]
fn normalize(plus: LogProduct, minus: LogProduct) -> f64 {
    match (plus.is_zero(), minus.is_zero()) {
        (true, true) => 0.5,
        (true, false) => 0.0,
        (false, true) => 1.0,
        (false, false) => 1.0 / (1.0 + (minus.ln - plus.ln).exp()),
    }
}

/// One synchronous round: round-`ℓ` clause messages from round-`ℓ-1`
/// variable messages, then round-`ℓ` variable messages from the new clause
/// messages.
pub fn bp_step(g: &FactorGraph, state: &MessageState) -> MessageState {
    let clause_to_var: Vec<f64> = (0..g.num_edges())
        .into_par_iter()
        .map(|edge| {
            let (ci, side) = (edge / 2, edge % 2);
            let x = g.endpoint(ci, side);
            let y = g.endpoint(ci, 1 - side);
            let q = state.var_to_clause[g.edge_id(ci, 1 - side)]; // ν_{y→a}(+1)
            let nu_y_s = if y.sign > 0 { q } else { 1.0 - q };
            // ν_{a→x}(+1) = (1 - 1{r = -1}·ν_{y→a}(-s)) / (1 + ν_{y→a}(s));
            // with ν(-s) ≡ 1 - ν(s) the r = -1 numerator is exactly ν(s).
            let numer = if x.sign > 0 { 1.0 } else { nu_y_s };
            numer / (1.0 + nu_y_s)
        })
        .collect();

    let products: Vec<(LogProduct, LogProduct)> = (0..g.num_vars())
        .into_par_iter()
        .map(|x| {
            let mut plus = LogProduct::default();
            let mut minus = LogProduct::default();
            for &(ci, side) in g.incident(x) {
                let p = clause_to_var[g.edge_id(ci, side)];
                plus.push(p);
                minus.push(1.0 - p);
            }
            (plus, minus)
        })
        .collect();

    let var_to_clause: Vec<f64> = (0..g.num_edges())
        .into_par_iter()
        .map(|edge| {
            let (ci, side) = (edge / 2, edge % 2);
            let x = g.endpoint(ci, side).var;
            let p = clause_to_var[edge];
            let (plus, minus) = products[x];
            normalize(plus.without(p), minus.without(1.0 - p))
        })
        .collect();

    MessageState { clause_to_var, var_to_clause, round: state.round + 1 }
}

/// Marginal readout from a message state: the full incident product per
/// variable, normalized with the same `1/2` convention.
pub fn marginals(g: &FactorGraph, state: &MessageState) -> MarginalEstimate {
    let p = (0..g.num_vars())
        .into_par_iter()
        .map(|x| {
            let mut plus = LogProduct::default();
            let mut minus = LogProduct::default();
            for &(ci, side) in g.incident(x) {
                let m = state.clause_to_var[g.edge_id(ci, side)];
                plus.push(m);
                minus.push(1.0 - m);
            }
            normalize(plus, minus)
        })
        .collect();
    MarginalEstimate { p, round: state.round }
}

/// Run `rounds` synchronous rounds from the uniform initialization and read
/// the marginals out.
pub fn bp_run(f: &Formula, rounds: u32) -> (MessageState, MarginalEstimate) {
    let g = FactorGraph::new(f);
    let mut state = init_messages(&g);
    for _ in 0..rounds {
        state = bp_step(&g, &state);
    }
    let marg = marginals(&g, &state);
    (state, marg)
}

/// The multiset of per-variable marginal estimates after `rounds` rounds,
/// for comparison against density-evolution populations.
pub fn empirical_marginal_distribution(f: &Formula, rounds: u32) -> Vec<f64> {
    bp_run(f, rounds).1.p
}

/// The crate-wide default round count for a formula on `n` variables:
/// `2·⌈log₂ n⌉ + 10`, comfortably above typical neighborhood depths in the
/// subcritical regime.
pub fn default_rounds(n: usize) -> u32 {
    2 * (n.max(1) as f64).log2().ceil() as u32 + 10
}
