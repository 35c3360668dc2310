//! The five-type Galton-Watson tree mirroring the local neighborhood of a
//! random formula, with extremal boundary conditions and exact tree DPs.
//!
//! Nodes alternate: variables at even graph depth, clauses at odd depth.
//! A clause node carries the signs of its parent and child variables; each
//! variable spawns independent `Poisson(d/4)` clause children of each of
//! the four sign types. Trees are truncated at variable level `depth`, so
//! every clause keeps both endpoints and the tree doubles as a width-2
//! formula. Variables are stored in BFS order (parents before children),
//! which makes bottom-up passes a single reverse sweep.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand_distr::{Distribution, Poisson};
use thiserror::Error;

use crate::formula::{Assignment, Clause, Formula, Literal};
use crate::math::{log_sum_exp, sigmoid, softplus};
use crate::rng::{self, tag};

/// A clause node: one parent variable, one child variable, two signs.
#[derive(Clone, Copy, Debug)]
pub struct GwClause {
    pub parent: usize,
    pub child: usize,
    pub sign_parent: i8,
    pub sign_child: i8,
}

/// A rooted alternating variable/clause tree truncated at variable level
/// `depth` (graph depth `2·depth`).
#[derive(Clone, Debug)]
pub struct GwTree {
    depth: usize,
    var_level: Vec<usize>,
    /// clause children of each variable, a contiguous range per variable
    var_children: Vec<(usize, usize)>,
    clauses: Vec<GwClause>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree sampling exceeded {0} nodes")]
    TreeTooLarge(usize),
    #[error("no satisfying assignment agrees with the boundary condition")]
    InfeasibleBoundary,
}

/// Sampling aborts once a tree reaches this many nodes.
pub const MAX_TREE_NODES: usize = 10_000_000;

const SIGN_TYPES: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Sample the tree: each variable above the truncation level spawns
/// `Poisson(d/4)` clauses of each sign type, each clause one child
/// variable. Deterministic given the seed.
pub fn sample_tree(d: f64, depth: usize, seed: u64) -> Result<GwTree, TreeError> {
    assert!(d >= 0.0, "offspring density must be nonnegative");
    let mut rng = rng::stream(seed, &[tag::GW_TREE]);
    let quarter = d / 4.0;
    let mut var_level = vec![0usize];
    let mut var_children = vec![(0usize, 0usize)];
    let mut clauses: Vec<GwClause> = Vec::new();
    let mut v = 0;
    while v < var_level.len() {
        let level = var_level[v];
        let start = clauses.len();
        if level < depth {
            for (sign_parent, sign_child) in SIGN_TYPES {
                let count = if quarter > 0.0 {
                    Poisson::new(quarter).expect("positive mean").sample(&mut rng) as u64
                } else {
                    0
                };
                for _ in 0..count {
                    clauses.push(GwClause { parent: v, child: 0, sign_parent, sign_child });
                }
            }
            if var_level.len() + 2 * clauses.len() > MAX_TREE_NODES {
                return Err(TreeError::TreeTooLarge(MAX_TREE_NODES));
            }
        }
        var_children[v] = (start, clauses.len());
        for clause in clauses.iter_mut().skip(start) {
            clause.child = var_level.len();
            var_level.push(level + 1);
            var_children.push((0, 0));
        }
        v += 1;
    }
    Ok(GwTree { depth, var_level, var_children, clauses })
}

impl GwTree {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn num_vars(&self) -> usize {
        self.var_level.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.num_vars() + self.num_clauses()
    }

    pub fn level(&self, v: usize) -> usize {
        self.var_level[v]
    }

    pub fn clauses(&self) -> &[GwClause] {
        &self.clauses
    }

    /// Clause children of variable `v`.
    pub fn children(&self, v: usize) -> &[GwClause] {
        let (a, b) = self.var_children[v];
        &self.clauses[a..b]
    }

    /// Variables at level exactly `depth`, the boundary of the truncation.
    pub fn boundary_vars(&self) -> Vec<usize> {
        (0..self.num_vars()).filter(|&v| self.var_level[v] == self.depth).collect()
    }

    /// The tree as a width-2 formula over its variable indices.
    pub fn to_formula(&self) -> Formula {
        let clauses = self
            .clauses
            .iter()
            .map(|c| {
                Clause::new(
                    Literal::new(c.parent, c.sign_parent),
                    Literal::new(c.child, c.sign_child),
                )
            })
            .collect();
        Formula::new(self.num_vars(), clauses).expect("tree indices are in range")
    }

    /// Diameter of the tree in variable hops (two BFS sweeps); the graph
    /// diameter is twice this. Zero for a single variable.
    pub fn var_diameter(&self) -> usize {
        if self.num_vars() <= 1 {
            return 0;
        }
        let (far, _) = self.farthest_from(0);
        self.farthest_from(far).1
    }

    fn farthest_from(&self, start: usize) -> (usize, usize) {
        let parent_of: Vec<Option<usize>> = {
            let mut p = vec![None; self.num_vars()];
            for c in &self.clauses {
                p[c.child] = Some(c.parent);
            }
            p
        };
        let mut dist = vec![usize::MAX; self.num_vars()];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut best = (start, 0);
        while let Some(v) = queue.pop_front() {
            let neighbors = self.children(v).iter().map(|c| c.child).chain(parent_of[v]);
            for u in neighbors {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    if dist[u] > best.1 {
                        best = (u, dist[u]);
                    }
                    queue.push_back(u);
                }
            }
        }
        best
    }
}

/// The extremal assignment for `target` at the root: top-down, each child
/// variable is set to leave its parent clause to the parent whenever the
/// parent's value already satisfies it, and to satisfy it otherwise. The
/// full assignment satisfies every clause of the tree; the second return
/// value is its restriction to the truncation boundary.
pub fn extremal_boundary(t: &GwTree, target: i8) -> (Vec<i8>, Assignment) {
    assert!(target == 1 || target == -1);
    let mut sigma = vec![0i8; t.num_vars()];
    sigma[0] = target;
    for c in t.clauses() {
        // parents precede children in storage order, so sigma[c.parent] is set
        sigma[c.child] = if c.sign_parent == sigma[c.parent] { -c.sign_child } else { c.sign_child };
    }
    let boundary = Assignment::from_pairs(t.boundary_vars().into_iter().map(|v| (v, sigma[v])));
    (sigma, boundary)
}

/// Log-space satisfying-assignment count with exact zero detection.
#[derive(Clone, Copy, Debug)]
struct LogCount {
    zero: bool,
    ln: f64,
}

impl LogCount {
    const ZERO: LogCount = LogCount { zero: true, ln: 0.0 };
    const ONE: LogCount = LogCount { zero: false, ln: 0.0 };

    #[inline]
    fn mul(self, other: LogCount) -> LogCount {
        if self.zero || other.zero {
            LogCount::ZERO
        } else {
            LogCount { zero: false, ln: self.ln + other.ln }
        }
    }

    #[inline]
    fn add(self, other: LogCount) -> LogCount {
        if self.zero {
            other
        } else if other.zero {
            self
        } else {
            LogCount { zero: false, ln: log_sum_exp(self.ln, other.ln) }
        }
    }
}

#[inline]
fn idx(t: i8) -> usize {
    if t > 0 {
        0
    } else {
        1
    }
}

/// Bottom-up two-state counting DP. `clamp` pins variables to values;
/// returns per-variable counts of satisfying extensions of the subtree
/// with the variable at `+1` / `-1`.
fn subtree_counts(t: &GwTree, clamp: &Assignment) -> Vec<[LogCount; 2]> {
    let mut z = vec![[LogCount::ONE; 2]; t.num_vars()];
    for v in (0..t.num_vars()).rev() {
        let mut zv = [LogCount::ONE; 2];
        if let Some(s) = clamp.get(v) {
            zv[idx(-s)] = LogCount::ZERO;
        }
        for c in t.children(v) {
            let zc = z[c.child];
            let free = zc[0].add(zc[1]);
            for s in [1i8, -1] {
                if zv[idx(s)].zero {
                    continue;
                }
                // clause satisfied by the parent: child unconstrained;
                // otherwise the child must satisfy it
                let factor = if c.sign_parent == s { free } else { zc[idx(c.sign_child)] };
                zv[idx(s)] = zv[idx(s)].mul(factor);
            }
        }
        z[v] = zv;
    }
    z
}

fn marginal_from_counts(plus: LogCount, minus: LogCount) -> Result<f64, TreeError> {
    match (plus.zero, minus.zero) {
        (true, true) => Err(TreeError::InfeasibleBoundary),
        (true, false) => Ok(0.0),
        (false, true) => Ok(1.0),
        (false, false) => Ok(sigmoid(plus.ln - minus.ln)),
    }
}

/// Exact `P(σ_o = +1)` among satisfying assignments agreeing with the
/// boundary condition `b`.
pub fn conditional_root_marginal(t: &GwTree, b: &Assignment) -> Result<f64, TreeError> {
    let z = subtree_counts(t, b);
    marginal_from_counts(z[0][0], z[0][1])
}

/// Exact `P(σ_o = +1)` over all satisfying assignments. A tree 2-SAT
/// formula is always satisfiable, so this cannot fail.
pub fn unconditional_root_marginal(t: &GwTree) -> f64 {
    conditional_root_marginal(t, &Assignment::new()).expect("tree formulas are satisfiable")
}

/// Exact root counts `(Z with σ_o = +1, Z with σ_o = -1)` under a clamp,
/// in exact integer arithmetic. The workhorse of the extremality checks,
/// where float agreement is not good enough.
pub fn root_counts_exact(t: &GwTree, clamp: &Assignment) -> (BigUint, BigUint) {
    let mut z: Vec<[BigUint; 2]> = vec![[BigUint::one(), BigUint::one()]; t.num_vars()];
    for v in (0..t.num_vars()).rev() {
        let mut zv = [BigUint::one(), BigUint::one()];
        if let Some(s) = clamp.get(v) {
            zv[idx(-s)] = BigUint::zero();
        }
        for c in t.children(v) {
            let free = &z[c.child][0] + &z[c.child][1];
            for s in [1i8, -1] {
                if zv[idx(s)].is_zero() {
                    continue;
                }
                let factor =
                    if c.sign_parent == s { free.clone() } else { z[c.child][idx(c.sign_child)].clone() };
                zv[idx(s)] *= factor;
            }
        }
        z[v] = zv;
    }
    let [p, m] = std::mem::replace(&mut z[0], [BigUint::zero(), BigUint::zero()]);
    (p, m)
}

/// Exact marginals `P(σ_v = +1)` for every tree variable: an up pass of
/// subtree counts and a down pass of complement counts, both in exact
/// integer arithmetic.
pub fn all_marginals_exact(t: &GwTree) -> Vec<f64> {
    let nv = t.num_vars();
    // up pass: z[v][s] counts satisfying assignments of the subtree at v
    let mut z: Vec<[BigUint; 2]> = vec![[BigUint::one(), BigUint::one()]; nv];
    for v in (0..nv).rev() {
        let mut zv = [BigUint::one(), BigUint::one()];
        for c in t.children(v) {
            let free = &z[c.child][0] + &z[c.child][1];
            for s in [1i8, -1] {
                let factor =
                    if c.sign_parent == s { free.clone() } else { z[c.child][idx(c.sign_child)].clone() };
                zv[idx(s)] *= factor;
            }
        }
        z[v] = zv;
    }
    // down pass: u[v][s] counts satisfying assignments of everything
    // outside the subtree at v, given σ_v = s
    let mut u: Vec<[BigUint; 2]> = vec![[BigUint::one(), BigUint::one()]; nv];
    for v in 0..nv {
        let kids = t.children(v).to_vec();
        let factor = |b: &GwClause, s: i8| -> BigUint {
            if b.sign_parent == s {
                &z[b.child][0] + &z[b.child][1]
            } else {
                z[b.child][idx(b.sign_child)].clone()
            }
        };
        for (i, c) in kids.iter().enumerate() {
            // w(s) = u[v][s] · product of sibling factors at parent state s
            let mut w = [u[v][0].clone(), u[v][1].clone()];
            for (j, b) in kids.iter().enumerate() {
                if i == j {
                    continue;
                }
                for s in [1i8, -1] {
                    let f = factor(b, s);
                    w[idx(s)] *= f;
                }
            }
            for tv in [1i8, -1] {
                u[c.child][idx(tv)] = if tv == c.sign_child {
                    // clause satisfied by the child: parent free
                    &w[0] + &w[1]
                } else {
                    // parent must satisfy it
                    w[idx(c.sign_parent)].clone()
                };
            }
        }
    }
    (0..nv)
        .map(|v| {
            let plus = &z[v][0] * &u[v][0];
            let minus = &z[v][1] * &u[v][1];
            let total = &plus + &minus;
            debug_assert!(!total.is_zero());
            big_ratio(&plus, &total)
        })
        .collect()
}

/// `a / b` for big integers with `0 <= a <= b`, accurate to f64 precision.
pub fn big_ratio(a: &BigUint, b: &BigUint) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    // scale both into f64 range with a common shift
    let shift = b.bits().saturating_sub(53);
    let af = (a >> shift).iter_u64_digits().next().unwrap_or(0) as f64;
    let bf = (b >> shift).iter_u64_digits().next().unwrap_or(0) as f64;
    af / bf
}

/// A log-likelihood value in `ℝ ∪ {+∞}`; the infinity is a symbolic
/// sentinel, never a float inside downstream arithmetic.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Eta {
    Finite(f64),
    PosInf,
}

impl Eta {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Eta::PosInf)
    }

    /// `ψ(η)`, with `ψ(+∞) = 1`.
    pub fn mu(&self) -> f64 {
        match *self {
            Eta::Finite(v) => sigmoid(v),
            Eta::PosInf => 1.0,
        }
    }
}

/// Bottom-up pass of the boundary-propagation operator: boundary variables
/// are clamped to `+∞`; an internal variable accumulates, over its clause
/// children with grandchild values `η_y`, `softplus(η_y)` when its
/// designated value satisfies the clause and `-softplus(-η_y)` otherwise.
/// An infinite grandchild therefore contributes `+∞` in the first case and
/// exactly `0` in the second, so `-∞` can never arise.
///
/// `η_v` is the log-likelihood ratio of `σ_v = sigma[v]` in the subtree at
/// `v` under the clamped boundary; at the root, `sigmoid(η_o)` equals the
/// conditional marginal of the value `sigma[0]`.
pub fn ll_plus_uppass(t: &GwTree, sigma: &[i8]) -> Vec<Eta> {
    assert_eq!(sigma.len(), t.num_vars());
    let mut eta = vec![Eta::Finite(0.0); t.num_vars()];
    for v in (0..t.num_vars()).rev() {
        if t.level(v) == t.depth() {
            eta[v] = Eta::PosInf;
            continue;
        }
        let mut sum = 0.0;
        let mut infinite = false;
        for c in t.children(v) {
            let w = sigma[v] * c.sign_parent;
            match (w, eta[c.child]) {
                (1, Eta::PosInf) => infinite = true,
                (1, Eta::Finite(e)) => sum += softplus(e),
                (-1, Eta::PosInf) => {} // -softplus(-∞) = 0
                (-1, Eta::Finite(e)) => sum -= softplus(-e),
                _ => unreachable!("signs are ±1"),
            }
        }
        assert!(sum > f64::NEG_INFINITY);
        eta[v] = if infinite { Eta::PosInf } else { Eta::Finite(sum) };
    }
    eta
}

/// The implications of imposing a value on a variable: descend into
/// exactly the child clauses the imposed value fails to satisfy and impose
/// the satisfying value on each grandchild.
#[derive(Clone, Debug)]
pub struct ImplicationSubtree {
    /// reached variables with their forced values, in discovery order
    pub imposed: Vec<(usize, i8)>,
    /// clause indices traversed
    pub clauses: Vec<usize>,
}

/// Build the implication subtree of `(x, s)` and return it with its
/// variable count `N_{x,s}`.
pub fn implication_subtree(t: &GwTree, x: usize, s: i8) -> (ImplicationSubtree, usize) {
    assert!(x < t.num_vars());
    assert!(s == 1 || s == -1);
    let mut imposed = vec![(x, s)];
    let mut clauses = Vec::new();
    let mut stack = vec![(x, s)];
    while let Some((v, val)) = stack.pop() {
        let (start, _) = t.var_children[v];
        for (offset, c) in t.children(v).iter().enumerate() {
            if c.sign_parent != val {
                clauses.push(start + offset);
                imposed.push((c.child, c.sign_child));
                stack.push((c.child, c.sign_child));
            }
        }
    }
    let count = imposed.len();
    (ImplicationSubtree { imposed, clauses }, count)
}
