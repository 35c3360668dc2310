//! 2-SAT formulas, factor-graph adjacency, random ensembles and interchange.
//!
//! A [`Formula`] is a variable count plus an ordered list of width-2 clauses
//! over signed literals. Clauses are sampled as ordered pairs of distinct
//! variables with independent uniform signs (the `4n(n-1)` convention) but
//! stored pairs are semantically unordered; duplicate clauses may occur and
//! are kept. Everything is immutable after construction.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rng::{self, tag};

/// A signed occurrence of a variable: `sign` is `+1` or `-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Literal {
    pub var: usize,
    pub sign: i8,
}

impl Literal {
    pub fn new(var: usize, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "literal sign must be +1 or -1");
        Literal { var, sign }
    }

    /// Does assigning `value` to `self.var` satisfy this literal?
    #[inline]
    pub fn satisfied_by(&self, value: i8) -> bool {
        self.sign == value
    }
}

/// A clause over two distinct variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Clause {
    pub first: Literal,
    pub second: Literal,
}

impl Clause {
    pub fn new(first: Literal, second: Literal) -> Self {
        assert_ne!(first.var, second.var, "clause variables must be distinct");
        Clause { first, second }
    }

    pub fn literals(&self) -> [Literal; 2] {
        [self.first, self.second]
    }

    /// Sign with which `var` appears, if it appears at all.
    pub fn sign_of(&self, var: usize) -> Option<i8> {
        if self.first.var == var {
            Some(self.first.sign)
        } else if self.second.var == var {
            Some(self.second.sign)
        } else {
            None
        }
    }

    /// The literal of the variable other than `var`.
    pub fn other(&self, var: usize) -> Literal {
        if self.first.var == var {
            self.second
        } else {
            debug_assert_eq!(self.second.var, var);
            self.first
        }
    }
}

/// A 2-SAT formula: `n` variables indexed `0..n` and an ordered clause list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Formula {
    n: usize,
    clauses: Vec<Clause>,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum FormulaError {
    #[error("density must be nonnegative, got {0}")]
    NegativeDensity(String),
    #[error("need at least 2 variables to place clauses, got n={0}")]
    TooFewVariables(usize),
    #[error("clause {clause} mentions variable {var} outside 0..{n}")]
    VariableOutOfRange { clause: usize, var: usize, n: usize },
    #[error("dimacs parse error on line {line}: {reason}")]
    Dimacs { line: usize, reason: String },
}

impl Formula {
    /// Build from parts, validating clause variable ranges.
    pub fn new(n: usize, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for (i, c) in clauses.iter().enumerate() {
            for lit in c.literals() {
                if lit.var >= n {
                    return Err(FormulaError::VariableOutOfRange { clause: i, var: lit.var, n });
                }
            }
        }
        Ok(Formula { n, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, i: usize) -> &Clause {
        &self.clauses[i]
    }

    /// True iff `assignment` (a full assignment, `values[v] ∈ {±1}`)
    /// satisfies every clause.
    pub fn is_satisfied_by(&self, values: &[i8]) -> bool {
        self.clauses.iter().all(|c| {
            c.literals().iter().any(|l| l.satisfied_by(values[l.var]))
        })
    }
}

/// A (possibly partial) truth assignment, variable index to `±1`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Assignment {
    values: BTreeMap<usize, i8>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut a = Assignment::new();
        for (var, value) in pairs {
            a.set(var, value);
        }
        a
    }

    pub fn set(&mut self, var: usize, value: i8) {
        assert!(value == 1 || value == -1, "assignment values must be +1 or -1");
        self.values.insert(var, value);
    }

    pub fn get(&self, var: usize) -> Option<i8> {
        self.values.get(&var).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Iterate `(var, value)` in increasing variable order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.values.iter().map(|(&v, &s)| (v, s))
    }
}

/// Clause/variable incidence with a dense directed-edge index.
///
/// Edge `2*clause + side` identifies the ordered pair (clause, its
/// `side`-th variable) and indexes both message directions.
#[derive(Clone, Debug)]
pub struct FactorGraph {
    n: usize,
    clauses: Vec<Clause>,
    var_adj: Vec<Vec<(usize, usize)>>, // (clause index, side) per variable, clause-sorted
}

impl FactorGraph {
    pub fn new(f: &Formula) -> Self {
        let mut var_adj = vec![Vec::new(); f.num_vars()];
        for (ci, c) in f.clauses().iter().enumerate() {
            var_adj[c.first.var].push((ci, 0));
            var_adj[c.second.var].push((ci, 1));
        }
        FactorGraph { n: f.num_vars(), clauses: f.clauses().to_vec(), var_adj }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn num_edges(&self) -> usize {
        2 * self.clauses.len()
    }

    pub fn clause(&self, i: usize) -> &Clause {
        &self.clauses[i]
    }

    /// Variable on `side` (0 or 1) of clause `ci`.
    pub fn endpoint(&self, ci: usize, side: usize) -> Literal {
        if side == 0 {
            self.clauses[ci].first
        } else {
            self.clauses[ci].second
        }
    }

    /// Dense id of the (clause, side) directed-edge pair.
    #[inline]
    pub fn edge_id(&self, ci: usize, side: usize) -> usize {
        2 * ci + side
    }

    /// Incidences `(clause, side)` of variable `x`, in clause order.
    pub fn incident(&self, x: usize) -> &[(usize, usize)] {
        &self.var_adj[x]
    }
}

/// Sample `m ~ Poisson(d*n/2)` clauses, each an independent uniform ordered
/// pair of distinct variables with independent uniform signs.
pub fn sample_formula(n: usize, d: f64, seed: u64) -> Result<Formula, FormulaError> {
    if d < 0.0 || !d.is_finite() {
        return Err(FormulaError::NegativeDensity(d.to_string()));
    }
    if d > 0.0 && n < 2 {
        return Err(FormulaError::TooFewVariables(n));
    }
    let mut rng = rng::stream(seed, &[tag::FORMULA]);
    let m = poisson_draw(&mut rng, d * n as f64 / 2.0);
    let clauses = (0..m).map(|_| random_clause(&mut rng, n)).collect();
    Ok(Formula { n, clauses })
}

fn poisson_draw<R: Rng>(rng: &mut R, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).expect("positive finite mean").sample(rng) as u64
}

fn random_clause<R: Rng>(rng: &mut R, n: usize) -> Clause {
    let u = rng.gen_range(0..n);
    let mut v = rng.gen_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    let su = if rng.gen::<bool>() { 1 } else { -1 };
    let sv = if rng.gen::<bool>() { 1 } else { -1 };
    Clause::new(Literal::new(u, su), Literal::new(v, sv))
}

/// The coupled triple of the `n → n+1` interpolation: a common prefix
/// formula, the prefix plus extra plain clauses, and the prefix plus a new
/// variable with clauses attached to it.
#[derive(Clone, Debug)]
pub struct CoupledTriple {
    /// `n` variables, `Poisson(dn/2 - d/2)` clauses.
    pub base: Formula,
    /// `base` plus `Poisson(d/2)` further uniform clauses.
    pub grown: Formula,
    /// `base` plus variable `n` and `Poisson(d)` clauses containing it.
    pub extended: Formula,
}

/// Sample the coupled triple. The three Poisson counts are independent and
/// `base.clauses` is a prefix of both other clause lists.
pub fn sample_coupled(n: usize, d: f64, seed: u64) -> Result<CoupledTriple, FormulaError> {
    if d < 0.0 || !d.is_finite() {
        return Err(FormulaError::NegativeDensity(d.to_string()));
    }
    if n < 2 {
        return Err(FormulaError::TooFewVariables(n));
    }
    let mut rng = rng::stream(seed, &[tag::COUPLED]);
    let m_base = poisson_draw(&mut rng, d * n as f64 / 2.0 - d / 2.0);
    let delta_grown = poisson_draw(&mut rng, d / 2.0);
    let delta_ext = poisson_draw(&mut rng, d);

    let base_clauses: Vec<Clause> = (0..m_base).map(|_| random_clause(&mut rng, n)).collect();

    let mut grown_clauses = base_clauses.clone();
    grown_clauses.extend((0..delta_grown).map(|_| random_clause(&mut rng, n)));

    let mut ext_clauses = base_clauses.clone();
    for _ in 0..delta_ext {
        // One of the 8n ordered clauses containing the new variable `n`.
        let other = rng.gen_range(0..n);
        let s_new = if rng.gen::<bool>() { 1 } else { -1 };
        let s_other = if rng.gen::<bool>() { 1 } else { -1 };
        let new_lit = Literal::new(n, s_new);
        let other_lit = Literal::new(other, s_other);
        let clause = if rng.gen::<bool>() {
            Clause::new(new_lit, other_lit)
        } else {
            Clause::new(other_lit, new_lit)
        };
        ext_clauses.push(clause);
    }

    Ok(CoupledTriple {
        base: Formula { n, clauses: base_clauses },
        grown: Formula { n, clauses: grown_clauses },
        extended: Formula { n: n + 1, clauses: ext_clauses },
    })
}

/// One connected component of the factor graph: variable and clause index
/// sets, both sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub vars: Vec<usize>,
    pub clauses: Vec<usize>,
}

/// Connected components of `G(f)`, ordered by smallest variable index.
/// Isolated variables form singleton components.
pub fn components(f: &Formula) -> Vec<Component> {
    let g = FactorGraph::new(f);
    let mut comp_of = vec![usize::MAX; f.num_vars()];
    let mut out = Vec::new();
    for start in 0..f.num_vars() {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut vars = vec![start];
        let mut clauses = Vec::new();
        comp_of[start] = id;
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            for &(ci, _) in g.incident(x) {
                let other = g.clause(ci).other(x).var;
                if comp_of[other] == usize::MAX {
                    comp_of[other] = id;
                    vars.push(other);
                    queue.push(other);
                }
            }
        }
        vars.sort_unstable();
        for &x in &vars {
            for &(ci, side) in g.incident(x) {
                // each clause joins via its side-0 endpoint, exactly once
                if side == 0 {
                    clauses.push(ci);
                }
            }
        }
        clauses.sort_unstable();
        out.push(Component { vars, clauses });
    }
    out
}

/// The radius-`radius` neighborhood of `x`: the sub-formula induced by all
/// vertices at factor-graph distance at most `radius`, the distance maps,
/// and the frontier `∂^radius x`. Clauses keep only endpoints that survived
/// the cut, so width-1 clauses can occur at the frontier.
#[derive(Clone, Debug)]
pub struct Neighborhood {
    /// Retained variables (sorted) with their distances from `x`.
    pub var_dist: Vec<(usize, usize)>,
    /// Retained clauses (sorted) with distances and surviving literals.
    pub clauses: Vec<(usize, usize, Vec<Literal>)>,
    /// Variables at distance exactly `radius`.
    pub boundary: Vec<usize>,
}

pub fn neighborhood(f: &Formula, x: usize, radius: usize) -> Neighborhood {
    assert!(x < f.num_vars(), "variable out of range");
    let g = FactorGraph::new(f);
    let mut var_dist: BTreeMap<usize, usize> = BTreeMap::new();
    let mut clause_dist: BTreeMap<usize, usize> = BTreeMap::new();
    var_dist.insert(x, 0);
    let mut frontier = vec![x];
    let mut dist = 0;
    while dist < radius && !frontier.is_empty() {
        // variables -> clauses
        let mut clause_frontier = Vec::new();
        for &v in &frontier {
            for &(ci, _) in g.incident(v) {
                clause_dist.entry(ci).or_insert_with(|| {
                    clause_frontier.push(ci);
                    dist + 1
                });
            }
        }
        dist += 1;
        if dist >= radius {
            break;
        }
        // clauses -> variables
        frontier = Vec::new();
        for &ci in &clause_frontier {
            for lit in g.clause(ci).literals() {
                var_dist.entry(lit.var).or_insert_with(|| {
                    frontier.push(lit.var);
                    dist + 1
                });
            }
        }
        dist += 1;
    }
    let clauses = clause_dist
        .iter()
        .map(|(&ci, &cd)| {
            let lits = f.clause(ci)
                .literals()
                .iter()
                .copied()
                .filter(|l| var_dist.contains_key(&l.var))
                .collect();
            (ci, cd, lits)
        })
        .collect();
    let boundary = var_dist.iter().filter(|&(_, &d0)| d0 == radius).map(|(&v, _)| v).collect();
    Neighborhood { var_dist: var_dist.into_iter().collect(), clauses, boundary }
}

/// Parse restricted-width DIMACS CNF: every clause line must hold exactly
/// two nonzero literals over distinct in-range variables. `c` comment lines
/// are skipped.
pub fn parse_dimacs(text: &str) -> Result<Formula, FormulaError> {
    let err = |line: usize, reason: &str| FormulaError::Dimacs { line, reason: reason.to_string() };
    let mut n: Option<usize> = None;
    let mut declared_m = 0usize;
    let mut clauses = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if n.is_some() {
                return Err(err(line, "duplicate problem line"));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(err(line, "expected 'p cnf <vars> <clauses>'"));
            }
            n = Some(fields[2].parse().map_err(|_| err(line, "bad variable count"))?);
            declared_m = fields[3].parse().map_err(|_| err(line, "bad clause count"))?;
            continue;
        }
        let n = n.ok_or_else(|| err(line, "clause before problem line"))?;
        let mut lits = Vec::new();
        let mut terminated = false;
        for tok in trimmed.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| err(line, "bad literal"))?;
            if v == 0 {
                terminated = true;
                break;
            }
            let var = v.unsigned_abs() as usize - 1;
            if var >= n {
                return Err(err(line, "literal out of range"));
            }
            lits.push(Literal::new(var, if v > 0 { 1 } else { -1 }));
        }
        if !terminated {
            return Err(err(line, "clause line not 0-terminated"));
        }
        if lits.len() != 2 {
            return Err(err(line, "clause width must be exactly 2"));
        }
        if lits[0].var == lits[1].var {
            return Err(err(line, "repeated variable"));
        }
        clauses.push(Clause::new(lits[0], lits[1]));
    }
    let n = n.ok_or_else(|| err(0, "missing problem line"))?;
    if clauses.len() != declared_m {
        return Err(err(0, "clause count does not match header"));
    }
    Ok(Formula { n, clauses })
}

/// Emit normalized DIMACS: header then clauses, literals as `±(var+1)`,
/// 0-terminated. `emit_dimacs ∘ parse_dimacs` is the identity on its image.
pub fn emit_dimacs(f: &Formula) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses());
    for c in f.clauses() {
        let enc = |l: Literal| (l.var as i64 + 1) * l.sign as i64;
        let _ = writeln!(out, "{} {} 0", enc(c.first), enc(c.second));
    }
    out
}

// JSON schema: {"n": 3, "clauses": [[1, -2], [3, 1]]} with signed 1-based
// literals.
impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            clauses: Vec<[i64; 2]>,
        }
        let enc = |l: Literal| (l.var as i64 + 1) * l.sign as i64;
        let clauses = self.clauses.iter().map(|c| [enc(c.first), enc(c.second)]).collect();
        Repr { n: self.n, clauses }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            clauses: Vec<[i64; 2]>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let dec = |v: i64| -> Result<Literal, D::Error> {
            if v == 0 {
                return Err(D::Error::custom("literal 0 is invalid"));
            }
            let var = v.unsigned_abs() as usize - 1;
            if var >= repr.n {
                return Err(D::Error::custom("literal out of range"));
            }
            Ok(Literal::new(var, if v > 0 { 1 } else { -1 }))
        };
        let mut clauses = Vec::with_capacity(repr.clauses.len());
        for [a, b] in repr.clauses {
            let (a, b) = (dec(a)?, dec(b)?);
            if a.var == b.var {
                return Err(D::Error::custom("repeated variable in clause"));
            }
            clauses.push(Clause::new(a, b));
        }
        Ok(Formula { n: repr.n, clauses })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: usize, s: i8) -> Literal {
        Literal::new(v, s)
    }

    fn clause(a: (usize, i8), b: (usize, i8)) -> Clause {
        Clause::new(lit(a.0, a.1), lit(b.0, b.1))
    }

    #[test]
    fn zero_density_yields_empty_formula() {
        let f = sample_formula(10, 0.0, 123).unwrap();
        assert_eq!(f.num_vars(), 10);
        assert_eq!(f.num_clauses(), 0);
    }

    #[test]
    fn two_variable_formula_uses_both() {
        let f = sample_formula(2, 3.0, 9).unwrap();
        assert!(f.num_clauses() > 0);
        for c in f.clauses() {
            let mut vars = [c.first.var, c.second.var];
            vars.sort_unstable();
            assert_eq!(vars, [0, 1]);
        }
    }

    #[test]
    fn clause_count_concentrates() {
        // Poisson(600): |m - 600| <= 5 sqrt(600).
        let f = sample_formula(1000, 1.2, 42).unwrap();
        let m = f.num_clauses() as f64;
        assert!((m - 600.0).abs() <= 5.0 * 600f64.sqrt(), "m={m}");
    }

    #[test]
    fn sampling_rejections() {
        assert!(matches!(sample_formula(1, 1.0, 0), Err(FormulaError::TooFewVariables(1))));
        assert!(matches!(sample_formula(10, -0.5, 0), Err(FormulaError::NegativeDensity(_))));
        assert!(sample_formula(1, 0.0, 0).is_ok());
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_formula(200, 1.5, 77).unwrap();
        let b = sample_formula(200, 1.5, 77).unwrap();
        assert_eq!(a, b);
        let c = sample_formula(200, 1.5, 78).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_clauses_have_distinct_variables() {
        for seed in 0..20 {
            let f = sample_formula(50, 1.9, seed).unwrap();
            for c in f.clauses() {
                assert_ne!(c.first.var, c.second.var);
            }
        }
    }

    #[test]
    fn coupled_prefix_invariant() {
        for seed in 0..20 {
            let t = sample_coupled(40, 1.2, seed).unwrap();
            let m = t.base.num_clauses();
            assert_eq!(&t.grown.clauses()[..m], t.base.clauses());
            assert_eq!(&t.extended.clauses()[..m], t.base.clauses());
            assert_eq!(t.extended.num_vars(), t.base.num_vars() + 1);
            for c in &t.extended.clauses()[m..] {
                assert!(c.first.var == 40 || c.second.var == 40);
            }
        }
    }

    #[test]
    fn coupled_extension_count_mean() {
        // Delta''' ~ Poisson(d): mean over 10^4 trials within 0.05 of d = 1.
        let trials = 10_000;
        let total: usize = (0..trials)
            .map(|s| {
                let t = sample_coupled(100, 1.0, s).unwrap();
                t.extended.num_clauses() - t.base.num_clauses()
            })
            .sum();
        let mean = total as f64 / trials as f64;
        assert!((mean - 1.0).abs() <= 0.05, "mean={mean}");
    }

    #[test]
    fn components_empty_formula() {
        let f = Formula::new(5, vec![]).unwrap();
        let comps = components(&f);
        assert_eq!(comps.len(), 5);
        for (i, c) in comps.iter().enumerate() {
            assert_eq!(c.vars, vec![i]);
            assert!(c.clauses.is_empty());
        }
    }

    #[test]
    fn components_single_clause() {
        let f = Formula::new(3, vec![clause((0, 1), (1, 1))]).unwrap();
        let comps = components(&f);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vars, vec![0, 1]);
        assert_eq!(comps[0].clauses, vec![0]);
        assert_eq!(comps[1].vars, vec![2]);
    }

    #[test]
    fn components_two_disjoint_clauses() {
        let f = Formula::new(4, vec![clause((0, 1), (1, 1)), clause((2, 1), (3, -1))]).unwrap();
        let comps = components(&f);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vars, vec![0, 1]);
        assert_eq!(comps[1].vars, vec![2, 3]);
    }

    #[test]
    fn components_form_a_partition() {
        for seed in 0..10 {
            let f = sample_formula(60, 1.5, seed).unwrap();
            let comps = components(&f);
            let mut var_seen = vec![false; f.num_vars()];
            let mut clause_seen = vec![false; f.num_clauses()];
            for c in &comps {
                for &v in &c.vars {
                    assert!(!var_seen[v]);
                    var_seen[v] = true;
                }
                for &ci in &c.clauses {
                    assert!(!clause_seen[ci]);
                    clause_seen[ci] = true;
                }
            }
            assert!(var_seen.into_iter().all(|b| b));
            assert!(clause_seen.into_iter().all(|b| b));
            // ordered by smallest variable index
            let mins: Vec<usize> = comps.iter().map(|c| c.vars[0]).collect();
            assert!(mins.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn neighborhood_radius_zero() {
        let f = Formula::new(3, vec![clause((0, 1), (1, 1))]).unwrap();
        let nb = neighborhood(&f, 0, 0);
        assert_eq!(nb.var_dist, vec![(0, 0)]);
        assert!(nb.clauses.is_empty());
        assert_eq!(nb.boundary, vec![0]);
    }

    #[test]
    fn neighborhood_single_clause_radius_two() {
        let f = Formula::new(2, vec![clause((0, 1), (1, 1))]).unwrap();
        let nb = neighborhood(&f, 0, 2);
        assert_eq!(nb.var_dist, vec![(0, 0), (1, 2)]);
        assert_eq!(nb.clauses.len(), 1);
        assert_eq!(nb.clauses[0].2.len(), 2);
        assert_eq!(nb.boundary, vec![1]);
    }

    #[test]
    fn neighborhood_on_path() {
        // x0 -c0- x1 -c1- x2
        let f = Formula::new(3, vec![clause((0, 1), (1, 1)), clause((1, 1), (2, 1))]).unwrap();
        let nb = neighborhood(&f, 0, 2);
        let vars: Vec<usize> = nb.var_dist.iter().map(|&(v, _)| v).collect();
        assert_eq!(vars, vec![0, 1]);
        let cls: Vec<usize> = nb.clauses.iter().map(|&(c, _, _)| c).collect();
        assert_eq!(cls, vec![0]);
        assert_eq!(nb.boundary, vec![1]);
    }

    #[test]
    fn neighborhood_keeps_cut_clause_at_width_one() {
        let f = Formula::new(2, vec![clause((0, 1), (1, -1))]).unwrap();
        let nb = neighborhood(&f, 0, 1);
        assert_eq!(nb.clauses.len(), 1);
        assert_eq!(nb.clauses[0].2, vec![lit(0, 1)]);
    }

    #[test]
    fn neighborhood_monotone_and_exhausts_component() {
        let f = sample_formula(40, 1.5, 5).unwrap();
        let mut prev = 0;
        for radius in 0..20 {
            let nb = neighborhood(&f, 0, radius);
            assert!(nb.var_dist.len() >= prev);
            prev = nb.var_dist.len();
        }
        let comp_vars = &components(&f)
            .into_iter()
            .find(|c| c.vars.contains(&0))
            .unwrap()
            .vars;
        let nb = neighborhood(&f, 0, 2 * f.num_vars());
        let vars: Vec<usize> = nb.var_dist.iter().map(|&(v, _)| v).collect();
        assert_eq!(&vars, comp_vars);
    }

    #[test]
    fn dimacs_parse_basic() {
        let f = parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap();
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f.clauses(), &[clause((0, 1), (1, 1))]);
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c hand file\np cnf 6 4\n1 -2 0\n-3 4 0\n5 6 0\n-1 -6 0\n";
        let f = parse_dimacs(text).unwrap();
        let emitted = emit_dimacs(&f);
        assert_eq!(parse_dimacs(&emitted).unwrap(), f);
        // normalized text round-trips byte-identically
        assert_eq!(emit_dimacs(&parse_dimacs(&emitted).unwrap()), emitted);
    }

    #[test]
    fn dimacs_rejects_bad_clauses() {
        let repeated = parse_dimacs("p cnf 2 1\n1 1 0\n");
        assert!(matches!(repeated, Err(FormulaError::Dimacs { reason, .. }) if reason.contains("repeated")));
        assert!(parse_dimacs("p cnf 3 1\n1 2 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = sample_formula(12, 1.0, 3).unwrap();
        let js = serde_json::to_string(&f).unwrap();
        let back: Formula = serde_json::from_str(&js).unwrap();
        assert_eq!(f, back);
    }
}
