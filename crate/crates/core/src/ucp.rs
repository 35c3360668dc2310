//! Unit Clause Propagation: the imposed-value closure, its one-flip
//! relaxation, and the counting inequality built on them.
//!
//! Starting from a partial assignment, while some clause has one variable
//! imposed to its falsifying value and the other variable unimposed, the
//! satisfying value is imposed on that other variable. The closure is
//! confluent, so the worklist discipline is observationally irrelevant; a
//! test pits FIFO against LIFO to keep it that way. On termination a
//! clause with both variables imposed to falsifying values marks a
//! contradiction, in which case the closure size is reported as `n`.

use num_bigint::BigUint;
use num_traits::One;

use crate::count::{count_conditional, count_exact, CountError};
use crate::formula::{Assignment, FactorGraph, Formula};

/// Outcome of the closure.
///
/// Without a contradiction, `imposed` is the unique least fixed point of
/// the propagation and independent of processing order. On a
/// contradiction the imposed values are those of the (deterministic) FIFO
/// run; only `contradiction` and `i_chi = n` are meaningful then.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UcpResult {
    /// the closure assignment (the start set included)
    pub imposed: Assignment,
    /// closure size, or `n` on contradiction
    pub i_chi: usize,
    pub contradiction: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Discipline {
    Fifo,
    // exercised by the confluence test
    #[allow(dead_code)]
    Lifo,
}

pub fn unit_clause_propagate(f: &Formula, chi: &Assignment) -> UcpResult {
    propagate(f, chi, Discipline::Fifo)
}

fn propagate(f: &Formula, chi: &Assignment, discipline: Discipline) -> UcpResult {
    let g = FactorGraph::new(f);
    let mut value: Vec<i8> = vec![0; f.num_vars()];
    let mut worklist: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
    for (var, s) in chi.iter() {
        assert!(var < f.num_vars(), "imposed variable out of range");
        value[var] = s;
        worklist.push_back(var);
    }
    while let Some(z) = match discipline {
        Discipline::Fifo => worklist.pop_front(),
        Discipline::Lifo => worklist.pop_back(),
    } {
        for &(ci, side) in g.incident(z) {
            let me = g.endpoint(ci, side);
            if value[z] != -me.sign {
                continue; // z does not falsify this clause
            }
            let other = g.endpoint(ci, 1 - side);
            if value[other.var] == 0 {
                value[other.var] = other.sign;
                worklist.push_back(other.var);
            }
        }
    }
    let contradiction = f.clauses().iter().any(|c| {
        c.literals().iter().all(|l| value[l.var] == -l.sign)
    });
    let imposed = Assignment::from_pairs(
        (0..f.num_vars()).filter(|&v| value[v] != 0).map(|v| (v, value[v])),
    );
    let i_chi = if contradiction { f.num_vars() } else { imposed.len() };
    UcpResult { imposed, i_chi, contradiction }
}

/// The one-flip relaxation: the minimum closure size over the start
/// assignment itself and all single-variable flips of it. Ties prefer the
/// unflipped start.
pub fn a_chi(f: &Formula, chi: &Assignment) -> usize {
    assert!(!chi.is_empty(), "need at least one imposed variable");
    let mut best = unit_clause_propagate(f, chi).i_chi;
    for (var, s) in chi.iter() {
        let mut flipped = chi.clone();
        flipped.set(var, -s);
        best = best.min(unit_clause_propagate(f, &flipped).i_chi);
    }
    best
}

/// Witness values for the counting inequality
/// `Z(f) <= 2^{I_χ} · (Z(f,χ) ∨ 1)`.
#[derive(Clone, PartialEq, Debug)]
pub struct FactUcWitness {
    pub holds: bool,
    pub z: BigUint,
    pub i_chi: usize,
    pub z_chi: BigUint,
}

pub fn check_fact_uc(f: &Formula, chi: &Assignment, cap: usize) -> Result<FactUcWitness, CountError> {
    let z = count_exact(f, cap)?.z;
    let i_chi = unit_clause_propagate(f, chi).i_chi;
    let z_chi = count_conditional(f, chi, cap)?.z;
    let rhs = z_chi.clone().max(BigUint::one()) << i_chi;
    Ok(FactUcWitness { holds: z <= rhs, z, i_chi, z_chi })
}
