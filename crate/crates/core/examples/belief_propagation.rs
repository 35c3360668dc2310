//! Belief propagation marginals, checked against exact counting.
//!
//! On tree formulas BP is exact once the round count covers the depth;
//! on sparse random formulas it is close because long cycles are rare.
//!
//! ```bash
//! cargo run --release --example belief_propagation
//! ```

use cavity2sat::bp::{bp_run, default_rounds};
use cavity2sat::count::marginals_exact;
use cavity2sat::formula::sample_formula;

fn main() {
    let f = sample_formula(500, 1.0, 3).unwrap();
    let rounds = default_rounds(f.num_vars());
    let (state, marg) = bp_run(&f, rounds);
    println!(
        "{} variables, {} clauses, {} rounds (round counter: {})",
        f.num_vars(),
        f.num_clauses(),
        rounds,
        state.round
    );

    let exact = marginals_exact(&f, 30).expect("satisfiable and under the cap");
    let mut worst = 0.0f64;
    let mut mean = 0.0;
    for (a, b) in marg.p.iter().zip(&exact.p) {
        worst = worst.max((a - b).abs());
        mean += (a - b).abs();
    }
    mean /= f.num_vars() as f64;
    println!("BP vs exact marginals: mean |Δ| = {mean:.2e}, worst |Δ| = {worst:.2e}");

    let histogram = {
        let mut h = [0usize; 10];
        for &p in &marg.p {
            h[((p * 10.0) as usize).min(9)] += 1;
        }
        h
    };
    println!("marginal histogram over [0,1): {histogram:?}");
}
