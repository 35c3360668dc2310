//! Unit clause propagation and the counting inequality it certifies.
//!
//! Imposing values on a seed set forces a closure; the closure size bounds
//! how much conditioning can shrink the count: Z <= 2^I · (Z_χ ∨ 1).
//!
//! ```bash
//! cargo run --release --example unit_clause
//! ```

use cavity2sat::formula::{sample_formula, Assignment};
use cavity2sat::ucp::{a_chi, check_fact_uc, unit_clause_propagate};

fn main() {
    let f = sample_formula(30, 1.5, 11).unwrap();
    let chi = Assignment::from_pairs([(0, -1), (7, 1)]);

    let r = unit_clause_propagate(&f, &chi);
    println!(
        "closure from 2 imposed variables: {} variables, contradiction: {}",
        r.imposed.len(),
        r.contradiction
    );
    println!("I_χ = {}, A_χ = {} (best over one-flip starts)", r.i_chi, a_chi(&f, &chi));

    let w = check_fact_uc(&f, &chi, 30).unwrap();
    println!(
        "counting inequality Z <= 2^I · (Z_χ ∨ 1): {} <= 2^{} · {} -> {}",
        w.z,
        w.i_chi,
        w.z_chi.clone().max(1u32.into()),
        w.holds
    );

    // the inequality holds across random instances and seeds
    let mut worst_ratio = 0.0f64;
    for seed in 0..50 {
        let f = sample_formula(14, 1.5, 100 + seed).unwrap();
        let chi = Assignment::from_pairs([(seed as usize % 14, 1)]);
        let w = check_fact_uc(&f, &chi, 30).unwrap();
        assert!(w.holds);
        let lhs = cavity2sat::gw::big_ratio(&w.z, &(w.z_chi.clone().max(1u32.into()) << w.i_chi));
        worst_ratio = worst_ratio.max(lhs);
    }
    println!("tightest ratio Z / (2^I · (Z_χ ∨ 1)) over 50 instances: {worst_ratio:.3}");
}
