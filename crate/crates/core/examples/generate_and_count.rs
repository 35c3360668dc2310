//! Sample a random formula, inspect its component structure, and count its
//! satisfying assignments exactly.
//!
//! ```bash
//! cargo run --release --example generate_and_count
//! ```

use cavity2sat::count::{count_conditional, count_exact, marginals_exact, soft_partition};
use cavity2sat::formula::{components, emit_dimacs, sample_formula, Assignment};

fn main() {
    let n = 40;
    let d = 1.2;
    let f = sample_formula(n, d, 7).expect("valid parameters");
    println!("sampled formula: {} variables, {} clauses", f.num_vars(), f.num_clauses());

    let comps = components(&f);
    let largest = comps.iter().map(|c| c.vars.len()).max().unwrap();
    println!("components: {} (largest has {largest} variables)", comps.len());

    let r = count_exact(&f, 30).expect("components fit under the cap");
    println!("Z = {} satisfying assignments, ln Z = {:.4}", r.z, r.log_z);

    // conditioning on one variable splits the count
    let plus = count_conditional(&f, &Assignment::from_pairs([(0, 1)]), 30).unwrap();
    let minus = count_conditional(&f, &Assignment::from_pairs([(0, -1)]), 30).unwrap();
    println!("Z(x1=+1) = {}, Z(x1=-1) = {}, sum = {}", plus.z, minus.z, &plus.z + &minus.z);

    match marginals_exact(&f, 30) {
        Ok(m) => {
            println!("first five exact marginals: {:?}", &m.p[..5]);
        }
        Err(e) => println!("marginals unavailable: {e}"),
    }

    // the soft partition function interpolates between 2^n and Z
    for beta in [0.0, 1.0, 4.0, 16.0] {
        let lz = soft_partition(&f, beta, 30).unwrap();
        println!("ln Z_beta at beta={beta:>4}: {lz:.4}");
    }

    print!("\nDIMACS form of the first lines:\n{}", emit_dimacs(&f).lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("\n...");
}
