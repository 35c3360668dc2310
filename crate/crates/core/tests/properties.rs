//! Property tests over randomly generated formulas.

use cavity2sat::bp;
use cavity2sat::count;
use cavity2sat::formula::{
    components, emit_dimacs, parse_dimacs, Assignment, Clause, Formula, Literal,
};
use cavity2sat::ucp;
use proptest::prelude::*;

fn arb_formula(max_n: usize, max_m: usize) -> impl Strategy<Value = Formula> {
    (2..=max_n).prop_flat_map(move |n| {
        let clause = (0..n, 0..n - 1, any::<bool>(), any::<bool>()).prop_map(move |(a, b0, sa, sb)| {
            let b = if b0 >= a { b0 + 1 } else { b0 };
            Clause::new(
                Literal::new(a, if sa { 1 } else { -1 }),
                Literal::new(b, if sb { 1 } else { -1 }),
            )
        });
        proptest::collection::vec(clause, 0..=max_m)
            .prop_map(move |clauses| Formula::new(n, clauses).unwrap())
    })
}

proptest! {
    #[test]
    fn dimacs_round_trips(f in arb_formula(12, 24)) {
        let text = emit_dimacs(&f);
        let back = parse_dimacs(&text).unwrap();
        prop_assert_eq!(&back, &f);
        // emitting the parsed formula is the identity on normalized text
        prop_assert_eq!(emit_dimacs(&back), text);
    }

    #[test]
    fn json_round_trips(f in arb_formula(12, 24)) {
        let js = serde_json::to_string(&f).unwrap();
        let back: Formula = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn components_partition_everything(f in arb_formula(14, 20)) {
        let comps = components(&f);
        let mut vars = vec![0u8; f.num_vars()];
        let mut clauses = vec![0u8; f.num_clauses()];
        for c in &comps {
            for &v in &c.vars { vars[v] += 1; }
            for &i in &c.clauses { clauses[i] += 1; }
        }
        prop_assert!(vars.iter().all(|&c| c == 1));
        prop_assert!(clauses.iter().all(|&c| c == 1));
    }

    #[test]
    fn conditional_counts_split(f in arb_formula(10, 16), x_raw in 0usize..10) {
        let x = x_raw % f.num_vars();
        let z = count::count_exact(&f, 30).unwrap().z;
        let zp = count::count_conditional(&f, &Assignment::from_pairs([(x, 1)]), 30).unwrap().z;
        let zm = count::count_conditional(&f, &Assignment::from_pairs([(x, -1)]), 30).unwrap().z;
        prop_assert_eq!(zp + zm, z);
    }

    #[test]
    fn bp_messages_and_marginals_stay_in_range(f in arb_formula(12, 20), rounds in 0u32..8) {
        let (state, marg) = bp::bp_run(&f, rounds);
        prop_assert!(state.clause_to_var.iter().all(|v| (0.0..=1.0).contains(v)));
        prop_assert!(state.var_to_clause.iter().all(|v| (0.0..=1.0).contains(v)));
        prop_assert!(marg.p.iter().all(|v| (0.0..=1.0).contains(v)));
    }

    #[test]
    fn relaxed_closure_never_exceeds_plain(f in arb_formula(12, 20), start in 0usize..12, sign in any::<bool>()) {
        let x = start % f.num_vars();
        let chi = Assignment::from_pairs([(x, if sign { 1 } else { -1 })]);
        let plain = ucp::unit_clause_propagate(&f, &chi);
        prop_assert!(ucp::a_chi(&f, &chi) <= plain.i_chi);
        if plain.contradiction {
            prop_assert_eq!(plain.i_chi, f.num_vars());
        } else {
            prop_assert_eq!(plain.i_chi, plain.imposed.len());
        }
    }

    #[test]
    fn soft_partition_is_sandwiched(f in arb_formula(10, 14), beta in 0.0f64..20.0) {
        use num_traits::Zero;
        let n_ln2 = f.num_vars() as f64 * std::f64::consts::LN_2;
        let r = count::count_exact(&f, 30).unwrap();
        let soft = count::soft_partition(&f, beta, 30).unwrap();
        prop_assert!(soft <= n_ln2 + 1e-9);
        // Z_beta >= Z always; log_z carries the ∨1 convention, so the
        // lower bound only binds on satisfiable formulas
        if !r.z.is_zero() {
            prop_assert!(soft >= r.log_z - 1e-9);
        }
    }
}
