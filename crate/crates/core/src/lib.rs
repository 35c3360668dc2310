//! Random 2-SAT partition function toolkit.
//!
//! Everything revolves around the clause/variable factor graph of a random
//! 2-SAT formula at clause density `d` (each variable appears in `d` clauses
//! on average; the satisfiability threshold sits at `d = 2`):
//!
//! - [`formula`]: formulas, literals, factor-graph adjacency, connected
//!   components, the random ensembles and DIMACS / JSON interchange.
//! - [`count`]: exact satisfying-assignment counts, conditional counts,
//!   exact marginals and the soft partition function, all per component.
//! - [`bp`]: synchronous belief propagation with the `1/2` convention for
//!   vanishing normalizers.
//! - [`gw`]: the five-type Galton-Watson tree mirroring local neighborhoods,
//!   extremal boundary conditions and exact tree dynamic programs.
//! - [`de`]: population-dynamics solvers for the density-evolution operators
//!   in log-likelihood space, plus empirical Wasserstein distances.
//! - [`bethe`]: the Bethe free entropy, its finite-temperature variant, the
//!   first moment bound, and the coupled-ensemble difference check.
//! - [`ucp`]: unit clause propagation, the one-flip relaxation and the
//!   counting inequality checker built on it.
//! - [`cli`]: the subcommand dispatcher behind the `cavity2sat` binary.
//!
//! All randomized operations take an explicit seed and are reproducible
//! across runs and thread counts; see [`rng`] for the stream discipline.
//!
//! Runnable walkthroughs for each capability live under `examples/`.

pub mod bethe;
pub mod bp;
pub mod cli;
pub mod count;
pub mod de;
pub mod formula;
pub mod gw;
pub mod math;
pub mod rng;
pub mod ucp;
