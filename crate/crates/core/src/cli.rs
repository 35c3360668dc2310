//! Subcommand dispatcher behind the `cavity2sat` binary.
//!
//! Scalar results go to stdout as JSON with an embedded run manifest;
//! series go to `--out` as CSV files whose leading `#` lines carry the
//! manifest. Wall-clock duration is logged to stderr only, so outputs from
//! identical manifests are byte-identical. Exit codes: 0 success, 2 usage
//! or parse errors, 3 oversized component, 4 density outside the `d < 2`
//! regime.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bethe;
use crate::bp;
use crate::count::{self, CountError};
use crate::de::{self, DeError};
use crate::formula::{self, Assignment, FormulaError};
use crate::gw;
use crate::rng;
use crate::ucp;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPONENT_TOO_LARGE: i32 = 3;
pub const EXIT_OUT_OF_REGIME: i32 = 4;

/// Everything that identifies a run; identical manifests produce
/// byte-identical primary outputs. Durations are deliberately not part of
/// the manifest.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: BTreeMap<String, String>,
    pub rng_algorithm: &'static str,
    pub version: &'static str,
}

impl RunManifest {
    fn new(subcommand: &str, params: impl IntoIterator<Item = (&'static str, String)>) -> Self {
        RunManifest {
            subcommand: subcommand.to_string(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            rng_algorithm: rng::ALGORITHM,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    fn comment_block(&self, prefix: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{prefix} cavity2sat v{} rng={}", self.version, self.rng_algorithm);
        let mut line = format!("{prefix} {}", self.subcommand);
        for (k, v) in &self.params {
            let _ = write!(line, " {k}={v}");
        }
        let _ = writeln!(out, "{line}");
        out
    }
}

#[derive(Parser, Debug)]
#[command(name = "cavity2sat", version, about = "Random 2-SAT partition function toolkit")]
struct Cli {
    /// Worker threads (default: all cores; env CAVITY2SAT_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct DeArgs {
    /// Population size.
    #[arg(long, default_value_t = de::DEFAULT_POPULATION)]
    pop: usize,
    /// Fixed-point iterations.
    #[arg(long, default_value_t = de::DEFAULT_ITERATIONS)]
    iters: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a random formula and write it as DIMACS CNF.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact satisfying-assignment count of a DIMACS file.
    Count {
        #[arg(long)]
        dimacs: PathBuf,
        #[arg(long, default_value_t = count::DEFAULT_CAP)]
        cap: usize,
    },
    /// Exact marginals of a DIMACS file.
    Marginals {
        #[arg(long)]
        dimacs: PathBuf,
        #[arg(long, default_value_t = count::DEFAULT_CAP)]
        cap: usize,
    },
    /// Exact log soft partition function ln Z_β.
    Soft {
        #[arg(long)]
        dimacs: PathBuf,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = count::DEFAULT_CAP)]
        cap: usize,
    },
    /// Belief-propagation marginals of a DIMACS file.
    Bp {
        #[arg(long)]
        dimacs: PathBuf,
        /// Rounds (default 2·ceil(log2 n) + 10).
        #[arg(long)]
        rounds: Option<u32>,
        /// Also dump the final messages as CSV to this path.
        #[arg(long)]
        emit_messages: Option<PathBuf>,
    },
    /// Population dynamics for the density-evolution fixed point.
    De {
        #[arg(long)]
        d: f64,
        #[command(flatten)]
        opts: DeArgs,
        /// Iterate the boundary operator instead of the plain one.
        #[arg(long)]
        plus: bool,
        /// Dump the final η population as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical CDFs of the μ-space fixed point over a density grid.
    Cdf {
        /// Density grid lo:hi:step.
        #[arg(long)]
        grid: String,
        #[command(flatten)]
        opts: DeArgs,
        #[arg(long, default_value_t = 512)]
        resolution: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// The Bethe free entropy at one density (finite β if given).
    Bethe {
        #[arg(long)]
        d: f64,
        #[arg(long)]
        beta: Option<f64>,
        #[command(flatten)]
        opts: DeArgs,
        /// Monte-Carlo samples.
        #[arg(long, default_value_t = 1_000_000)]
        mc: u64,
        /// Diagnostic: truncate both logarithms at ln(ε).
        #[arg(long, conflicts_with = "beta")]
        lambda_eps: Option<f64>,
    },
    /// Bethe value and first moment bound over a density grid, as CSV.
    Curve {
        /// Density grid lo:hi:step.
        #[arg(long)]
        grid: String,
        #[command(flatten)]
        opts: DeArgs,
        #[arg(long, default_value_t = 1_000_000)]
        mc: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Galton-Watson tree trials: extremal and unconditional root marginals.
    Tree {
        #[arg(long)]
        d: f64,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unit clause propagation from an imposed partial assignment.
    Ucp {
        #[arg(long)]
        dimacs: PathBuf,
        /// Comma-separated impositions, e.g. "1=-1,3=+1" (1-based).
        #[arg(long)]
        impose: String,
        #[arg(long, default_value_t = count::DEFAULT_CAP)]
        cap: usize,
    },
    /// Coupled-ensemble difference check against the Bethe value.
    Ass {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = count::DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Gnuplot scripts for the curve and CDF panels.
    Plot {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        cdf: PathBuf,
        /// Directory for fig_curve.gp / fig_cdf.gp.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    ComponentTooLarge(String),
    OutOfRegime(String),
    Io(std::io::Error),
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::ComponentTooLarge { .. } => CliError::ComponentTooLarge(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<DeError> for CliError {
    fn from(e: DeError) -> Self {
        CliError::OutOfRegime(e.to_string())
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parse argv, execute, and return the process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var("CAVITY2SAT_THREADS").ok().and_then(|s| s.parse().ok())
    });
    let started = Instant::now();
    let result = match threads {
        Some(k) if k > 0 => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build();
            match pool {
                Ok(pool) => pool.install(|| run(cli.command)),
                Err(e) => Err(CliError::Usage(e.to_string())),
            }
        }
        _ => run(cli.command),
    };
    match result {
        Ok(()) => {
            eprintln!("done in {:.3}s", started.elapsed().as_secs_f64());
            EXIT_OK
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::ComponentTooLarge(msg)) => {
            eprintln!("error: {msg}");
            EXIT_COMPONENT_TOO_LARGE
        }
        Err(CliError::OutOfRegime(msg)) => {
            eprintln!("error: {msg}");
            EXIT_OUT_OF_REGIME
        }
        Err(CliError::Io(e)) => {
            eprintln!("io error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit_json<T: Serialize>(manifest: &RunManifest, payload: &T) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct Output<'a, T> {
        #[serde(flatten)]
        payload: &'a T,
        manifest: &'a RunManifest,
    }
    let text = serde_json::to_string_pretty(&Output { payload, manifest })
        .map_err(|e| CliError::Usage(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(text.as_bytes())?;
    Ok(())
}

fn parse_grid(arg: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = arg.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!("grid must be lo:hi:step, got '{arg}'")));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse().map_err(|_| CliError::Usage(format!("bad grid number '{p}'"))))
        .collect::<Result<_, _>>()?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if step <= 0.0 || hi < lo {
        return Err(CliError::Usage("grid needs hi >= lo and step > 0".into()));
    }
    let count = ((hi - lo) / step).round() as usize + 1;
    Ok((0..count).map(|i| lo + i as f64 * step).filter(|&d| d <= hi + 1e-9).collect())
}

fn parse_impose(arg: &str) -> Result<Assignment, CliError> {
    let mut chi = Assignment::new();
    for part in arg.split(',').filter(|p| !p.trim().is_empty()) {
        let (var, val) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("bad imposition '{part}', want var=±1")))?;
        let var: usize = var
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad variable '{var}'")))?;
        if var == 0 {
            return Err(CliError::Usage("variables are 1-based".into()));
        }
        let val: i32 = val
            .trim()
            .trim_start_matches('+')
            .parse()
            .map_err(|_| CliError::Usage(format!("bad value '{val}'")))?;
        if val != 1 && val != -1 {
            return Err(CliError::Usage(format!("value must be +1 or -1, got {val}")));
        }
        chi.set(var - 1, val as i8);
    }
    if chi.is_empty() {
        return Err(CliError::Usage("impose list is empty".into()));
    }
    Ok(chi)
}

fn load_dimacs(path: &Path) -> Result<formula::Formula, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(formula::parse_dimacs(&text)?)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gen { n, d, seed, out } => {
            let manifest = RunManifest::new(
                "gen",
                [("n", n.to_string()), ("d", d.to_string()), ("seed", seed.to_string())],
            );
            let f = formula::sample_formula(n, d, seed)?;
            let mut text = manifest.comment_block("c");
            text.push_str(&formula::emit_dimacs(&f));
            match out {
                Some(path) => write_text(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Count { dimacs, cap } => {
            let manifest = RunManifest::new(
                "count",
                [("dimacs", dimacs.display().to_string()), ("cap", cap.to_string())],
            );
            let f = load_dimacs(&dimacs)?;
            let r = count::count_exact(&f, cap)?;
            #[derive(Serialize)]
            struct Payload {
                z: String,
                log_z: f64,
            }
            emit_json(&manifest, &Payload { z: r.z.to_string(), log_z: r.log_z })
        }
        Command::Marginals { dimacs, cap } => {
            let manifest = RunManifest::new(
                "marginals",
                [("dimacs", dimacs.display().to_string()), ("cap", cap.to_string())],
            );
            let f = load_dimacs(&dimacs)?;
            let m = count::marginals_exact(&f, cap)?;
            #[derive(Serialize)]
            struct Payload {
                marginals: Vec<f64>,
            }
            emit_json(&manifest, &Payload { marginals: m.p })
        }
        Command::Soft { dimacs, beta, cap } => {
            if beta < 0.0 {
                return Err(CliError::Usage("beta must be nonnegative".into()));
            }
            let manifest = RunManifest::new(
                "soft",
                [
                    ("dimacs", dimacs.display().to_string()),
                    ("beta", beta.to_string()),
                    ("cap", cap.to_string()),
                ],
            );
            let f = load_dimacs(&dimacs)?;
            let log_z_beta = count::soft_partition(&f, beta, cap)?;
            #[derive(Serialize)]
            struct Payload {
                log_z_beta: f64,
                beta: f64,
            }
            emit_json(&manifest, &Payload { log_z_beta, beta })
        }
        Command::Bp { dimacs, rounds, emit_messages } => {
            let f = load_dimacs(&dimacs)?;
            let rounds = rounds.unwrap_or_else(|| bp::default_rounds(f.num_vars()));
            let manifest = RunManifest::new(
                "bp",
                [("dimacs", dimacs.display().to_string()), ("rounds", rounds.to_string())],
            );
            let (state, marg) = bp::bp_run(&f, rounds);
            if let Some(path) = emit_messages {
                let mut csv = manifest.comment_block("#");
                csv.push_str("edge,direction,value\n");
                for (e, &v) in state.clause_to_var.iter().enumerate() {
                    let _ = writeln!(csv, "{e},clause_to_var,{v}");
                }
                for (e, &v) in state.var_to_clause.iter().enumerate() {
                    let _ = writeln!(csv, "{e},var_to_clause,{v}");
                }
                write_text(&path, &csv)?;
            }
            #[derive(Serialize)]
            struct Payload {
                rounds: u32,
                marginals: Vec<f64>,
            }
            emit_json(&manifest, &Payload { rounds, marginals: marg.p })
        }
        Command::De { d, opts, plus, out } => {
            let mut params = vec![
                ("d", d.to_string()),
                ("pop", opts.pop.to_string()),
                ("iters", opts.iters.to_string()),
                ("seed", opts.seed.to_string()),
            ];
            if plus {
                params.push(("plus", String::new()));
            }
            let manifest = RunManifest::new("de", params);
            let run = if plus {
                de::de_run_plus(d, opts.iters, opts.pop, opts.seed)?
            } else {
                de::de_run(d, opts.iters, opts.pop, opts.seed)?
            };
            if let Some(path) = out {
                let mut csv = manifest.comment_block("#");
                csv.push_str("eta\n");
                for &x in run.eta.samples() {
                    let _ = writeln!(csv, "{x}");
                }
                write_text(&path, &csv)?;
            }
            let (eta_mean, eta_std) = run.eta.moments();
            let (mu_mean, mu_std) = run.mu.moments();
            #[derive(Serialize)]
            struct Payload {
                eta_mean: f64,
                eta_std: f64,
                mu_mean: f64,
                mu_std: f64,
                w2_trace: Vec<f64>,
            }
            emit_json(&manifest, &Payload { eta_mean, eta_std, mu_mean, mu_std, w2_trace: run.w2_trace })
        }
        Command::Cdf { grid, opts, resolution, out } => {
            let ds = parse_grid(&grid)?;
            let manifest = RunManifest::new(
                "cdf",
                [
                    ("grid", grid.clone()),
                    ("pop", opts.pop.to_string()),
                    ("iters", opts.iters.to_string()),
                    ("seed", opts.seed.to_string()),
                    ("resolution", resolution.to_string()),
                ],
            );
            let mut csv = manifest.comment_block("#");
            csv.push_str("d,x,cdf\n");
            for (i, &d) in ds.iter().enumerate() {
                let sub_seed = rng::derive(opts.seed, &[11, i as u64]);
                let run = de::de_run(d, opts.iters, opts.pop, sub_seed)?;
                for (x, f) in de::cdf_export(&run.mu, resolution) {
                    let _ = writeln!(csv, "{d},{x},{f}");
                }
            }
            write_text(&out, &csv)
        }
        Command::Bethe { d, beta, opts, mc, lambda_eps } => {
            let mut params = vec![
                ("d", d.to_string()),
                ("pop", opts.pop.to_string()),
                ("iters", opts.iters.to_string()),
                ("mc", mc.to_string()),
                ("seed", opts.seed.to_string()),
            ];
            if let Some(b) = beta {
                params.push(("beta", b.to_string()));
            }
            if let Some(e) = lambda_eps {
                params.push(("lambda_eps", e.to_string()));
            }
            let manifest = RunManifest::new("bethe", params);
            let run = de::de_run(d, opts.iters, opts.pop, opts.seed)?;
            let est = match (beta, lambda_eps) {
                (Some(b), _) => bethe::soft_bethe(&run.eta, d, b, mc, opts.seed),
                (None, Some(e)) => bethe::bethe_free_entropy_truncated(&run.eta, d, e, mc, opts.seed)?,
                (None, None) => bethe::bethe_free_entropy(&run.eta, d, mc, opts.seed)?,
            };
            emit_json(&manifest, &est)
        }
        Command::Curve { grid, opts, mc, out } => {
            let ds = parse_grid(&grid)?;
            let manifest = RunManifest::new(
                "curve",
                [
                    ("grid", grid.clone()),
                    ("pop", opts.pop.to_string()),
                    ("iters", opts.iters.to_string()),
                    ("mc", mc.to_string()),
                    ("seed", opts.seed.to_string()),
                ],
            );
            let points = bethe::curve(
                &ds,
                bethe::CurveOptions { population: opts.pop, iterations: opts.iters, mc_samples: mc },
                opts.seed,
            )?;
            let mut csv = manifest.comment_block("#");
            csv.push_str("d,bethe,bound,std_error\n");
            for p in &points {
                let _ = writeln!(csv, "{},{},{},{}", p.d, p.bethe, p.bound, p.std_error);
            }
            write_text(&out, &csv)
        }
        Command::Tree { d, depth, trials, seed, out } => {
            if !(0.0..2.0).contains(&d) {
                return Err(CliError::OutOfRegime(DeError::OutOfRegime(d).to_string()));
            }
            let manifest = RunManifest::new(
                "tree",
                [
                    ("d", d.to_string()),
                    ("depth", depth.to_string()),
                    ("trials", trials.to_string()),
                    ("seed", seed.to_string()),
                ],
            );
            let mut csv = manifest.comment_block("#");
            csv.push_str("trial,depth,marg_unconditional,marg_sigma_plus,marg_sigma_minus,eta_root\n");
            for trial in 0..trials {
                let t = gw::sample_tree(d, depth, rng::derive(seed, &[13, trial]))
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let unconditional = gw::unconditional_root_marginal(&t);
                let (sigma_plus, b_plus) = gw::extremal_boundary(&t, 1);
                let (_, b_minus) = gw::extremal_boundary(&t, -1);
                let plus = gw::conditional_root_marginal(&t, &b_plus)
                    .expect("extremal boundary is feasible");
                let minus = gw::conditional_root_marginal(&t, &b_minus)
                    .expect("extremal boundary is feasible");
                let eta_root = match gw::ll_plus_uppass(&t, &sigma_plus)[0] {
                    gw::Eta::Finite(v) => v.to_string(),
                    gw::Eta::PosInf => "inf".to_string(),
                };
                let _ = writeln!(csv, "{trial},{depth},{unconditional},{plus},{minus},{eta_root}");
            }
            match out {
                Some(path) => write_text(&path, &csv),
                None => {
                    print!("{csv}");
                    Ok(())
                }
            }
        }
        Command::Ucp { dimacs, impose, cap } => {
            let manifest = RunManifest::new(
                "ucp",
                [("dimacs", dimacs.display().to_string()), ("impose", impose.clone()), ("cap", cap.to_string())],
            );
            let f = load_dimacs(&dimacs)?;
            let chi = parse_impose(&impose)?;
            let r = ucp::unit_clause_propagate(&f, &chi);
            let a = ucp::a_chi(&f, &chi);
            #[derive(Serialize)]
            struct Payload {
                i_chi: usize,
                a_chi: usize,
                contradiction: bool,
                closure: Vec<i64>,
            }
            let closure = r
                .imposed
                .iter()
                .map(|(var, s)| (var as i64 + 1) * s as i64)
                .collect();
            emit_json(&manifest, &Payload { i_chi: r.i_chi, a_chi: a, contradiction: r.contradiction, closure })
        }
        Command::Ass { n, d, trials, cap, seed } => {
            let manifest = RunManifest::new(
                "ass",
                [
                    ("n", n.to_string()),
                    ("d", d.to_string()),
                    ("trials", trials.to_string()),
                    ("cap", cap.to_string()),
                    ("seed", seed.to_string()),
                ],
            );
            let r = bethe::ass_difference(n, d, trials, cap, seed);
            emit_json(&manifest, &r)
        }
        Command::Plot { curve, cdf, out_dir } => {
            let curve_text = std::fs::read_to_string(&curve)?;
            let cdf_text = std::fs::read_to_string(&cdf)?;
            let (left, right) = plot_scripts(&curve_text, &cdf_text, &curve, &cdf)
                .map_err(CliError::Usage)?;
            std::fs::create_dir_all(&out_dir)?;
            write_text(&out_dir.join("fig_curve.gp"), &left)?;
            write_text(&out_dir.join("fig_cdf.gp"), &right)?;
            Ok(())
        }
    }
}

fn csv_columns(text: &str) -> Option<Vec<String>> {
    text.lines()
        .find(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split(',').map(|c| c.trim().to_string()).collect())
}

/// Build the two gnuplot scripts from curve and CDF CSV text. Pure text
/// transformation; no rendering happens here.
pub fn plot_scripts(
    curve_csv: &str,
    cdf_csv: &str,
    curve_path: &Path,
    cdf_path: &Path,
) -> Result<(String, String), String> {
    let curve_cols = csv_columns(curve_csv).ok_or("curve CSV is empty")?;
    if curve_cols != ["d", "bethe", "bound", "std_error"] {
        return Err(format!("curve CSV columns must be d,bethe,bound,std_error, got {curve_cols:?}"));
    }
    let cdf_cols = csv_columns(cdf_csv).ok_or("cdf CSV is empty")?;
    if cdf_cols != ["d", "x", "cdf"] {
        return Err(format!("cdf CSV columns must be d,x,cdf, got {cdf_cols:?}"));
    }
    let mut ds: Vec<String> = Vec::new();
    for line in cdf_csv.lines().skip_while(|l| l.trim_start().starts_with('#')).skip(1) {
        if let Some(d) = line.split(',').next() {
            let d = d.trim();
            if !d.is_empty() && !ds.iter().any(|x| x == d) {
                ds.push(d.to_string());
            }
        }
    }
    if ds.is_empty() {
        return Err("cdf CSV has no data rows".into());
    }

    let mut left = String::new();
    let _ = writeln!(left, "set datafile separator comma");
    let _ = writeln!(left, "set key autotitle columnhead");
    let _ = writeln!(left, "set xlabel 'd'");
    let _ = writeln!(left, "set ylabel 'nats per variable'");
    let _ = writeln!(left, "set key bottom left");
    let _ = writeln!(
        left,
        "plot '{}' using 1:2 with lines lc rgb 'red' title 'Bethe free entropy', \\",
        curve_path.display()
    );
    let _ = writeln!(
        left,
        "     '{}' using 1:3 with lines dashtype 3 lc rgb 'blue' title 'first moment bound'",
        curve_path.display()
    );

    let mut right = String::new();
    let _ = writeln!(right, "set datafile separator comma");
    let _ = writeln!(right, "set xlabel 'mu'");
    let _ = writeln!(right, "set ylabel 'CDF'");
    let _ = writeln!(right, "set key top left");
    let _ = writeln!(right, "set xrange [0:1]");
    let series: Vec<String> = ds
        .iter()
        .map(|d| {
            format!(
                "'{}' using 2:($1 == {d} ? $3 : 1/0) with lines title 'd = {d}'",
                cdf_path.display()
            )
        })
        .collect();
    let _ = writeln!(right, "plot {}", series.join(", \\\n     "));
    Ok((left, right))
}
