//! Reproduce the two summary panels as CSV plus gnuplot scripts: the
//! Bethe/first-moment curve over the density range, and the fixed-point
//! CDFs at several densities.
//!
//! Writes into ./figures; render with `gnuplot fig_curve.gp` if desired.
//! Small populations here to stay quick; the CLI exposes the full-size
//! version (`cavity2sat curve`, `cavity2sat cdf`, `cavity2sat plot`).
//!
//! ```bash
//! cargo run --release --example plot_figures
//! ```

use std::fmt::Write as _;
use std::path::Path;

use cavity2sat::bethe::{curve, CurveOptions};
use cavity2sat::cli::plot_scripts;
use cavity2sat::de::{cdf_export, de_run};

fn main() -> std::io::Result<()> {
    let out = Path::new("figures");
    std::fs::create_dir_all(out)?;

    let grid: Vec<f64> = (1..=19).map(|i| i as f64 * 0.1).collect();
    let opts = CurveOptions { population: 20_000, iterations: 24, mc_samples: 100_000 };
    let points = curve(&grid, opts, 1).unwrap();
    let mut curve_csv = String::from("d,bethe,bound,std_error\n");
    for p in &points {
        let _ = writeln!(curve_csv, "{},{},{},{}", p.d, p.bethe, p.bound, p.std_error);
    }
    std::fs::write(out.join("curve.csv"), &curve_csv)?;

    let mut cdf_csv = String::from("d,x,cdf\n");
    for &d in &[1.1, 1.3, 1.5, 1.7, 1.9] {
        let run = de_run(d, 24, 20_000, 2).unwrap();
        for (x, f) in cdf_export(&run.mu, 256) {
            let _ = writeln!(cdf_csv, "{d},{x},{f}");
        }
    }
    std::fs::write(out.join("cdf.csv"), &cdf_csv)?;

    let (left, right) = plot_scripts(&curve_csv, &cdf_csv, Path::new("curve.csv"), Path::new("cdf.csv"))
        .expect("well-formed CSVs");
    std::fs::write(out.join("fig_curve.gp"), left)?;
    std::fs::write(out.join("fig_cdf.gp"), right)?;

    println!("wrote figures/curve.csv, figures/cdf.csv and the two gnuplot scripts");
    for p in points.iter().step_by(3) {
        println!("  d={:.1}: bethe {:.4}, bound {:.4}", p.d, p.bethe, p.bound);
    }
    Ok(())
}
