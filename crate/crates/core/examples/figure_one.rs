//! Writes the exact-vs-ladder comparison (CSV + four-panel SVG) to a
//! directory, same as `rabi compare`.
//!
//! cargo run --release --example figure_one -- [out_dir]

use std::path::PathBuf;

use rabi_spectrum::cli::{compare_lambda, comparison_figure, SweepConfig};
use rabi_spectrum::io::{spectrum_csv, summary_csv, write_atomic, SpectrumRow};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "figure_one".into()),
    );
    std::fs::create_dir_all(&dir)?;
    let cfg = SweepConfig {
        lambdas: vec![0.3, 0.5],
        ..SweepConfig::default()
    };

    let mut all = Vec::new();
    for &lambda in &cfg.lambdas {
        let c = compare_lambda(lambda, &cfg).map_err(|(g, e)| format!("g = {g}: {e}"))?;
        let rows: Vec<SpectrumRow> = c.truth.iter().flat_map(|p| p.rows.clone()).collect();
        write_atomic(
            &dir.join(format!("spectrum_{lambda}.csv")),
            &spectrum_csv(&rows),
        )?;
        write_atomic(
            &dir.join(format!("summary_{lambda}.csv")),
            &summary_csv(&c.summary),
        )?;
        let worst = c
            .summary
            .iter()
            .filter(|(g, _)| *g >= 0.3)
            .map(|s| s.1)
            .fold(f64::INFINITY, f64::min);
        println!("lambda {lambda}: smallest summary distance for g >= 0.3 is {worst:.4}");
        all.push(c);
    }
    write_atomic(&dir.join("figure.svg"), &comparison_figure(&all))?;
    println!("wrote {}", dir.display());
    Ok(())
}
