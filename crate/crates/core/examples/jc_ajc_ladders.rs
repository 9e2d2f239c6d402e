//! Closed-form JC and AJC ladders against dense diagonalization.

use rabi_spectrum::analytic::{enumerate_ladders, Subspectrum};
use rabi_spectrum::eigen::eigs_dense;
use rabi_spectrum::model::{build_ajc, build_jc};
use rabi_spectrum::{ModelParams, Truncation};

fn main() -> rabi_spectrum::Result<()> {
    let params = ModelParams::symmetric(1.0, 0.4, 0.3)?;
    let trunc = Truncation::new(12)?;
    let jc = eigs_dense(&build_jc(&params, trunc)?, 1e-14)?.energies();
    let ajc = eigs_dense(&build_ajc(&params, trunc)?, 1e-14)?.energies();

    println!(
        "{:<8} {:>3} {:>6} {:>14} {:>10}",
        "sub", "n", "branch", "energy", "|dense|"
    );
    for l in enumerate_ladders(&params, 5.0, true) {
        let dense = match l.subspectrum {
            Subspectrum::II => &jc,
            Subspectrum::I => &ajc,
        };
        let d = dense
            .iter()
            .map(|x| (x - l.energy).abs())
            .fold(f64::INFINITY, f64::min);
        let branch = l
            .branch
            .map(|b| b.to_string())
            .unwrap_or_else(|| "iso".into());
        println!(
            "{:<8} {:>3} {:>6} {:>14.10} {:>10.1e}",
            format!("{} ({})", l.subspectrum, l.subspectrum.model_name()),
            l.n,
            branch,
            l.energy,
            d
        );
    }
    Ok(())
}
