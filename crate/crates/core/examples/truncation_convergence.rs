//! How the lowest levels settle as the Fock cutoff doubles.

use rabi_spectrum::eigen::converge_spectrum;
use rabi_spectrum::ModelParams;

fn main() -> rabi_spectrum::Result<()> {
    for g in [0.5, 1.0, 1.5] {
        let params = ModelParams::symmetric(1.0, g, 0.3)?;
        let conv = converge_spectrum(&params, 8, 1e-12)?;
        println!("g = {g}");
        for step in &conv.history {
            println!("  N = {:>5}  max change {:.3e}", step.n_max, step.max_delta);
        }
        let e = conv.spectrum.energies();
        println!("  lowest: {:.12} {:.12} {:.12}", e[0], e[1], e[2]);
    }
    Ok(())
}
