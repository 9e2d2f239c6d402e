//! Normalizability as a spectral condition.
//!
//! Forward recursion from the origin blows up unless E is an eigenvalue;
//! the backward (Miller) recursion turns that into a defect function whose
//! zeros are the eigenvalues.

use rabi_spectrum::analytic::{zhang_level, Branch, Subspectrum};
use rabi_spectrum::eigen::converge_spectrum;
use rabi_spectrum::recurrence::{forward_trail, miller_defect_auto, spectral_roots};
use rabi_spectrum::ModelParams;

fn main() -> rabi_spectrum::Result<()> {
    let params = ModelParams::symmetric(1.0, 0.5, 0.3)?;
    let conv = converge_spectrum(&params, 3, 1e-12)?;
    let levels = conv.spectrum.energies();
    let ground = levels[0];

    println!("log partial norm after m steps, starting at (1, 0):");
    println!("{:>6} {:>14} {:>14}", "m", "E = E0", "E = E0 + 0.1");
    let exact = forward_trail(&params, ground, (1.0, 0.0), 80)?;
    let off = forward_trail(&params, ground + 0.1, (1.0, 0.0), 80)?;
    for m in [5, 10, 20, 40, 80] {
        println!(
            "{m:>6} {:>14.4} {:>14.4}",
            exact.log_partial_norms[m], off.log_partial_norms[m]
        );
    }
    println!("(the exact trail also grows eventually: roundoff feeds the dominant solution)");

    println!("\nMiller defect:");
    let claimed = zhang_level(&params, Subspectrum::I, 0, Branch::Minus);
    for (label, e) in [
        ("ground", ground),
        ("ground + 0.1", ground + 0.1),
        ("AJC n=0 -", claimed),
    ] {
        println!(
            "  {label:<14} E = {e:>12.8}  defect = {:.3e}",
            miller_defect_auto(&params, e)?
        );
    }

    let hi = levels[levels.len() - 1] + 0.2;
    println!(
        "\nroots on [{:.3}, {hi:.3}] vs diagonalization:",
        ground - 0.2
    );
    for r in spectral_roots(&params, ground - 0.2, hi, 200)? {
        let nearest = levels
            .iter()
            .map(|x| (x - r.energy).abs())
            .fold(f64::INFINITY, f64::min);
        println!(
            "  parity {}  {:.12}  |diff| = {nearest:.1e}",
            r.parity, r.energy
        );
    }
    Ok(())
}
