//! The exact solution at λ = 1/2, g = √3/4 and where it sits in the spectrum.
//!
//! cargo run --example juddian_point

use rabi_spectrum::bargmann::{default_samples, judd_candidate, judd_cross_check, ode_residual};
use rabi_spectrum::eigen::converge_spectrum;
use rabi_spectrum::Parity;

fn main() -> rabi_spectrum::Result<()> {
    let (lambda, g) = (0.5, 3f64.sqrt() / 4.0);
    let cand = judd_candidate(lambda, g)?;
    let e = cand.point.energy;
    println!("phi1 = e^(-{g:.6} z) * {:?}", cand.phi1.poly);
    println!("phi2 = e^(-{g:.6} z) * {:?}", cand.phi2.poly);
    println!("E = 1 - g^2 = {e}");

    let r = ode_residual(
        &cand.phi1,
        &cand.phi2,
        &cand.point.params,
        e,
        &default_samples(),
    );
    println!("largest residual coefficient: {:e}", r.max_coeff);

    let conv = converge_spectrum(&cand.point.params, 6, 1e-12)?;
    for p in Parity::BOTH {
        let levels = conv.spectrum.sector(p);
        let shown: Vec<String> = levels.iter().map(|x| format!("{x:.10}")).collect();
        println!("parity {p}: {}", shown.join("  "));
    }

    let rep = judd_cross_check(lambda, g)?;
    println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    Ok(())
}
