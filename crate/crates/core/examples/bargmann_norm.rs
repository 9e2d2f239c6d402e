//! A function can blow up along the real axis and still have a finite
//! Bargmann norm.

use rabi_spectrum::bargmann::{bargmann_norm, judd_candidate, real_axis_divergence_demo, PolyExp};

fn main() -> rabi_spectrum::Result<()> {
    for g in [0.25, 3f64.sqrt() / 4.0, 1.0] {
        let n = bargmann_norm(&PolyExp::exp(-g));
        println!(
            "||e^(-{g:.4} z)||^2 = {:.15}  e^(g^2) = {:.15}  ({} terms, tail < {:.1e})",
            n.value,
            (g * g).exp(),
            n.terms,
            n.tail_bound
        );
    }

    let c = judd_candidate(0.5, 3f64.sqrt() / 4.0)?;
    let t1 = real_axis_divergence_demo(&c.phi1, -10.0);
    let t2 = real_axis_divergence_demo(&c.phi2, -10.0);
    println!("\n{:>5} {:>14} {:>14}", "z", "|phi1(z)|", "|phi2(z)|");
    for ((z, a), (_, b)) in t1.rows.iter().zip(&t2.rows).step_by(2) {
        println!("{z:>5} {a:>14.4} {b:>14.4}");
    }
    println!("norms: {:.6} and {:.6}", t1.norm.value, t2.norm.value);
    Ok(())
}
