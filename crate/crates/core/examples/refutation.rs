//! Does the exact level 0.8125 belong to either JC/AJC ladder?
//!
//! Inverts every ladder branch at that energy and lists the real roots n.

use rabi_spectrum::analytic::{branch_scan, enumerate_zhang, nearest_zhang};
use rabi_spectrum::ModelParams;

fn main() -> rabi_spectrum::Result<()> {
    let params = ModelParams::symmetric(1.0, 3f64.sqrt() / 4.0, 0.5)?;
    let e = 0.8125;

    println!(
        "{:<4} {:<6} {:>12} {:>10}",
        "sub", "branch", "n", "|n - int|"
    );
    for root in branch_scan(&params, e) {
        println!(
            "{:<4} {:<6} {:>12.6} {:>10.6}{}",
            root.subspectrum.to_string(),
            root.branch.to_string(),
            root.n,
            root.integer_distance(),
            if root.admissible() {
                ""
            } else {
                "  (negative)"
            }
        );
    }

    let (level, d) = nearest_zhang(&params, e);
    println!(
        "nearest claimed level: {} n={} {} at {:.10}, distance {:.10}",
        level.subspectrum,
        level.n,
        level.branch.map(|b| b.to_string()).unwrap_or_default(),
        level.energy,
        d
    );

    println!("claimed levels below 2:");
    for l in enumerate_zhang(&params, 2.0) {
        let b = l.branch.map(|b| b.to_string()).unwrap_or_default();
        println!(
            "  {:<3} n={:<2} {b}  {:.6}",
            l.subspectrum.to_string(),
            l.n,
            l.energy
        );
    }
    Ok(())
}
