//! Closed-form Jaynes-Cummings and anti-Jaynes-Cummings ladders.
//!
//! Subspectrum I is the AJC ladder, built from the 2×2 blocks
//! `{|n+1,↑⟩, |n,↓⟩}`, and subspectrum II is the JC ladder, built from
//! `{|n+1,↓⟩, |n,↑⟩}`:
//!
//! ```text
//! E(I,  n, ±) = ω(n + ½) ± √((ω/2 + λ)² + (n+1) g²)
//! E(II, n, ±) = ω(n + ½) ± √((ω/2 − λ)² + (n+1) g²)
//! ```
//!
//! Each model also has one uncoupled level: `−λ` for JC (`|0,↓⟩`) and `+λ`
//! for AJC (`|0,↑⟩`). These are left out of [`enumerate_zhang`] and only
//! added by [`enumerate_ladders`] with `include_isolated = true`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::model::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subspectrum {
    /// Anti-Jaynes-Cummings ladder.
    I,
    /// Jaynes-Cummings ladder.
    II,
}

impl Subspectrum {
    pub const BOTH: [Subspectrum; 2] = [Subspectrum::I, Subspectrum::II];

    fn detuning(self, params: &ModelParams) -> f64 {
        match self {
            Subspectrum::I => 0.5 * params.omega + params.lambda,
            Subspectrum::II => 0.5 * params.omega - params.lambda,
        }
    }

    pub fn model_name(self) -> &'static str {
        match self {
            Subspectrum::I => "AJC",
            Subspectrum::II => "JC",
        }
    }
}

impl fmt::Display for Subspectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subspectrum::I => f.write_str("I"),
            Subspectrum::II => f.write_str("II"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Plus => f.write_str("+"),
            Branch::Minus => f.write_str("-"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticLevel {
    pub subspectrum: Subspectrum,
    pub n: usize,
    /// `None` marks the uncoupled level of the ladder.
    pub branch: Option<Branch>,
    pub energy: f64,
}

fn radicand(params: &ModelParams, sub: Subspectrum, n: f64) -> f64 {
    let d = sub.detuning(params);
    d * d + (n + 1.0) * params.g * params.g
}

/// Ladder energy for a real-valued quantum number.
pub fn ladder_energy(params: &ModelParams, sub: Subspectrum, n: f64, branch: Branch) -> f64 {
    params.omega * (n + 0.5) + branch.sign() * radicand(params, sub, n).sqrt()
}

pub fn zhang_level(params: &ModelParams, sub: Subspectrum, n: usize, branch: Branch) -> f64 {
    ladder_energy(params, sub, n as f64, branch)
}

/// The uncoupled level of a ladder: `−λ` for JC, `+λ` for AJC.
pub fn isolated_level(params: &ModelParams, sub: Subspectrum) -> AnalyticLevel {
    AnalyticLevel {
        subspectrum: sub,
        n: 0,
        branch: None,
        energy: match sub {
            Subspectrum::I => params.lambda,
            Subspectrum::II => -params.lambda,
        },
    }
}

fn level_order(a: &AnalyticLevel, b: &AnalyticLevel) -> std::cmp::Ordering {
    a.energy
        .total_cmp(&b.energy)
        .then(a.subspectrum.cmp(&b.subspectrum))
        .then(a.n.cmp(&b.n))
        .then(a.branch.cmp(&b.branch))
}

/// Every ladder level with energy `<= e_max`, sorted.
pub fn enumerate_ladders(
    params: &ModelParams,
    e_max: f64,
    include_isolated: bool,
) -> Vec<AnalyticLevel> {
    let mut out = Vec::new();
    for sub in Subspectrum::BOTH {
        for n in 0usize.. {
            let lower = zhang_level(params, sub, n, Branch::Minus);
            let rising = zhang_level(params, sub, n + 1, Branch::Minus) > lower;
            if lower > e_max && rising {
                break;
            }
            for branch in Branch::BOTH {
                let energy = zhang_level(params, sub, n, branch);
                if energy <= e_max {
                    out.push(AnalyticLevel {
                        subspectrum: sub,
                        n,
                        branch: Some(branch),
                        energy,
                    });
                }
            }
        }
        if include_isolated {
            let iso = isolated_level(params, sub);
            if iso.energy <= e_max {
                out.push(iso);
            }
        }
    }
    out.sort_by(level_order);
    out
}

/// Both claimed subspectra up to `e_max`, without the uncoupled levels.
pub fn enumerate_zhang(params: &ModelParams, e_max: f64) -> Vec<AnalyticLevel> {
    enumerate_ladders(params, e_max, false)
}

/// A real quantum number solving `ladder_energy(sub, n, branch) = E`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchRoot {
    pub subspectrum: Subspectrum,
    pub branch: Branch,
    pub n: f64,
}

impl BranchRoot {
    pub fn admissible(&self) -> bool {
        self.n >= 0.0
    }

    /// Distance from `n` to the nearest nonnegative integer.
    pub fn integer_distance(&self) -> f64 {
        let k = self.n.round().max(0.0);
        (self.n - k).abs()
    }
}

/// All real roots `n` (of either sign) of the ladder equation that are
/// consistent with the chosen branch.
///
/// Squaring `E − ω(n+½) = ±√(D² + (n+1)g²)` gives
/// `ω²n² − (2ωu + g²) n + (u² − D² − g²) = 0` with `u = E − ω/2`; a root is
/// kept when the sign of `E − ω(n+½)` matches the branch.
pub fn real_roots(params: &ModelParams, sub: Subspectrum, branch: Branch, e: f64) -> Vec<f64> {
    let w = params.omega;
    let g2 = params.g * params.g;
    let d = sub.detuning(params);
    let u = e - 0.5 * w;
    let a = w * w;
    let b = -(2.0 * w * u + g2);
    let c = u * u - d * d - g2;
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = Vec::with_capacity(2);
    if q != 0.0 {
        roots.push(q / a);
        roots.push(c / q);
    } else {
        roots.push(0.0);
    }
    let scale = e.abs() + w + d.abs() + g2;
    let mut kept: Vec<f64> = roots
        .into_iter()
        .filter(|&n| {
            let lhs = e - w * (n + 0.5);
            let rad = radicand(params, sub, n);
            if rad < 0.0 {
                return false;
            }
            let tol = 1e-12 * scale;
            lhs * branch.sign() >= -tol && (lhs - branch.sign() * rad.sqrt()).abs() <= 1e-9 * scale
        })
        .collect();
    kept.sort_by(f64::total_cmp);
    kept.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    kept
}

/// Solves `zhang_level(sub, n, branch) = E` for real `n >= 0`.
///
/// The upper branch is strictly increasing in `n` and has at most one
/// root. The lower branch is convex and may have two; the larger one, on the
/// rising part, is returned.
pub fn invert_level(params: &ModelParams, sub: Subspectrum, branch: Branch, e: f64) -> Option<f64> {
    real_roots(params, sub, branch, e)
        .into_iter()
        .filter(|&n| n >= -1e-12)
        .map(|n| n.max(0.0))
        .next_back()
}

/// Every real root across both subspectra and branches.
pub fn branch_scan(params: &ModelParams, e: f64) -> Vec<BranchRoot> {
    let mut out = Vec::new();
    for sub in Subspectrum::BOTH {
        for branch in Branch::BOTH {
            for n in real_roots(params, sub, branch, e) {
                out.push(BranchRoot {
                    subspectrum: sub,
                    branch,
                    n,
                });
            }
        }
    }
    out
}

/// Nearest claimed level to `e` (uncoupled levels excluded).
pub fn nearest_zhang(params: &ModelParams, e: f64) -> (AnalyticLevel, f64) {
    let mut window = 2.0 * params.omega;
    loop {
        let levels = enumerate_zhang(params, e + window);
        if let Some(best) = levels
            .into_iter()
            .min_by(|a, b| (a.energy - e).abs().total_cmp(&(b.energy - e).abs()))
        {
            return (best, (best.energy - e).abs());
        }
        window *= 2.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(g: f64, lambda: f64) -> ModelParams {
        ModelParams::symmetric(1.0, g, lambda).unwrap()
    }

    #[test]
    fn uncoupled_jc_pair() {
        let p = params(0.0, 0.3);
        assert!((zhang_level(&p, Subspectrum::II, 0, Branch::Plus) - 0.7).abs() < 1e-15);
        assert!((zhang_level(&p, Subspectrum::II, 0, Branch::Minus) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn jc_block_by_hand() {
        // [[1 − λ, g], [g, λ]] with λ = 0.3, g = 0.2
        let p = params(0.2, 0.3);
        let (a, d, c): (f64, f64, f64) = (0.7, 0.3, 0.2);
        let mean = 0.5 * (a + d);
        let half = (0.25 * (a - d) * (a - d) + c * c).sqrt();
        assert!((zhang_level(&p, Subspectrum::II, 0, Branch::Plus) - (mean + half)).abs() < 1e-15);
        assert!((zhang_level(&p, Subspectrum::II, 0, Branch::Minus) - (mean - half)).abs() < 1e-15);
        assert!((half - 0.282_842_712_474_619).abs() < 1e-14);
    }

    #[test]
    fn ajc_at_showcase_point() {
        let p = params(0.43301, 0.5);
        let r = (1.0 + 0.43301f64 * 0.43301).sqrt();
        // √1.1875 = 1.089725
        assert!((r - 1.089_725).abs() < 1e-5);
        assert!((zhang_level(&p, Subspectrum::I, 0, Branch::Plus) - 1.589_725).abs() < 1e-5);
        assert!((zhang_level(&p, Subspectrum::I, 0, Branch::Minus) + 0.589_725).abs() < 1e-5);
    }

    #[test]
    fn enumerate_uncoupled() {
        let p = params(0.0, 0.3);
        let e: Vec<f64> = enumerate_zhang(&p, 2.1).iter().map(|l| l.energy).collect();
        // I: n ± 0.3 … → {−0.3, 1.3}, {0.7, 2.3}, {1.7, …}; II: {0.3, 0.7}, {1.3, 1.7}, {2.3, …}
        let expect = [-0.3, 0.3, 0.7, 0.7, 1.3, 1.3, 1.7, 1.7];
        assert_eq!(e.len(), expect.len(), "{e:?}");
        for (a, b) in e.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn enumerate_empty_below_bottom() {
        let p = params(0.4, 0.3);
        assert!(enumerate_zhang(&p, -10.0).is_empty());
    }

    #[test]
    fn enumerate_includes_isolated_on_request() {
        let p = params(0.4, 0.3);
        let with = enumerate_ladders(&p, 3.0, true);
        let without = enumerate_ladders(&p, 3.0, false);
        assert_eq!(with.len(), without.len() + 2);
        assert!(with.iter().any(|l| l.branch.is_none() && l.energy == -0.3));
        assert!(with.iter().any(|l| l.branch.is_none() && l.energy == 0.3));
    }

    #[test]
    fn enumerate_strong_coupling_keeps_dipping_branch() {
        // lower branch decreases at first when g is large
        let p = params(3.0, 0.2);
        let levels = enumerate_zhang(&p, -1.5);
        let direct = (0..200)
            .flat_map(|n| Subspectrum::BOTH.map(|s| zhang_level(&p, s, n, Branch::Minus)))
            .filter(|&e| e <= -1.5)
            .count();
        assert!(direct > 0);
        assert_eq!(levels.len(), direct);
    }

    #[test]
    fn inversion_round_trip() {
        let p = params(0.43, 0.27);
        let e = zhang_level(&p, Subspectrum::I, 3, Branch::Plus);
        let n = invert_level(&p, Subspectrum::I, Branch::Plus, e).unwrap();
        assert!((n - 3.0).abs() < 1e-12);
    }

    #[test]
    fn inversion_below_branch_minimum() {
        let p = params(0.43, 0.27);
        assert_eq!(invert_level(&p, Subspectrum::I, Branch::Plus, 0.0), None);
        assert_eq!(invert_level(&p, Subspectrum::II, Branch::Minus, -5.0), None);
    }

    #[test]
    fn showcase_energy_is_not_on_a_ladder() {
        let p = params(3f64.sqrt() / 4.0, 0.5);
        let roots = branch_scan(&p, 0.8125);
        assert!(!roots.is_empty());
        for r in roots.iter().filter(|r| r.admissible()) {
            assert!(r.integer_distance() >= 0.01, "{r:?}");
        }
        let (_, d) = nearest_zhang(&p, 0.8125);
        assert!(d > 0.01);
    }

    #[test]
    fn nearest_on_exact_level_is_zero() {
        let p = params(0.31, 0.2);
        let e = zhang_level(&p, Subspectrum::II, 4, Branch::Minus);
        let (lvl, d) = nearest_zhang(&p, e);
        assert_eq!(d, 0.0);
        assert_eq!(lvl.energy, e);
    }

    proptest! {
        #[test]
        fn round_trip_on_integers(g in 0.0f64..1.0, lambda in -1.0f64..1.0, n in 0usize..40) {
            let p = params(g, lambda);
            for sub in Subspectrum::BOTH {
                let e = zhang_level(&p, sub, n, Branch::Plus);
                let back = invert_level(&p, sub, Branch::Plus, e).unwrap();
                prop_assert!((back - n as f64).abs() < 1e-12 * (1.0 + n as f64));
                let e = zhang_level(&p, sub, n, Branch::Minus);
                let roots = real_roots(&p, sub, Branch::Minus, e);
                prop_assert!(roots.iter().any(|r| (r - n as f64).abs() < 1e-9 * (1.0 + n as f64)));
            }
        }

        #[test]
        fn upper_branch_increasing(g in 0.0f64..2.0, lambda in -1.0f64..1.0, n in 0usize..100) {
            let p = params(g, lambda);
            for sub in Subspectrum::BOTH {
                prop_assert!(zhang_level(&p, sub, n + 1, Branch::Plus) > zhang_level(&p, sub, n, Branch::Plus));
            }
        }
    }
}
