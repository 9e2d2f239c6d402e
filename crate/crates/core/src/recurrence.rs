//! Fock-coefficient recurrences of the Rabi eigenproblem and the
//! normalizability condition.
//!
//! Writing `ψ = Σ_m α_m |m,↓⟩ + β_m |m,↑⟩` and projecting `Hψ = Eψ` (ε = 0)
//! onto `⟨m,↓|` and `⟨m,↑|` gives
//!
//! ```text
//! (ωm − λ − E) α_m + g√m β_{m−1} + g√(m+1) β_{m+1} = 0
//! (ωm + λ − E) β_m + g√m α_{m−1} + g√(m+1) α_{m+1} = 0
//! ```
//!
//! Solved upward these fix every coefficient from `(α₀, β₀)` and `E`. The
//! two equations couple `(α₀, β₁, α₂, …)` and `(β₀, α₁, β₂, …)` separately:
//! these are the parity −1 and +1 chains. For almost every E the upward
//! solution is dominated by a component growing like `(ω√m/g)` per step,
//! so `Σ α_m² + β_m²` diverges. Only at eigenvalues does the minimal
//! (decaying) solution satisfy the m = 0 boundary equations; running the
//! recurrence downward from a deep index isolates that minimal solution
//! and the boundary mismatch becomes a defect function of E.

use serde::{Deserialize, Serialize};

use crate::eigen::converge_spectrum;
use crate::error::{Error, Result};
use crate::model::{ModelParams, Parity};

const RESCALE_HI: f64 = 1e4;
const RESCALE_LO: f64 = 1e-4;

/// Rescaled trajectory of the upward recurrence.
///
/// The true coefficients are `alphas[m]·exp(logscale[m])` and likewise for
/// `betas`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffTrail {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub logscale: Vec<f64>,
    /// `ln Σ_{k≤m} (α_k² + β_k²)` in true units.
    pub log_partial_norms: Vec<f64>,
    pub energy: f64,
    pub params: ModelParams,
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

fn check_recurrence_params(params: &ModelParams) -> Result<()> {
    params.validate()?;
    params.require_symmetric()?;
    if params.g == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    Ok(())
}

/// Relative residuals of both row equations at index `m`, given the
/// coefficients at `m−1, m, m+1` in a common frame.
fn row_residuals(
    params: &ModelParams,
    e: f64,
    m: usize,
    prev: (f64, f64),
    cur: (f64, f64),
    next: (f64, f64),
) -> f64 {
    let w = params.omega;
    let g = params.g;
    let sm = (m as f64).sqrt();
    let sm1 = ((m + 1) as f64).sqrt();
    let down = [
        (w * m as f64 - params.lambda - e) * cur.0,
        g * sm * prev.1,
        g * sm1 * next.1,
    ];
    let up = [
        (w * m as f64 + params.lambda - e) * cur.1,
        g * sm * prev.0,
        g * sm1 * next.0,
    ];
    let rel = |t: [f64; 3]| {
        let s: f64 = t.iter().map(|x| x.abs()).sum();
        if s == 0.0 {
            0.0
        } else {
            t.iter().sum::<f64>().abs() / s
        }
    };
    rel(down).max(rel(up))
}

/// Per-step relative residuals of plain (unscaled) coefficient sequences.
pub fn recurrence_residuals(
    params: &ModelParams,
    e: f64,
    alphas: &[f64],
    betas: &[f64],
) -> Vec<f64> {
    let len = alphas.len().min(betas.len());
    (0..len.saturating_sub(1))
        .map(|m| {
            let prev = if m == 0 {
                (0.0, 0.0)
            } else {
                (alphas[m - 1], betas[m - 1])
            };
            row_residuals(
                params,
                e,
                m,
                prev,
                (alphas[m], betas[m]),
                (alphas[m + 1], betas[m + 1]),
            )
        })
        .collect()
}

impl CoeffTrail {
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// True coefficient `(α_m, β_m)`; may overflow for large m.
    pub fn true_coeff(&self, m: usize) -> (f64, f64) {
        let s = self.logscale[m].exp();
        (self.alphas[m] * s, self.betas[m] * s)
    }

    /// `ln max(|α_m|, |β_m|)` in true units.
    pub fn log_magnitudes(&self) -> Vec<f64> {
        (0..self.len())
            .map(|m| self.logscale[m] + self.alphas[m].abs().max(self.betas[m].abs()).ln())
            .collect()
    }

    /// Relative residual of the two row equations at each `m < M`, evaluated
    /// in the frame of index `m + 1`.
    pub fn residuals(&self) -> Vec<f64> {
        let at = |k: usize, frame: f64| {
            let f = (self.logscale[k] - frame).exp();
            (self.alphas[k] * f, self.betas[k] * f)
        };
        (0..self.len() - 1)
            .map(|m| {
                let frame = self.logscale[m + 1];
                let prev = if m == 0 { (0.0, 0.0) } else { at(m - 1, frame) };
                row_residuals(
                    &self.params,
                    self.energy,
                    m,
                    prev,
                    at(m, frame),
                    at(m + 1, frame),
                )
            })
            .collect()
    }
}

/// Runs the recurrence upward from `(α₀, β₀)` through index `steps`.
pub fn forward_trail(
    params: &ModelParams,
    e: f64,
    init: (f64, f64),
    steps: usize,
) -> Result<CoeffTrail> {
    check_recurrence_params(params)?;
    if init.0 == 0.0 && init.1 == 0.0 {
        return Err(Error::ZeroInit);
    }
    if steps < 2 {
        return Err(Error::TooFewSteps { min: 2, got: steps });
    }
    let w = params.omega;
    let g = params.g;
    let lam = params.lambda;

    let mut log_l = 0.0;
    let mut cur = init;
    let m0 = cur.0.abs().max(cur.1.abs());
    if !(RESCALE_LO..=RESCALE_HI).contains(&m0) {
        cur = (cur.0 / m0, cur.1 / m0);
        log_l = m0.ln();
    }
    let mut prev = (0.0, 0.0);

    let mut alphas = Vec::with_capacity(steps + 1);
    let mut betas = Vec::with_capacity(steps + 1);
    let mut logscale = Vec::with_capacity(steps + 1);
    let mut norms = Vec::with_capacity(steps + 1);
    let mut log_norm = f64::NEG_INFINITY;

    let mut record = |a: f64,
                      b: f64,
                      l: f64,
                      alphas: &mut Vec<f64>,
                      betas: &mut Vec<f64>,
                      logscale: &mut Vec<f64>,
                      norms: &mut Vec<f64>| {
        alphas.push(a);
        betas.push(b);
        logscale.push(l);
        let sq = a * a + b * b;
        if sq > 0.0 {
            log_norm = log_add_exp(log_norm, 2.0 * l + sq.ln());
        }
        norms.push(log_norm);
    };
    record(
        cur.0,
        cur.1,
        log_l,
        &mut alphas,
        &mut betas,
        &mut logscale,
        &mut norms,
    );

    for m in 0..steps {
        let mf = m as f64;
        let sm = mf.sqrt();
        let den = g * (mf + 1.0).sqrt();
        let b_next = ((e - w * mf + lam) * cur.0 - g * sm * prev.1) / den;
        let a_next = ((e - w * mf - lam) * cur.1 - g * sm * prev.0) / den;
        let mut next = (a_next, b_next);
        let mag = a_next.abs().max(b_next.abs());
        if mag > 0.0 && !(RESCALE_LO..=RESCALE_HI).contains(&mag) {
            next = (next.0 / mag, next.1 / mag);
            cur = (cur.0 / mag, cur.1 / mag);
            log_l += mag.ln();
        }
        record(
            next.0,
            next.1,
            log_l,
            &mut alphas,
            &mut betas,
            &mut logscale,
            &mut norms,
        );
        prev = cur;
        cur = next;
    }

    Ok(CoeffTrail {
        alphas,
        betas,
        logscale,
        log_partial_norms: norms,
        energy: e,
        params: *params,
    })
}

/// Default depth of the backward recursion for energy `e`.
pub fn default_tail(params: &ModelParams, e: f64) -> usize {
    let by_energy = (4.0 * e.abs() / params.omega).ceil() as usize;
    let regime = ((e.abs() + 2.0 * params.lambda.abs() + 4.0 * params.g) / params.omega).floor()
        as usize
        + 1;
    by_energy.max(200).max(regime)
}

fn check_tail(params: &ModelParams, e: f64, tail: usize) -> Result<()> {
    let lhs = params.omega * tail as f64;
    let rhs = e.abs() + 2.0 * params.lambda.abs() + 4.0 * params.g;
    if lhs <= rhs {
        return Err(Error::TailRegime { lhs, rhs });
    }
    Ok(())
}

/// Which spin sits at Fock index `m` of the chain of parity `p`.
fn chain_has_alpha(p: Parity, m: usize) -> bool {
    // parity −1 chain is (α₀, β₁, α₂, …)
    (p == Parity::Minus) == m.is_multiple_of(2)
}

/// Downward recursion from a unit seed at index `tail` (index `tail+1`
/// zero). Returns `(α₀, β₀, α₁, β₁)` scaled to unit max-norm.
fn backward(params: &ModelParams, e: f64, tail: usize, seed_alpha: bool) -> [f64; 4] {
    let w = params.omega;
    let g = params.g;
    let lam = params.lambda;
    let mut cur = if seed_alpha { (1.0, 0.0) } else { (0.0, 1.0) };
    let mut next = (0.0, 0.0);
    for m in (1..=tail).rev() {
        let mf = m as f64;
        let den = g * mf.sqrt();
        let s1 = (mf + 1.0).sqrt();
        let a_prev = ((e - w * mf - lam) * cur.1 - g * s1 * next.0) / den;
        let b_prev = ((e - w * mf + lam) * cur.0 - g * s1 * next.1) / den;
        next = cur;
        cur = (a_prev, b_prev);
        let mag = cur
            .0
            .abs()
            .max(cur.1.abs())
            .max(next.0.abs())
            .max(next.1.abs());
        if mag > 0.0 {
            cur = (cur.0 / mag, cur.1 / mag);
            next = (next.0 / mag, next.1 / mag);
        }
    }
    [cur.0, cur.1, next.0, next.1]
}

/// Boundary equations at m = 0 for a coefficient vector `(α₀, β₀, α₁, β₁)`:
/// `(value, scale)` for the ↓ row and the ↑ row.
fn boundary_rows(params: &ModelParams, e: f64, v: [f64; 4]) -> [(f64, f64); 2] {
    let [a0, b0, a1, b1] = v;
    let g = params.g;
    let lam = params.lambda;
    let down = (
        -(lam + e) * a0 + g * b1,
        (lam + e).abs() * a0.abs() + g * b1.abs(),
    );
    let up = (
        (lam - e) * b0 + g * a1,
        (lam - e).abs() * b0.abs() + g * a1.abs(),
    );
    [down, up]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MillerReport {
    /// `|det B| / (‖S₀‖·‖S₁‖)` for the 2×2 boundary matrix B.
    pub defect: f64,
    /// Signed version of the defect.
    pub signed: f64,
    /// Normalized boundary residual of the parity +1 chain.
    pub residual_plus: f64,
    /// Normalized boundary residual of the parity −1 chain.
    pub residual_minus: f64,
    /// `|cos|` of the angle between the two backward solutions at m ≤ 1.
    pub seed_overlap: f64,
    /// Coefficients `(α₀, β₀, α₁, β₁)` of the two backward solutions.
    pub solutions: [[f64; 4]; 2],
    pub tail: usize,
}

impl MillerReport {
    pub fn chain_residual(&self, p: Parity) -> f64 {
        match p {
            Parity::Plus => self.residual_plus,
            Parity::Minus => self.residual_minus,
        }
    }
}

/// Backward recursion from index `tail` with two unit seeds (`α_M = 1` and
/// `β_M = 1`), then the determinant of the m = 0 boundary matrix.
pub fn miller_report(params: &ModelParams, e: f64, tail: usize) -> Result<MillerReport> {
    check_recurrence_params(params)?;
    check_tail(params, e, tail)?;
    let sols = [
        backward(params, e, tail, true),
        backward(params, e, tail, false),
    ];
    let rows = [
        boundary_rows(params, e, sols[0]),
        boundary_rows(params, e, sols[1]),
    ];
    // rows[j][i]: seed j, equation i
    let det = rows[0][0].0 * rows[1][1].0 - rows[1][0].0 * rows[0][1].0;
    let row_norm = |i: usize| (rows[0][i].1.powi(2) + rows[1][i].1.powi(2)).sqrt();
    let scale = row_norm(0) * row_norm(1);
    let signed = if scale > 0.0 { det / scale } else { 0.0 };

    let chain = |p: Parity| {
        let j = if chain_has_alpha(p, tail) { 0 } else { 1 };
        let i = match p {
            Parity::Minus => 0,
            Parity::Plus => 1,
        };
        let (v, s) = rows[j][i];
        if s > 0.0 {
            v / s
        } else {
            0.0
        }
    };

    let dot: f64 = sols[0].iter().zip(&sols[1]).map(|(a, b)| a * b).sum();
    let n0 = sols[0].iter().map(|x| x * x).sum::<f64>().sqrt();
    let n1 = sols[1].iter().map(|x| x * x).sum::<f64>().sqrt();

    Ok(MillerReport {
        defect: signed.abs(),
        signed,
        residual_plus: chain(Parity::Plus),
        residual_minus: chain(Parity::Minus),
        seed_overlap: (dot / (n0 * n1)).abs(),
        solutions: sols,
        tail,
    })
}

/// Dimensionless boundary defect; its zeros are the eigenvalues.
pub fn miller_defect(params: &ModelParams, e: f64, tail: usize) -> Result<f64> {
    Ok(miller_report(params, e, tail)?.defect)
}

/// [`miller_defect`] with the default tail depth.
pub fn miller_defect_auto(params: &ModelParams, e: f64) -> Result<f64> {
    miller_defect(params, e, default_tail(params, e))
}

/// Initial pair `(α₀, β₀)` of the backward (minimal) solution whose chain
/// has the smaller boundary residual at `e`.
pub fn minimal_init(params: &ModelParams, e: f64, tail: usize) -> Result<(f64, f64)> {
    let r = miller_report(params, e, tail)?;
    let p = if r.residual_plus.abs() <= r.residual_minus.abs() {
        Parity::Plus
    } else {
        Parity::Minus
    };
    let j = if chain_has_alpha(p, tail) { 0 } else { 1 };
    let s = r.solutions[j];
    Ok((s[0], s[1]))
}

/// A zero of one chain's boundary residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralRoot {
    pub parity: Parity,
    pub energy: f64,
}

/// Locates the eigenvalues in `[e_lo, e_hi]` as sign changes of each chain's
/// boundary residual on a uniform grid, refined by bisection.
pub fn spectral_roots(
    params: &ModelParams,
    e_lo: f64,
    e_hi: f64,
    grid: usize,
) -> Result<Vec<SpectralRoot>> {
    let tail = default_tail(params, e_lo.abs().max(e_hi.abs()));
    let eval = |e: f64| miller_report(params, e, tail);
    let grid = grid.max(2);
    let xs: Vec<f64> = (0..grid)
        .map(|i| e_lo + (e_hi - e_lo) * i as f64 / (grid - 1) as f64)
        .collect();
    let reports = xs.iter().map(|&e| eval(e)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for p in Parity::BOTH {
        for i in 0..grid - 1 {
            let (mut a, mut b) = (xs[i], xs[i + 1]);
            let fa = reports[i].chain_residual(p);
            let fb = reports[i + 1].chain_residual(p);
            if fa == 0.0 {
                out.push(SpectralRoot {
                    parity: p,
                    energy: a,
                });
                continue;
            }
            if fa.signum() == fb.signum() || fb == 0.0 {
                continue;
            }
            let mut sa = fa.signum();
            while b - a > 1e-13 * (1.0 + a.abs()) {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                let fm = eval(mid)?.chain_residual(p);
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if fm.signum() == sa {
                    a = mid;
                    sa = fm.signum();
                } else {
                    b = mid;
                }
            }
            out.push(SpectralRoot {
                parity: p,
                energy: 0.5 * (a + b),
            });
        }
        if reports[grid - 1].chain_residual(p) == 0.0 {
            out.push(SpectralRoot {
                parity: p,
                energy: xs[grid - 1],
            });
        }
    }
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyClass {
    Spectral,
    NonSpectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: EnergyClass,
    pub defect: f64,
    pub defect_says_spectral: bool,
    pub nearest_eigenvalue: f64,
    pub distance: f64,
    pub spectrum_says_spectral: bool,
    /// False when the two criteria disagree.
    pub criteria_agree: bool,
}

/// Spectral iff the Miller defect is below `tol` and a converged eigenvalue
/// lies within `1e-6·ω`.
pub fn classify_energy(params: &ModelParams, e: f64, tol: f64) -> Result<Classification> {
    let defect = miller_defect_auto(params, e)?;
    let w = params.omega;
    let mut k =
        (((e + params.g * params.g / w + params.lambda.abs()) / w).max(0.0)).ceil() as usize + 4;
    let conv = loop {
        let c = converge_spectrum(params, k, 1e-10)?;
        let top = c
            .spectrum
            .levels
            .last()
            .map(|l| l.energy)
            .unwrap_or(f64::NEG_INFINITY);
        if top > e + w {
            break c;
        }
        k *= 2;
    };
    let nearest = conv
        .spectrum
        .nearest(e)
        .map(|l| l.energy)
        .unwrap_or(f64::NAN);
    let distance = (nearest - e).abs();
    let by_defect = defect < tol;
    let by_spectrum = distance < 1e-6 * w;
    Ok(Classification {
        class: if by_defect && by_spectrum {
            EnergyClass::Spectral
        } else {
            EnergyClass::NonSpectral
        },
        defect,
        defect_says_spectral: by_defect,
        nearest_eigenvalue: nearest,
        distance,
        spectrum_says_spectral: by_spectrum,
        criteria_agree: by_defect == by_spectrum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{enumerate_zhang, zhang_level, Branch, Subspectrum};
    use crate::eigen::converge_spectrum;
    use proptest::prelude::*;

    fn params(g: f64, lambda: f64) -> ModelParams {
        ModelParams::symmetric(1.0, g, lambda).unwrap()
    }

    #[test]
    fn displaced_vacuum_at_zero_splitting() {
        // upward recursion of the minimal solution is only accurate until the
        // dominant solution, seeded by roundoff, catches up (m ≈ 12 here)
        for (w, g) in [(1.0, 0.5), (1.3, 0.9)] {
            let p = ModelParams::symmetric(w, g, 0.0).unwrap();
            let e = -g * g / w;
            let t = forward_trail(&p, e, (1.0, -1.0), 40).unwrap();
            let mut fact = 1.0f64;
            for m in 0..=8 {
                if m > 0 {
                    fact *= m as f64;
                }
                let expect = (g / w).powi(m as i32) / fact.sqrt();
                let (a, b) = t.true_coeff(m);
                assert!(
                    (a - expect).abs() < 1e-8 * expect,
                    "m={m} a={a} expect={expect}"
                );
                assert!((a + b).abs() < 1e-8 * expect);
            }
            // Σ α² + β² = 2 e^{(g/ω)²}
            let limit = 2f64.ln() + (g / w).powi(2);
            assert!((t.log_partial_norms[12] - limit).abs() < 1e-9);
            assert!(t.log_partial_norms[40] > limit + 1.0);
        }
    }

    #[test]
    fn generic_energy_grows() {
        let p = params(0.5, 0.3);
        let t = forward_trail(&p, 0.37, (1.0, 0.4), 300).unwrap();
        let lp = &t.log_partial_norms;
        assert!(lp[300] > lp[150] + 50.0);
        let mags = t.log_magnitudes();
        let m = 299;
        let rate = mags[m + 1] - mags[m];
        let expect = ((m as f64).sqrt() / 0.5).ln();
        assert!((rate - expect).abs() < 0.05, "{rate} vs {expect}");
    }

    #[test]
    fn forward_errors() {
        let p = params(0.5, 0.3);
        assert_eq!(
            forward_trail(&p, 0.1, (0.0, 0.0), 10).unwrap_err(),
            Error::ZeroInit
        );
        assert_eq!(
            forward_trail(&params(0.0, 0.3), 0.1, (1.0, 0.0), 10).unwrap_err(),
            Error::ZeroCoupling
        );
        assert!(forward_trail(&p, 0.1, (1.0, 0.0), 1).is_err());
        let asym = ModelParams::new(1.0, 0.5, 0.3, 0.1).unwrap();
        assert!(forward_trail(&asym, 0.1, (1.0, 0.0), 10).is_err());
    }

    #[test]
    fn trail_stays_in_rescale_window() {
        let p = params(0.25, 0.5);
        let t = forward_trail(&p, 2.2, (1e-9, 3.0), 400).unwrap();
        for m in 0..t.len() {
            let mag = t.alphas[m].abs().max(t.betas[m].abs());
            assert!((RESCALE_LO..=RESCALE_HI).contains(&mag), "m={m} mag={mag}");
        }
        assert!(t.residuals().iter().all(|&r| r < 1e-10));
    }

    #[test]
    fn juddian_energy_has_small_defect() {
        let p = params(3f64.sqrt() / 4.0, 0.5);
        let d = miller_defect_auto(&p, 0.8125).unwrap();
        assert!(d < 1e-6, "{d}");
    }

    #[test]
    fn defect_at_eigenvalues_and_midpoints() {
        let p = params(0.5, 0.3);
        let c = converge_spectrum(&p, 4, 1e-12).unwrap();
        let e = c.spectrum.energies();
        for &x in &e {
            assert!(miller_defect_auto(&p, x).unwrap() < 1e-6);
        }
        let mid = 0.5 * (e[0] + e[1]);
        assert!(miller_defect_auto(&p, mid).unwrap() > 1e-2);
    }

    #[test]
    fn claimed_ground_level_is_not_spectral() {
        let p = params(0.5, 0.3);
        let e = zhang_level(&p, Subspectrum::I, 0, Branch::Minus);
        assert!(miller_defect_auto(&p, e).unwrap() > 1e-2);
    }

    #[test]
    fn tail_regime_enforced() {
        let p = params(0.5, 0.3);
        assert!(matches!(
            miller_defect(&p, 10.0, 5),
            Err(Error::TailRegime { .. })
        ));
    }

    #[test]
    fn seeds_are_independent() {
        let p = params(0.75, 0.5);
        let r = miller_report(&p, 1.3, 200).unwrap();
        assert!(r.seed_overlap < 1e-12);
    }

    #[test]
    fn classify_ground_and_gap() {
        let p = params(0.5, 0.3);
        let c = converge_spectrum(&p, 3, 1e-12).unwrap();
        let e0 = c.spectrum.levels[0].energy;
        let yes = classify_energy(&p, e0, 1e-6).unwrap();
        assert_eq!(yes.class, EnergyClass::Spectral);
        assert!(yes.criteria_agree);
        let no = classify_energy(&p, e0 + 0.1, 1e-6).unwrap();
        assert_eq!(no.class, EnergyClass::NonSpectral);
        assert!(no.criteria_agree);
    }

    #[test]
    fn claimed_levels_classify_non_spectral() {
        for lambda in [0.3, 0.5] {
            let p = params(0.5, lambda);
            for lvl in enumerate_zhang(&p, 4.0) {
                let c = classify_energy(&p, lvl.energy, 1e-6).unwrap();
                assert_eq!(c.class, EnergyClass::NonSpectral, "{lvl:?} {c:?}");
            }
        }
    }

    #[test]
    fn minimal_start_stays_bounded() {
        let p = params(0.5, 0.3);
        let c = converge_spectrum(&p, 2, 1e-12).unwrap();
        let e = c.spectrum.levels[1].energy;
        let init = minimal_init(&p, e, 200).unwrap();
        let t = forward_trail(&p, e, init, 60).unwrap();
        let lp = &t.log_partial_norms;
        assert!((lp[12] - lp[8]).abs() < 1e-9, "{} {}", lp[8], lp[12]);
        // contamination by the dominant solution eventually takes over
        assert!(lp[60] > lp[20] + 1.0);
    }

    proptest! {
        #[test]
        fn forward_residual_small(
            g in 0.1f64..1.5, lambda in -1.0f64..1.0, e in -3.0f64..6.0,
            a0 in -2.0f64..2.0, b0 in -2.0f64..2.0,
        ) {
            prop_assume!(a0.abs() + b0.abs() > 1e-3);
            let p = params(g, lambda);
            let t = forward_trail(&p, e, (a0, b0), 150).unwrap();
            for r in t.residuals() {
                prop_assert!(r < 1e-10);
            }
        }

        #[test]
        fn splitting_sign_mirror(g in 0.1f64..1.5, lambda in -1.0f64..1.0, e in -3.0f64..6.0,
                                 a0 in -2.0f64..2.0, b0 in -2.0f64..2.0) {
            prop_assume!(a0.abs() + b0.abs() > 1e-3);
            let t = forward_trail(&params(g, lambda), e, (a0, b0), 80).unwrap();
            let s = forward_trail(&params(g, -lambda), e, (b0, a0), 80).unwrap();
            prop_assert_eq!(&t.alphas, &s.betas);
            prop_assert_eq!(&t.betas, &s.alphas);
            prop_assert_eq!(&t.logscale, &s.logscale);
        }

        #[test]
        fn non_spectral_energy_grows(g in 0.2f64..1.0, lambda in 0.0f64..0.8, e in -1.0f64..4.0) {
            let p = params(g, lambda);
            prop_assume!(miller_defect_auto(&p, e).unwrap() > 1e-3);
            let t = forward_trail(&p, e, (1.0, 1.0), 200).unwrap();
            prop_assert!(t.log_partial_norms[200] > t.log_partial_norms[100]);
        }
    }
}
