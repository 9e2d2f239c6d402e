//! Real symmetric eigensolvers: Sturm-sequence bisection for tridiagonal
//! blocks, cyclic Jacobi for dense matrices, and the truncation-doubling
//! convergence controller for the Rabi spectrum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{build_parity_block, DenseSym, ModelParams, Parity, TriBlock, Truncation};

/// Which sector a level belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    Parity(Parity),
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub energy: f64,
    pub sector: Sector,
    /// Position within its sector, from 0.
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub levels: Vec<Level>,
    pub trunc_used: Truncation,
    pub converged_count: usize,
}

impl Spectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn sector(&self, p: Parity) -> Vec<f64> {
        self.levels
            .iter()
            .filter(|l| l.sector == Sector::Parity(p))
            .map(|l| l.energy)
            .collect()
    }

    /// Level closest to `e`.
    pub fn nearest(&self, e: f64) -> Option<&Level> {
        self.levels
            .iter()
            .min_by(|a, b| (a.energy - e).abs().total_cmp(&(b.energy - e).abs()))
    }
}

/// Number of eigenvalues of `block` strictly below `x`.
///
/// Counts negative pivots of the LDLᵀ factorization of `T − x`; an exactly
/// zero pivot is replaced by a tiny positive value.
pub fn sturm_count(block: &TriBlock, x: f64) -> usize {
    sturm_count_raw(&block.diag, &block.offdiag, x)
}

fn sturm_count_raw(diag: &[f64], offdiag: &[f64], x: f64) -> usize {
    if diag.is_empty() {
        return 0;
    }
    let emax2 = offdiag.iter().fold(0.0f64, |m, e| m.max(e * e));
    let pivmin = f64::MIN_POSITIVE * emax2.max(1.0);
    let mut count = 0;
    let mut q = diag[0] - x;
    for i in 0..diag.len() {
        if i > 0 {
            let e = offdiag[i - 1];
            q = (diag[i] - x) - e * e / q;
        }
        if q.is_nan() {
            // x = ±∞
            q = if x > 0.0 { -1.0 } else { 1.0 };
        }
        if q.abs() < pivmin {
            q = pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Splits a tridiagonal matrix where `|e_n| <= eps_mach (|d_n| + |d_{n+1}|)`.
fn split_points(diag: &[f64], offdiag: &[f64]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, e) in offdiag.iter().enumerate() {
        if e.abs() <= f64::EPSILON * (diag[i].abs() + diag[i + 1].abs()) {
            out.push(start..i + 1);
            start = i + 1;
        }
    }
    out.push(start..diag.len());
    out
}

fn gershgorin_raw(diag: &[f64], offdiag: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo, hi)
}

fn bisect_lowest(diag: &[f64], offdiag: &[f64], k: usize, abs_tol: f64) -> Vec<f64> {
    let (glo, ghi) = gershgorin_raw(diag, offdiag);
    let pad = 2.0 * f64::EPSILON * glo.abs().max(ghi.abs()) + abs_tol;
    let (glo, ghi) = (glo - pad, ghi + pad);
    let mut out = Vec::with_capacity(k);
    let mut lo_floor = glo;
    for j in 0..k {
        let mut lo = lo_floor;
        let mut hi = ghi;
        loop {
            let mid = 0.5 * (lo + hi);
            if hi - lo < abs_tol || mid <= lo || mid >= hi {
                break;
            }
            if sturm_count_raw(diag, offdiag, mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let ev = 0.5 * (lo + hi);
        out.push(ev);
        // eigenvalue j+1 is not below the lower bracket of eigenvalue j
        lo_floor = lo;
    }
    out
}

/// The `k` lowest eigenvalues of a tridiagonal block by bisection, each
/// bracketed to width below `abs_tol`.
pub fn eigs_tridiag(block: &TriBlock, k: usize, abs_tol: f64) -> Result<Spectrum> {
    let n = block.len();
    if k == 0 || k > n {
        return Err(Error::LevelCount { k, n });
    }
    if !(abs_tol > 0.0) {
        return Err(Error::Tolerance(abs_tol));
    }
    let mut all = Vec::with_capacity(k * 2);
    for r in split_points(&block.diag, &block.offdiag) {
        let d = &block.diag[r.clone()];
        let e = &block.offdiag[r.start..r.end - 1];
        all.extend(bisect_lowest(d, e, k.min(d.len()), abs_tol));
    }
    all.sort_by(f64::total_cmp);
    all.truncate(k);
    let sector = match block.parity {
        Some(p) => Sector::Parity(p),
        None => Sector::Full,
    };
    Ok(Spectrum {
        levels: all
            .into_iter()
            .enumerate()
            .map(|(index, energy)| Level {
                energy,
                sector,
                index,
            })
            .collect(),
        trunc_used: Truncation { n_max: n },
        converged_count: k,
    })
}

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Outcome of a Jacobi run.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRun {
    pub eigenvalues: Vec<f64>,
    pub sweeps: usize,
    /// Trace after each sweep, starting with the input trace.
    pub traces: Vec<f64>,
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm falls below
/// `abs_tol` times the initial Frobenius norm.
pub fn jacobi(m: &DenseSym, abs_tol: f64) -> Result<JacobiRun> {
    let n = m.dim;
    if n == 0 {
        return Err(Error::LevelCount { k: 1, n: 0 });
    }
    if !(abs_tol > 0.0) {
        return Err(Error::Tolerance(abs_tol));
    }
    let mut a = m.entries.clone();
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = abs_tol * frob;
    let mut traces = vec![m.trace()];
    let mut sweeps = 0;
    let mut off = off_norm(&a, n);
    while off > target {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::JacobiNoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let np = c * arp - s * arq;
                    let nq = s * arp + c * arq;
                    a[r * n + p] = np;
                    a[p * n + r] = np;
                    a[r * n + q] = nq;
                    a[q * n + r] = nq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        traces.push((0..n).map(|i| a[i * n + i]).sum());
        off = off_norm(&a, n);
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(JacobiRun {
        eigenvalues,
        sweeps,
        traces,
    })
}

/// All eigenvalues of a dense symmetric matrix, ascending.
pub fn eigs_dense(m: &DenseSym, abs_tol: f64) -> Result<Spectrum> {
    let run = jacobi(m, abs_tol)?;
    let n = run.eigenvalues.len();
    Ok(Spectrum {
        levels: run
            .eigenvalues
            .into_iter()
            .enumerate()
            .map(|(index, energy)| Level {
                energy,
                sector: Sector::Full,
                index,
            })
            .collect(),
        trunc_used: Truncation { n_max: n / 2 },
        converged_count: n,
    })
}

/// Merges per-parity spectra into one ascending list.
pub fn merge_parities(plus: &Spectrum, minus: &Spectrum, trunc: Truncation) -> Spectrum {
    let mut levels: Vec<Level> = plus
        .levels
        .iter()
        .chain(minus.levels.iter())
        .copied()
        .collect();
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Spectrum {
        converged_count: plus.converged_count + minus.converged_count,
        levels,
        trunc_used: trunc,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergeOptions {
    /// Largest truncation tried before giving up.
    pub n_cap: usize,
}

impl Default for ConvergeOptions {
    fn default() -> Self {
        ConvergeOptions { n_cap: 4096 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStep {
    pub n_max: usize,
    /// Largest change of any tracked level against the previous truncation.
    pub max_delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Converged {
    pub spectrum: Spectrum,
    pub trunc: Truncation,
    pub history: Vec<ConvergenceStep>,
}

fn parity_levels(params: &ModelParams, n: usize, k: usize, abs_tol: f64) -> Result<[Spectrum; 2]> {
    let t = Truncation::new(n)?;
    let plus = eigs_tridiag(&build_parity_block(params, t, Parity::Plus)?, k, abs_tol)?;
    let minus = eigs_tridiag(&build_parity_block(params, t, Parity::Minus)?, k, abs_tol)?;
    Ok([plus, minus])
}

/// Bisection width used for a requested relative convergence tolerance.
pub fn bisection_tol(params: &ModelParams, rel_tol: f64) -> f64 {
    1e-2 * rel_tol * params.omega
}

pub fn converge_spectrum(params: &ModelParams, k: usize, rel_tol: f64) -> Result<Converged> {
    converge_spectrum_with(params, k, rel_tol, ConvergeOptions::default())
}

/// Doubles N from `max(32, 4k)` until the `k` lowest levels of both parities
/// move by less than `rel_tol·ω` between consecutive truncations.
pub fn converge_spectrum_with(
    params: &ModelParams,
    k: usize,
    rel_tol: f64,
    opts: ConvergeOptions,
) -> Result<Converged> {
    params.validate()?;
    params.require_symmetric()?;
    if k == 0 {
        return Err(Error::LevelCount { k, n: 0 });
    }
    if !(rel_tol > 0.0) {
        return Err(Error::Tolerance(rel_tol));
    }
    let abs_tol = bisection_tol(params, rel_tol);
    let mut n = 32usize.max(4 * k);
    if n > opts.n_cap {
        return Err(Error::BudgetExceeded {
            n_max: n,
            cap: opts.n_cap,
            last_delta: f64::INFINITY,
        });
    }
    let mut prev = parity_levels(params, n, k, abs_tol)?;
    if params.g == 0.0 {
        // diagonal blocks: the k lowest are exact once N > k
        let t = Truncation::new(n)?;
        return Ok(Converged {
            spectrum: merge_parities(&prev[0], &prev[1], t),
            trunc: t,
            history: Vec::new(),
        });
    }
    let mut history = Vec::new();
    loop {
        let next_n = n * 2;
        if next_n > opts.n_cap {
            return Err(Error::BudgetExceeded {
                n_max: next_n,
                cap: opts.n_cap,
                last_delta: history
                    .last()
                    .map(|s: &ConvergenceStep| s.max_delta)
                    .unwrap_or(f64::INFINITY),
            });
        }
        let cur = parity_levels(params, next_n, k, abs_tol)?;
        let max_delta = prev
            .iter()
            .zip(cur.iter())
            .flat_map(|(a, b)| {
                a.levels
                    .iter()
                    .zip(b.levels.iter())
                    .map(|(x, y)| (x.energy - y.energy).abs())
            })
            .fold(0.0f64, f64::max);
        history.push(ConvergenceStep {
            n_max: next_n,
            max_delta,
        });
        n = next_n;
        prev = cur;
        if max_delta < rel_tol * params.omega {
            let t = Truncation::new(n)?;
            return Ok(Converged {
                spectrum: merge_parities(&prev[0], &prev[1], t),
                trunc: t,
                history,
            });
        }
    }
}

/// Smallest gap between consecutive values of an ascending list.
pub fn min_gap(sorted: &[f64]) -> f64 {
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}
