//! Bargmann-space checks of the Juddian (quasi-exact) eigenstate.
//!
//! States are entire functions `f(z) = Σ a_m z^m` with norm
//! `‖f‖² = Σ m! |a_m|²`. The Fock coefficient of `|m⟩` is `c_m = a_m √(m!)`,
//! `a†` acts as multiplication by `z` and `a` as `d/dz`.
//!
//! In the ω = 1 frame, with `ψ = φ₁|+x⟩ + φ₂|−x⟩`,
//! `|+x⟩ = (|↓⟩ + |↑⟩)/√2` and `|−x⟩ = (|↑⟩ − |↓⟩)/√2`, the eigenvalue
//! equation becomes
//!
//! ```text
//! (z + g) φ₁′ + g z φ₁ + λ φ₂ = E φ₁
//! (z − g) φ₂′ − g z φ₂ + λ φ₁ = E φ₂
//! ```
//!
//! so the spin-basis coefficients are `α_m = (c¹_m − c²_m)/√2` and
//! `β_m = (c¹_m + c²_m)/√2`. On the circle `λ² + 4g² = 1` the pair
//! `φ₁ = e^{−gz}(2g z/λ + λ + 2g²/λ)`, `φ₂ = e^{−gz}` solves the system with
//! `E = 1 − g²`.

use serde::{Deserialize, Serialize};

use crate::analytic::nearest_zhang;
use crate::eigen::converge_spectrum;
use crate::error::{Error, Result};
use crate::model::{ModelParams, Parity};
use crate::recurrence::miller_defect_auto;

/// `f(z) = (Σ_j poly[j] z^j) · e^{rate·z}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyExp {
    pub poly: Vec<f64>,
    pub rate: f64,
}

impl PolyExp {
    pub fn new(poly: Vec<f64>, rate: f64) -> Self {
        PolyExp { poly, rate }
    }

    pub fn exp(rate: f64) -> Self {
        PolyExp::new(vec![1.0], rate)
    }

    pub fn degree(&self) -> usize {
        self.poly.len().saturating_sub(1)
    }

    pub fn eval(&self, z: f64) -> f64 {
        let p = self.poly.iter().rev().fold(0.0, |acc, c| acc * z + c);
        p * (self.rate * z).exp()
    }

    /// `f′ = (P′ + μP) e^{μz}`.
    pub fn derivative(&self) -> PolyExp {
        let mut out = vec![0.0; self.poly.len()];
        for (j, c) in self.poly.iter().enumerate() {
            out[j] += self.rate * c;
            if j > 0 {
                out[j - 1] += j as f64 * c;
            }
        }
        PolyExp::new(out, self.rate)
    }

    pub fn mul_z(&self) -> PolyExp {
        let mut out = Vec::with_capacity(self.poly.len() + 1);
        out.push(0.0);
        out.extend_from_slice(&self.poly);
        PolyExp::new(out, self.rate)
    }

    pub fn scale(&self, s: f64) -> PolyExp {
        PolyExp::new(self.poly.iter().map(|c| c * s).collect(), self.rate)
    }

    pub fn max_coeff(&self) -> f64 {
        self.poly.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Power-series coefficients rescaled to the Fock frame,
    /// `c_m = a_m √(m!)`, for `m < count`.
    pub fn fock_coefficients(&self, count: usize) -> Vec<f64> {
        // u_k = μ^k / √(k!)
        let mut u = Vec::with_capacity(count);
        for k in 0..count {
            u.push(if k == 0 {
                1.0
            } else {
                u[k - 1] * self.rate / (k as f64).sqrt()
            });
        }
        (0..count)
            .map(|m| {
                let mut s = 0.0;
                for (j, p) in self.poly.iter().enumerate() {
                    if j > m {
                        break;
                    }
                    // √(m!/(m−j)!)
                    let ratio: f64 = ((m - j + 1)..=m).map(|i| (i as f64).sqrt()).product();
                    s += p * u[m - j] * ratio;
                }
                s
            })
            .collect()
    }
}

/// Finite sum of [`PolyExp`] terms with distinct rates.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PolyExpSum {
    pub terms: Vec<PolyExp>,
}

impl PolyExpSum {
    pub fn add(&mut self, f: &PolyExp) {
        if let Some(t) = self.terms.iter_mut().find(|t| t.rate == f.rate) {
            if t.poly.len() < f.poly.len() {
                t.poly.resize(f.poly.len(), 0.0);
            }
            for (a, b) in t.poly.iter_mut().zip(&f.poly) {
                *a += b;
            }
        } else {
            self.terms.push(f.clone());
        }
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(z)).sum()
    }

    /// Largest coefficient magnitude; zero iff the function vanishes
    /// identically, since `z^j e^{μz}` with distinct `(j, μ)` are independent.
    pub fn max_coeff(&self) -> f64 {
        self.terms.iter().fold(0.0f64, |m, t| m.max(t.max_coeff()))
    }
}

/// A point on the Juddian constraint circle, ω = 1 frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JuddPoint {
    pub params: ModelParams,
    pub energy: f64,
    pub constraint_residual: f64,
}

pub const CONSTRAINT_TOL: f64 = 1e-12;

pub fn constraint_residual(lambda: f64, g: f64) -> f64 {
    lambda * lambda + 4.0 * g * g - 1.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct JuddCandidate {
    pub phi1: PolyExp,
    pub phi2: PolyExp,
    pub point: JuddPoint,
}

/// The closed-form eigenfunction pair and its energy `1 − g²`.
pub fn judd_candidate(lambda: f64, g: f64) -> Result<JuddCandidate> {
    if lambda == 0.0 {
        return Err(Error::LambdaZero);
    }
    let residual = constraint_residual(lambda, g);
    if !(residual.abs() < CONSTRAINT_TOL) {
        return Err(Error::ConstraintViolated { residual });
    }
    let params = ModelParams::symmetric(1.0, g, lambda)?;
    Ok(JuddCandidate {
        phi1: PolyExp::new(vec![lambda + 2.0 * g * g / lambda, 2.0 * g / lambda], -g),
        phi2: PolyExp::exp(-g),
        point: JuddPoint {
            params,
            energy: 1.0 - g * g,
            constraint_residual: residual,
        },
    })
}

/// Juddian candidate for general ω: checks `λ² + 4g² = ω²` in the ω = 1
/// frame. Energies in the returned point are in the unit frame; multiply by
/// the second element to restore units.
pub fn judd_candidate_scaled(params: &ModelParams) -> Result<(JuddCandidate, f64)> {
    params.validate()?;
    let (unit, w) = params.to_unit_frame();
    Ok((judd_candidate(unit.lambda, unit.g)?, w))
}

/// Same form as [`judd_candidate`] without the constraint check; used to
/// show that off the circle the residual does not vanish.
pub fn judd_form_unchecked(lambda: f64, g: f64) -> (PolyExp, PolyExp) {
    (
        PolyExp::new(vec![lambda + 2.0 * g * g / lambda, 2.0 * g / lambda], -g),
        PolyExp::exp(-g),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeResidual {
    pub r1: PolyExpSum,
    pub r2: PolyExpSum,
    /// Max of `|r₁(z)|, |r₂(z)|` over the samples.
    pub max_abs: f64,
    /// Largest residual coefficient.
    pub max_coeff: f64,
    /// All residual coefficients below `1e-12`.
    pub identically_zero: bool,
}

pub const IDENTICALLY_ZERO_TOL: f64 = 1e-12;

/// Residuals of the coupled Bargmann equations (ω = 1), built on
/// coefficients and then sampled.
pub fn ode_residual(
    phi1: &PolyExp,
    phi2: &PolyExp,
    params: &ModelParams,
    e: f64,
    z_samples: &[f64],
) -> OdeResidual {
    let g = params.g;
    let lam = params.lambda;

    let d1 = phi1.derivative();
    let mut r1 = PolyExpSum::default();
    r1.add(&d1.mul_z());
    r1.add(&d1.scale(g));
    r1.add(&phi1.mul_z().scale(g));
    r1.add(&phi2.scale(lam));
    r1.add(&phi1.scale(-e));

    let d2 = phi2.derivative();
    let mut r2 = PolyExpSum::default();
    r2.add(&d2.mul_z());
    r2.add(&d2.scale(-g));
    r2.add(&phi2.mul_z().scale(-g));
    r2.add(&phi1.scale(lam));
    r2.add(&phi2.scale(-e));

    let max_abs = z_samples
        .iter()
        .map(|&z| r1.eval(z).abs().max(r2.eval(z).abs()))
        .fold(0.0f64, f64::max);
    let max_coeff = r1.max_coeff().max(r2.max_coeff());
    OdeResidual {
        r1,
        r2,
        max_abs,
        max_coeff,
        identically_zero: max_coeff < IDENTICALLY_ZERO_TOL,
    }
}

/// Default sample points for [`ode_residual`].
pub fn default_samples() -> Vec<f64> {
    (-20..=20).map(|i| i as f64 * 0.5).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BargmannNorm {
    pub value: f64,
    pub terms: usize,
    /// Upper bound on the neglected tail `Σ_{m ≥ terms} c_m²`.
    pub tail_bound: f64,
}

/// `Σ_m m! |a_m|²` for the power series of `f`.
///
/// Summation stops once five consecutive terms fall below `1e-18` of the
/// running sum and the majorant ratio is below ½. The tail is bounded by
/// the geometric series of the majorant
/// `B_m = Σ_j |p_j| |μ|^{m−j} √(m!) / (m−j)!`, whose ratio
/// `|μ|√(m+1)/(m+1−deg)` decreases in m.
pub fn bargmann_norm(f: &PolyExp) -> BargmannNorm {
    let d = f.degree();
    let mu = f.rate.abs();
    let mut sum = 0.0;
    let mut small_run = 0;
    let mut chunk = 64;
    let mut start = 0;
    loop {
        let c = f.fock_coefficients(start + chunk);
        for (m, cm) in c.iter().enumerate().skip(start) {
            let t = cm * cm;
            sum += t;
            if t < 1e-18 * sum || t == 0.0 {
                small_run += 1;
            } else {
                small_run = 0;
            }
            let next = m + 1;
            let rho = if mu == 0.0 {
                0.0
            } else if next > d {
                mu * (next as f64 + 1.0).sqrt() / (next - d) as f64
            } else {
                f64::INFINITY
            };
            if m >= d && small_run >= 5 && rho < 0.5 {
                let b = majorant(f, next);
                return BargmannNorm {
                    value: sum,
                    terms: next,
                    tail_bound: b * b / (1.0 - rho * rho),
                };
            }
        }
        start += chunk;
        chunk *= 2;
    }
}

fn majorant(f: &PolyExp, m: usize) -> f64 {
    let mu = f.rate.abs();
    let mut s = 0.0;
    for (j, p) in f.poly.iter().enumerate() {
        if j > m {
            break;
        }
        let k = m - j;
        // |μ|^k √(m!) / k!, in logs
        let ln_fact = |n: usize| (1..=n).map(|i| (i as f64).ln()).sum::<f64>();
        let ln_mu = if k == 0 {
            0.0
        } else if mu == 0.0 {
            f64::NEG_INFINITY
        } else {
            k as f64 * mu.ln()
        };
        s += p.abs() * (ln_mu + 0.5 * ln_fact(m) - ln_fact(k)).exp();
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceTable {
    /// `(z, |f(z)|)` for z = 0, −1, …, down to `z_min`.
    pub rows: Vec<(f64, f64)>,
    pub norm: BargmannNorm,
}

/// Tabulates `|f|` along the negative real axis next to its Bargmann norm.
pub fn real_axis_divergence_demo(f: &PolyExp, z_min: f64) -> DivergenceTable {
    let steps = (-z_min).max(0.0).floor() as usize;
    let rows = (0..=steps)
        .map(|i| {
            let z = if i == 0 { 0.0 } else { -(i as f64) };
            (z, f.eval(z).abs())
        })
        .collect();
    DivergenceTable {
        rows,
        norm: bargmann_norm(f),
    }
}

/// Spin-basis Fock coefficients `(α_m, β_m)` of `ψ = φ₁|+x⟩ + φ₂|−x⟩`.
pub fn spin_coefficients(phi1: &PolyExp, phi2: &PolyExp, count: usize) -> (Vec<f64>, Vec<f64>) {
    let c1 = phi1.fock_coefficients(count);
    let c2 = phi2.fock_coefficients(count);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let alphas = c1.iter().zip(&c2).map(|(a, b)| (a - b) * s).collect();
    let betas = c1.iter().zip(&c2).map(|(a, b)| (a + b) * s).collect();
    (alphas, betas)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JuddReport {
    pub constraint_residual: f64,
    pub energy: f64,
    pub found_in_parity_plus: bool,
    pub found_in_parity_minus: bool,
    pub distance_parity_plus: f64,
    pub distance_parity_minus: f64,
    pub miller_defect: f64,
    pub nearest_zhang_distance: f64,
    pub ode_residual_max: f64,
    pub ode_residual_max_coeff: f64,
    pub pass: bool,
}

pub const JUDD_FOUND_TOL: f64 = 1e-8;
pub const MILLER_TOL: f64 = 1e-6;
pub const REFUTATION_FLOOR: f64 = 0.01;

/// Runs the whole chain at one constraint point: the energy `1 − g²` is in
/// both parity spectra, has a vanishing Miller defect, is away from every
/// claimed ladder level and solves the Bargmann equations exactly.
pub fn judd_cross_check(lambda: f64, g: f64) -> Result<JuddReport> {
    let cand = judd_candidate(lambda, g)?;
    let params = cand.point.params;
    let e = cand.point.energy;

    let k = ((e + g * g + lambda.abs()).ceil() as usize + 4).max(6);
    let conv = converge_spectrum(&params, k, 1e-12)?;
    let dist = |p: Parity| {
        conv.spectrum
            .sector(p)
            .iter()
            .map(|x| (x - e).abs())
            .fold(f64::INFINITY, f64::min)
    };
    let dp = dist(Parity::Plus);
    let dm = dist(Parity::Minus);
    let defect = miller_defect_auto(&params, e)?;
    let (_, nz) = nearest_zhang(&params, e);
    let ode = ode_residual(&cand.phi1, &cand.phi2, &params, e, &default_samples());

    let plus = dp < JUDD_FOUND_TOL;
    let minus = dm < JUDD_FOUND_TOL;
    Ok(JuddReport {
        constraint_residual: cand.point.constraint_residual,
        energy: e,
        found_in_parity_plus: plus,
        found_in_parity_minus: minus,
        distance_parity_plus: dp,
        distance_parity_minus: dm,
        miller_defect: defect,
        nearest_zhang_distance: nz,
        ode_residual_max: ode.max_abs,
        ode_residual_max_coeff: ode.max_coeff,
        pass: plus && minus && defect < MILLER_TOL && nz > REFUTATION_FLOOR && ode.identically_zero,
    })
}
