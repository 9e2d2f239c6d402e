//! Model parameters and truncated Hamiltonian matrices.
//!
//! The Rabi Hamiltonian is
//!
//! ```text
//! H = ω a†a + g (a + a†) σx + λ σz + ε σx
//! ```
//!
//! acting on Fock ⊗ spin. Dense matrices use the interleaved basis
//! `|0,↓⟩, |0,↑⟩, |1,↓⟩, |1,↑⟩, …` with `σz|↓⟩ = −|↓⟩`.
//!
//! At ε = 0 the operator `Π = σz (−1)^{a†a}` commutes with H. Each sector
//! contains exactly one state per Fock number m, namely `|m, s·(−1)^m⟩` where
//! `s` is the spin of the m = 0 state, so the block is tridiagonal in m with
//! `diag[m] = ωm + pλ(−1)^m` and `offdiag[m] = g√(m+1)`. The parity label `p`
//! is the eigenvalue of Π.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Couplings of the (asymmetric) Rabi Hamiltonian, all in one energy unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub omega: f64,
    pub g: f64,
    pub lambda: f64,
    pub epsilon: f64,
}

impl ModelParams {
    pub fn new(omega: f64, g: f64, lambda: f64, epsilon: f64) -> Result<Self> {
        let p = ModelParams {
            omega,
            g,
            lambda,
            epsilon,
        };
        p.validate()?;
        Ok(p)
    }

    /// Symmetric model (ε = 0).
    pub fn symmetric(omega: f64, g: f64, lambda: f64) -> Result<Self> {
        Self::new(omega, g, lambda, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidParams(format!(
                "omega must be finite and > 0, got {}",
                self.omega
            )));
        }
        if !(self.g.is_finite() && self.g >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "g must be finite and >= 0, got {}",
                self.g
            )));
        }
        if !self.lambda.is_finite() || !self.epsilon.is_finite() {
            return Err(Error::InvalidParams(
                "lambda and epsilon must be finite".into(),
            ));
        }
        Ok(())
    }

    pub fn require_symmetric(&self) -> Result<()> {
        if self.epsilon != 0.0 {
            return Err(Error::ParityBroken(self.epsilon));
        }
        Ok(())
    }

    /// Rescales into the ω = 1 frame. Energies computed there must be
    /// multiplied by the returned ω to come back.
    pub fn to_unit_frame(&self) -> (ModelParams, f64) {
        let w = self.omega;
        (
            ModelParams {
                omega: 1.0,
                g: self.g / w,
                lambda: self.lambda / w,
                epsilon: self.epsilon / w,
            },
            w,
        )
    }
}

/// Number of retained Fock levels `0..n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Truncation {
    pub n_max: usize,
}

impl Truncation {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::Truncation(n_max));
        }
        Ok(Truncation { n_max })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Plus, Parity::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }

    pub fn from_sign(s: i32) -> Option<Self> {
        match s {
            1 => Some(Parity::Plus),
            -1 => Some(Parity::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Plus => f.write_str("+1"),
            Parity::Minus => f.write_str("-1"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    /// Eigenvalue of σz.
    pub fn sz(self) -> f64 {
        match self {
            Spin::Down => -1.0,
            Spin::Up => 1.0,
        }
    }
}

/// Real symmetric tridiagonal block of one parity sector.
#[derive(Debug, Clone, PartialEq)]
pub struct TriBlock {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    pub parity: Option<Parity>,
    pub params: Option<ModelParams>,
}

impl TriBlock {
    /// A bare tridiagonal matrix not tied to a model.
    pub fn from_parts(diag: Vec<f64>, offdiag: Vec<f64>) -> Self {
        assert!(
            !diag.is_empty() && offdiag.len() + 1 == diag.len(),
            "offdiag must be one shorter than diag"
        );
        TriBlock {
            diag,
            offdiag,
            parity: None,
            params: None,
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }
}

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSym {
    pub dim: usize,
    pub entries: Vec<f64>,
    pub basis: Vec<(usize, Spin)>,
}

impl DenseSym {
    fn zeros_fock_spin(n_max: usize) -> Self {
        let dim = 2 * n_max;
        let basis = (0..n_max)
            .flat_map(|m| [(m, Spin::Down), (m, Spin::Up)])
            .collect();
        DenseSym {
            dim,
            entries: vec![0.0; dim * dim],
            basis,
        }
    }

    /// Builds a matrix from a row-major array; only the upper triangle is read.
    pub fn from_upper(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        let mut m = DenseSym {
            dim,
            entries: vec![0.0; dim * dim],
            basis: Vec::new(),
        };
        for i in 0..dim {
            for j in i..dim {
                m.set_sym(i, j, entries[i * dim + j]);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.dim + j] = v;
        self.entries[j * self.dim + i] = v;
    }

    /// Basis index of `|m, s⟩`.
    pub fn index(m: usize, s: Spin) -> usize {
        2 * m
            + match s {
                Spin::Down => 0,
                Spin::Up => 1,
            }
    }

    pub fn element(&self, bra: (usize, Spin), ket: (usize, Spin)) -> f64 {
        self.get(Self::index(bra.0, bra.1), Self::index(ket.0, ket.1))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Off-diagonal pairs `(i, j, value)` with `i < j` and nonzero value.
    pub fn couplings(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let v = self.get(i, j);
                if v != 0.0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }
}

fn free_part(params: &ModelParams, trunc: Truncation) -> DenseSym {
    let mut h = DenseSym::zeros_fock_spin(trunc.n_max);
    for m in 0..trunc.n_max {
        for s in [Spin::Down, Spin::Up] {
            let i = DenseSym::index(m, s);
            h.set_sym(i, i, params.omega * m as f64 + params.lambda * s.sz());
        }
    }
    h
}

fn checked(params: &ModelParams, trunc: Truncation) -> Result<()> {
    params.validate()?;
    Truncation::new(trunc.n_max)?;
    Ok(())
}

/// Full Rabi Hamiltonian `ωa†a + g(a+a†)σx + λσz + εσx` on 2N states.
pub fn build_full(params: &ModelParams, trunc: Truncation) -> Result<DenseSym> {
    checked(params, trunc)?;
    let mut h = free_part(params, trunc);
    for m in 0..trunc.n_max {
        if params.epsilon != 0.0 {
            h.set_sym(
                DenseSym::index(m, Spin::Down),
                DenseSym::index(m, Spin::Up),
                params.epsilon,
            );
        }
        if m + 1 < trunc.n_max {
            let c = params.g * ((m + 1) as f64).sqrt();
            h.set_sym(
                DenseSym::index(m, Spin::Down),
                DenseSym::index(m + 1, Spin::Up),
                c,
            );
            h.set_sym(
                DenseSym::index(m, Spin::Up),
                DenseSym::index(m + 1, Spin::Down),
                c,
            );
        }
    }
    Ok(h)
}

/// Jaynes-Cummings `ωa†a + g(aσ⁺ + a†σ⁻) + λσz`: couples `|n+1,↓⟩ ↔ |n,↑⟩`.
pub fn build_jc(params: &ModelParams, trunc: Truncation) -> Result<DenseSym> {
    checked(params, trunc)?;
    let mut h = free_part(params, trunc);
    for n in 0..trunc.n_max - 1 {
        h.set_sym(
            DenseSym::index(n + 1, Spin::Down),
            DenseSym::index(n, Spin::Up),
            params.g * ((n + 1) as f64).sqrt(),
        );
    }
    Ok(h)
}

/// Anti-Jaynes-Cummings `ωa†a + g(aσ⁻ + a†σ⁺) + λσz`: couples `|n+1,↑⟩ ↔ |n,↓⟩`.
pub fn build_ajc(params: &ModelParams, trunc: Truncation) -> Result<DenseSym> {
    checked(params, trunc)?;
    let mut h = free_part(params, trunc);
    for n in 0..trunc.n_max - 1 {
        h.set_sym(
            DenseSym::index(n + 1, Spin::Up),
            DenseSym::index(n, Spin::Down),
            params.g * ((n + 1) as f64).sqrt(),
        );
    }
    Ok(h)
}

/// Tridiagonal block of parity `p` (ε must be 0).
pub fn build_parity_block(params: &ModelParams, trunc: Truncation, p: Parity) -> Result<TriBlock> {
    checked(params, trunc)?;
    params.require_symmetric()?;
    let n = trunc.n_max;
    let diag = (0..n)
        .map(|m| {
            let alt = if m % 2 == 0 { 1.0 } else { -1.0 };
            params.omega * m as f64 + p.sign() * params.lambda * alt
        })
        .collect();
    let offdiag = (0..n - 1)
        .map(|m| params.g * ((m + 1) as f64).sqrt())
        .collect();
    Ok(TriBlock {
        diag,
        offdiag,
        parity: Some(p),
        params: Some(*params),
    })
}

/// The basis state of the dense matrix that sits at position `m` of the
/// parity-`p` chain.
pub fn parity_chain_state(p: Parity, m: usize) -> (usize, Spin) {
    let up_at_zero = p == Parity::Plus;
    let up = if m.is_multiple_of(2) {
        up_at_zero
    } else {
        !up_at_zero
    };
    (m, if up { Spin::Up } else { Spin::Down })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(g: f64, lambda: f64, eps: f64) -> ModelParams {
        ModelParams::new(1.0, g, lambda, eps).unwrap()
    }

    #[test]
    fn uncoupled_full_is_diagonal() {
        let h = build_full(&p(0.0, 0.3, 0.0), Truncation::new(2).unwrap()).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| h.get(i, i)).collect();
        assert_eq!(diag, vec![-0.3, 0.3, 0.7, 1.3]);
        assert!(h.couplings().is_empty());
    }

    #[test]
    fn full_couplings() {
        let h = build_full(&p(0.5, 0.3, 0.0), Truncation::new(2).unwrap()).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| h.get(i, i)).collect();
        assert_eq!(diag, vec![-0.3, 0.3, 0.7, 1.3]);
        assert_eq!(h.element((0, Spin::Down), (1, Spin::Up)), 0.5);
        assert_eq!(h.element((0, Spin::Up), (1, Spin::Down)), 0.5);
        assert_eq!(h.couplings().len(), 2);
    }

    #[test]
    fn full_with_asymmetry() {
        let h = build_full(&p(0.5, 0.3, 0.1), Truncation::new(2).unwrap()).unwrap();
        assert_eq!(h.element((0, Spin::Down), (0, Spin::Up)), 0.1);
        assert_eq!(h.element((1, Spin::Down), (1, Spin::Up)), 0.1);
        assert_eq!(h.element((0, Spin::Down), (1, Spin::Up)), 0.5);
        assert_eq!(h.couplings().len(), 4);
    }

    #[test]
    fn rejects_small_truncation() {
        assert_eq!(Truncation::new(1), Err(Error::Truncation(1)));
        let bad = Truncation { n_max: 1 };
        assert!(build_full(&p(0.5, 0.3, 0.0), bad).is_err());
        assert!(build_jc(&p(0.5, 0.3, 0.0), bad).is_err());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(0.0, 0.1, 0.1, 0.0).is_err());
        assert!(ModelParams::new(1.0, -0.1, 0.1, 0.0).is_err());
        assert!(ModelParams::new(1.0, 0.1, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn parity_block_plus() {
        let b = build_parity_block(&p(0.5, 0.3, 0.0), Truncation::new(3).unwrap(), Parity::Plus)
            .unwrap();
        assert_eq!(b.diag, vec![0.3, 0.7, 2.3]);
        assert_eq!(b.offdiag[0], 0.5);
        assert!((b.offdiag[1] - 0.707_106_781_186_547_5).abs() < 1e-15);
    }

    #[test]
    fn parity_block_minus_uncoupled() {
        let b = build_parity_block(
            &p(0.0, 0.3, 0.0),
            Truncation::new(3).unwrap(),
            Parity::Minus,
        )
        .unwrap();
        assert_eq!(b.diag, vec![-0.3, 1.3, 1.7]);
        assert_eq!(b.offdiag, vec![0.0, 0.0]);
    }

    #[test]
    fn parity_block_rejects_asymmetry() {
        let err = build_parity_block(&p(0.5, 0.3, 0.1), Truncation::new(3).unwrap(), Parity::Plus)
            .unwrap_err();
        assert_eq!(err, Error::ParityBroken(0.1));
        assert!(err.to_string().contains("parity broken"));
    }

    #[test]
    fn jc_and_ajc_elements() {
        let params = p(0.2, 0.3, 0.0);
        let t = Truncation::new(2).unwrap();
        let jc = build_jc(&params, t).unwrap();
        assert_eq!(jc.element((1, Spin::Down), (0, Spin::Up)), 0.2);
        assert_eq!(jc.element((0, Spin::Down), (1, Spin::Up)), 0.0);
        let ajc = build_ajc(&params, t).unwrap();
        assert_eq!(ajc.element((0, Spin::Down), (1, Spin::Up)), 0.2);
        assert_eq!(ajc.element((1, Spin::Down), (0, Spin::Up)), 0.0);
    }

    #[test]
    fn jc_plus_ajc_is_rabi_coupling() {
        let params = p(0.37, 0.21, 0.0);
        let t = Truncation::new(7).unwrap();
        let full = build_full(&params, t).unwrap();
        let mut union = build_jc(&params, t).unwrap().couplings();
        union.extend(build_ajc(&params, t).unwrap().couplings());
        union.sort_by_key(|c| (c.0, c.1));
        assert_eq!(full.couplings(), union);
    }

    #[test]
    fn full_is_bitwise_symmetric() {
        let h = build_full(&p(0.81, -0.4, 0.13), Truncation::new(9).unwrap()).unwrap();
        for i in 0..h.dim {
            for j in 0..h.dim {
                assert_eq!(h.get(i, j).to_bits(), h.get(j, i).to_bits());
            }
        }
    }

    #[test]
    fn block_closed_form_reevaluated() {
        let params = ModelParams::new(1.7, 0.33, -0.45, 0.0).unwrap();
        let t = Truncation::new(25).unwrap();
        for par in Parity::BOTH {
            let b = build_parity_block(&params, t, par).unwrap();
            for n in 0..25 {
                let expect = 1.7 * n as f64 + par.sign() * -0.45 * (-1f64).powi(n as i32);
                assert!((b.diag[n] - expect).abs() < 1e-14);
            }
            for n in 0..24 {
                assert!((b.offdiag[n] - 0.33 * ((n + 1) as f64).sqrt()).abs() < 1e-15);
                assert!(b.offdiag[n] >= 0.0);
            }
        }
    }

    #[test]
    fn parity_permutation_block_diagonalizes_full() {
        let params = p(0.6, 0.25, 0.0);
        let n = 8;
        let t = Truncation::new(n).unwrap();
        let full = build_full(&params, t).unwrap();
        for par in Parity::BOTH {
            let b = build_parity_block(&params, t, par).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let v = full.element(parity_chain_state(par, i), parity_chain_state(par, j));
                    let expect = if i == j {
                        b.diag[i]
                    } else if j == i + 1 {
                        b.offdiag[i]
                    } else if i == j + 1 {
                        b.offdiag[j]
                    } else {
                        0.0
                    };
                    assert!((v - expect).abs() < 1e-15, "({i},{j})");
                }
            }
        }
        // no coupling between sectors
        for i in 0..n {
            for j in 0..n {
                let v = full.element(
                    parity_chain_state(Parity::Plus, i),
                    parity_chain_state(Parity::Minus, j),
                );
                assert_eq!(v, 0.0);
            }
        }
    }

    #[test]
    fn unit_frame() {
        let (u, w) = ModelParams::new(2.0, 1.0, 0.5, 0.0)
            .unwrap()
            .to_unit_frame();
        assert_eq!(w, 2.0);
        assert_eq!((u.omega, u.g, u.lambda), (1.0, 0.5, 0.25));
    }
}
