//! Free orthogonal quantum groups `O⁺(F)`: the `c` invariant, reciprocal random
//! walks, fusion matrices and presentations.
//!
//! Sign convention. `c_of_param` is `−ε Σ λ_i²` and `c_invariant` is
//! `sign(F F̄) Tr(F*F)`; for `F = F_{ε,λ}` they are negatives of each other.
//! The relation `U_{e,i}* = ε_iλ_i / (sgn(e)√w(e)) U_{ē,ī}` squares to the
//! identity only when `sign(δ) = ε`, so walks attached to `F` are checked
//! against `δ = c_invariant(F) = ε Σ λ_i²`.

mod fusion;
mod presentation;
mod walk;

pub use fusion::{fusion_matrices, qdim, quantum_integer, FusionLabel};
pub use presentation::{emit_presentation, podles_morita, Presentation, PresentationTarget, Relation, Term};
pub use walk::{chain_walk, norm_check, perron_walk, verify_walk, ChainKind, Edge, NormCheck, ReciprocalWalk, WalkFile, WalkReport};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numlin::{max_abs, CMatrix, C64};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OplusError {
    #[error("F F̄ is not a real scalar matrix (residual {0:e})")]
    NotOrthogonalType(f64),
    #[error("walk δ = {walk} does not match the parameter value {param}")]
    DeltaMismatch { walk: f64, param: f64 },
    #[error("graph is not connected")]
    NotConnected,
    #[error("Perron eigenvector is not positive")]
    PerronFailure,
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("negative entry {value} in M_{label} at ({row}, {col})")]
    NegativeEntry { label: String, row: usize, col: usize, value: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// `F_{ε,λ} e_i = ε_i λ_i e_ī`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FParam {
    pub bar: Vec<usize>,
    pub eps: Vec<i8>,
    pub lambda: Vec<f64>,
}

impl FParam {
    pub fn new(bar: Vec<usize>, eps: Vec<i8>, lambda: Vec<f64>) -> Result<Self, OplusError> {
        let n = bar.len();
        if eps.len() != n || lambda.len() != n || n == 0 {
            return Err(OplusError::Invalid("bar, eps and lambda must have equal nonzero length".into()));
        }
        for i in 0..n {
            if bar[i] >= n || bar[bar[i]] != i {
                return Err(OplusError::Invalid(format!("bar is not an involution at {i}")));
            }
            if eps[i].abs() != 1 {
                return Err(OplusError::Invalid(format!("eps[{i}] = {} is not a sign", eps[i])));
            }
            if !(lambda[i] > 0.0) {
                return Err(OplusError::Invalid(format!("lambda[{i}] = {} is not positive", lambda[i])));
            }
        }
        let e = eps[0] * eps[bar[0]];
        for i in 0..n {
            if eps[i] * eps[bar[i]] != e {
                return Err(OplusError::Invalid("ε_i ε_ī is not constant".into()));
            }
            if (lambda[i] * lambda[bar[i]] - 1.0).abs() > 1e-12 {
                return Err(OplusError::Invalid(format!("λ_{i} λ_ī ≠ 1")));
            }
        }
        Ok(FParam { bar, eps, lambda })
    }

    pub fn n(&self) -> usize {
        self.bar.len()
    }

    /// The parameter of `O⁺_N`.
    pub fn identity(n: usize) -> Self {
        FParam { bar: (0..n).collect(), eps: vec![1; n], lambda: vec![1.0; n] }
    }

    /// The parameter of `F_q = [[0, |q|^½], [−sgn(q)|q|^{−½}, 0]]`.
    pub fn su_q(q: f64) -> Result<Self, OplusError> {
        if q == 0.0 || q.abs() > 1.0 || !q.is_finite() {
            return Err(OplusError::ParamOutOfRange(format!("q = {q} not in [-1, 1] \\ {{0}}")));
        }
        let s = if q < 0.0 { 1 } else { -1 };
        FParam::new(vec![1, 0], vec![s, 1], vec![q.abs().powf(-0.5), q.abs().sqrt()])
    }

    /// `ε = ε_i ε_ī`.
    pub fn epsilon(&self) -> i8 {
        self.eps[0] * self.eps[self.bar[0]]
    }

    pub fn matrix(&self) -> CMatrix {
        let n = self.n();
        let mut f = CMatrix::zeros(n, n);
        for i in 0..n {
            f[(self.bar[i], i)] = C64::new(self.eps[i] as f64 * self.lambda[i], 0.0);
        }
        f
    }
}

/// `c_{ε,λ} = −ε Σ λ_i²`.
pub fn c_of_param(p: &FParam) -> f64 {
    -(p.epsilon() as f64) * p.lambda.iter().map(|l| l * l).sum::<f64>()
}

/// `c_F = sign(F F̄) Tr(F*F)`.
pub fn c_invariant(f: &CMatrix, tol: f64) -> Result<f64, OplusError> {
    let n = f.nrows();
    if f.ncols() != n || n == 0 {
        return Err(OplusError::Invalid("F must be square".into()));
    }
    let ffbar = f * f.map(|z| z.conj());
    let s = ffbar[(0, 0)];
    let res = max_abs(&(&ffbar - CMatrix::identity(n, n) * s)).max(s.im.abs());
    if res > tol || s.re == 0.0 {
        return Err(OplusError::NotOrthogonalType(res));
    }
    let tr = (f.adjoint() * f).trace().re;
    Ok(s.re.signum() * tr)
}

/// `c_{F1} = c_{F2}` within `1e-12` relative, after scaling both to `F F̄ = ±1`.
pub fn monoidally_equivalent(f1: &CMatrix, f2: &CMatrix, tol: f64) -> Result<bool, OplusError> {
    let (a, b) = (c_normalized(f1, tol)?, c_normalized(f2, tol)?);
    Ok((a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0))
}

/// `c` normalized so that `F F̄ = ±1`, as `c_invariant` of `F / √|F F̄|`.
pub fn c_normalized(f: &CMatrix, tol: f64) -> Result<f64, OplusError> {
    let ffbar = f * f.map(|z| z.conj());
    let s = ffbar[(0, 0)].re.abs();
    if s == 0.0 {
        return Err(OplusError::NotOrthogonalType(f64::INFINITY));
    }
    c_invariant(&(f / C64::new(s.sqrt(), 0.0)), tol)
}

#[cfg(test)]
mod tests;
