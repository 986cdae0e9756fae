//! Fusion matrices of walks and quantum dimensions.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{OplusError, ReciprocalWalk};

/// Half-integer spin label, stored as `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FusionLabel(pub u32);

impl FusionLabel {
    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Rounds to the nearest half-integer; rejects negatives and non-half-integers.
    pub fn from_f64(n: f64) -> Result<Self, OplusError> {
        let t = 2.0 * n;
        if !(t >= 0.0) || (t - t.round()).abs() > 1e-9 || t > u32::MAX as f64 {
            return Err(OplusError::ParamOutOfRange(format!("{n} is not a nonnegative half-integer")));
        }
        Ok(FusionLabel(t.round() as u32))
    }
}

impl fmt::Display for FusionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `M_0, M_{1/2}, …, M_n`, indexed by `2k`.
///
/// Rows of vertices within graph distance `2k` of a boundary vertex are not
/// checked for negativity; those entries are truncation artefacts.
pub fn fusion_matrices(walk: &ReciprocalWalk, up_to: FusionLabel) -> Result<Vec<DMatrix<f64>>, OplusError> {
    let n = walk.vertices.len();
    let a = walk.adjacency();
    let dist = walk.boundary_distance();
    let mut out = vec![DMatrix::identity(n, n)];
    if up_to.0 >= 1 {
        out.push(a.clone());
    }
    for t in 2..=up_to.0 as usize {
        let next = &out[t - 1] * &a - &out[t - 2];
        out.push(next);
    }
    for (t, m) in out.iter().enumerate() {
        for r in (0..n).filter(|&r| dist[r] == usize::MAX || dist[r] > t) {
            if let Some(c) = (0..n).find(|&c| m[(r, c)] < -1e-9) {
                return Err(OplusError::NegativeEntry { label: FusionLabel(t as u32).to_string(), row: r, col: c, value: m[(r, c)] });
            }
        }
    }
    Ok(out)
}

/// `d_0 = 1`, `d_{1/2} = |c|`, `d_{k+1/2} = d_k d_{1/2} − d_{k−1/2}`.
pub fn qdim(c: f64, n: FusionLabel) -> f64 {
    let c = c.abs();
    let (mut prev, mut cur) = (1.0, c);
    if n.0 == 0 {
        return 1.0;
    }
    for _ in 1..n.0 {
        let next = cur * c - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `[m]_q = (q^m − q^{−m}) / (q − q^{−1})`, with the limit `m` at `q = ±1`.
pub fn quantum_integer(m: u32, q: f64) -> f64 {
    if (q.abs() - 1.0).abs() < 1e-12 {
        return (m as f64) * q.signum().powi(m as i32 - 1);
    }
    (q.powi(m as i32) - q.powi(-(m as i32))) / (q - 1.0 / q)
}
