//! Block decomposition of a finite-dimensional C*-algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{c, hermitian_eigen, hermitian_fn, CMatrix, CVector, LinalgError, Result, Tolerance, C64, ZERO};
use crate::hopf::StarAlgebra;

const MAX_ATTEMPTS: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct WedderburnOptions {
    pub tol: Tolerance,
    pub seed: u64,
}

impl Default for WedderburnOptions {
    fn default() -> Self {
        WedderburnOptions { tol: Tolerance::default(), seed: 0 }
    }
}

/// One simple summand `M_n(ℂ)` of the algebra.
#[derive(Debug, Clone)]
pub struct WedderburnBlock {
    pub n: usize,
    /// `n² × dim` matrix of `a ↦ φ(a)`, row index `i * n + j`.
    pub map: CMatrix,
    /// Matrix units `e_ij` as algebra elements, same index convention.
    pub units: Vec<CVector>,
    pub central_projection: CVector,
}

impl WedderburnBlock {
    pub fn apply(&self, a: &CVector) -> CMatrix {
        let v = &self.map * a;
        CMatrix::from_fn(self.n, self.n, |i, j| v[i * self.n + j])
    }

    pub fn unit(&self, i: usize, j: usize) -> &CVector {
        &self.units[i * self.n + j]
    }

    /// `(Tr φ(e_0), Tr φ(e_1), …)`.
    pub fn trace_vector(&self) -> Vec<C64> {
        let dim = self.map.ncols();
        (0..dim)
            .map(|a| (0..self.n).fold(ZERO, |acc, i| acc + self.map[(i * self.n + i, a)]))
            .collect()
    }
}

/// Splits a semisimple *-algebra into matrix blocks.
///
/// Random Hermitian central elements give the minimal central projections; inside
/// each block a random Hermitian element gives minimal projections and from these
/// the matrix units. Blocks come out sorted by size, then by rounded trace vector.
pub fn wedderburn_blocks(a: &StarAlgebra, opts: &WedderburnOptions) -> Result<Vec<WedderburnBlock>> {
    let tol = opts.tol;
    let dim = a.dim();
    let tau = a.regular_trace();
    let gram = a.gram(&tau);
    let (gvals, _) = hermitian_eigen(&gram)?;
    let gmax = gvals.last().copied().unwrap_or(0.0);
    let gmin = gvals.first().copied().unwrap_or(0.0);
    if gmin <= tol.abs_tol * gmax.max(1.0) {
        return Err(LinalgError::NotSemisimple { min_eig: gmin });
    }
    // In coordinates y = R x the trace inner product becomes Euclidean, so
    // left multiplication by a Hermitian element becomes a Hermitian matrix.
    let r = hermitian_fn(&gram, f64::sqrt)?;
    let r_inv = hermitian_fn(&gram, |x| 1.0 / x.sqrt())?;
    let ctx = Ctx { a, tau: &tau, r: &r, r_inv: &r_inv, tol };

    let center = a.center(&tol).map_err(hopf_to_linalg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut blocks = None;
    for _ in 0..MAX_ATTEMPTS {
        let coeffs = CVector::from_fn(center.ncols(), |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let z = &center * coeffs;
        let h = hermitian_part(a, &z);
        if let Some(p) = ctx.spectral_pieces(&h, a.unit(), center.ncols()) {
            blocks = Some(p);
            break;
        }
    }
    let central = blocks.ok_or(LinalgError::SpectralCollision { attempts: MAX_ATTEMPTS })?;

    let mut out = Vec::with_capacity(central.len());
    for p in central {
        out.push(ctx.block(&p, &mut rng)?);
    }
    let total: usize = out.iter().map(|b| b.n * b.n).sum();
    if total != dim {
        return Err(LinalgError::DimensionMismatch {
            expected: format!("Σ n_k² = {dim}"),
            found: total.to_string(),
        });
    }
    out.sort_by(|x, y| x.n.cmp(&y.n).then_with(|| cmp_trace_vectors(&x.trace_vector(), &y.trace_vector())));
    Ok(out)
}

fn hopf_to_linalg(e: crate::hopf::HopfError) -> LinalgError {
    match e {
        crate::hopf::HopfError::Linalg(l) => l,
        other => LinalgError::DimensionMismatch { expected: "algebra".into(), found: other.to_string() },
    }
}

fn round6(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

fn cmp_trace_vectors(x: &[C64], y: &[C64]) -> std::cmp::Ordering {
    let key = |v: &[C64]| v.iter().flat_map(|z| [round6(z.re), round6(z.im)]).collect::<Vec<_>>();
    key(x).cmp(&key(y))
}

fn hermitian_part(a: &StarAlgebra, z: &CVector) -> CVector {
    (z + a.star(z)).scale(0.5)
}

struct Ctx<'a> {
    a: &'a StarAlgebra,
    tau: &'a CVector,
    r: &'a CMatrix,
    r_inv: &'a CMatrix,
    tol: Tolerance,
}

impl Ctx<'_> {
    fn trace(&self, x: &CVector) -> C64 {
        self.tau.dot(x)
    }

    /// Decomposes `target` along the eigenspaces of left multiplication by the
    /// Hermitian `h`; returns the nonzero pieces if there are exactly `expected`.
    fn spectral_pieces(&self, h: &CVector, target: &CVector, expected: usize) -> Option<Vec<CVector>> {
        let lh = self.r * self.a.left_mult(h) * self.r_inv;
        let (vals, vecs) = hermitian_eigen(&lh).ok()?;
        let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let gap = 10.0 * self.tol.abs_tol * scale;
        let y = self.r * target;
        let tnorm = target.norm();
        let mut pieces = Vec::new();
        for cl in super::cluster_sorted(&vals, gap) {
            let cols = vecs.columns(cl[0], cl.len());
            let proj = &cols * (cols.adjoint() * &y);
            let piece = self.r_inv * proj;
            if piece.norm() > 1e3 * self.tol.abs_tol * tnorm.max(1.0) {
                pieces.push(piece);
            }
        }
        // Distinct eigenvalues closer than the gap but farther than rounding noise
        // make the pieces inexact; detect it by idempotency.
        let ok = pieces.len() == expected
            && pieces.iter().all(|p| {
                let pp = self.a.product(p, p);
                super::max_abs_diff(&pp, p) <= 1e3 * self.tol.abs_tol.max(1e-12) * p.norm().max(1.0)
            });
        ok.then_some(pieces)
    }

    fn block(&self, p: &CVector, rng: &mut ChaCha8Rng) -> Result<WedderburnBlock> {
        let a = self.a;
        let dim = a.dim();
        // The regular trace of the unit of M_n is n².
        let tp = self.trace(p).re;
        let n = tp.sqrt().round() as usize;
        if n == 0 || ((n * n) as f64 - tp).abs() > 1e-6 * tp.max(1.0) {
            return Err(LinalgError::DimensionMismatch { expected: "square trace".into(), found: format!("{tp}") });
        }
        let mut qs = None;
        for _ in 0..MAX_ATTEMPTS {
            if n == 1 {
                qs = Some(vec![p.clone()]);
                break;
            }
            let r = CVector::from_fn(dim, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let x = a.product(p, &hermitian_part(a, &r));
            if let Some(found) = self.spectral_pieces(&x, p, n) {
                qs = Some(found);
                break;
            }
        }
        let qs = qs.ok_or(LinalgError::SpectralCollision { attempts: MAX_ATTEMPTS })?;
        let q1 = &qs[0];
        let tq1 = self.trace(q1).re;
        // v_i spans q_i A q_1, normalized so that v_i* v_i = q_1.
        let mut vs = vec![q1.clone()];
        for qi in qs.iter().skip(1) {
            let mut best: Option<CVector> = None;
            for _ in 0..MAX_ATTEMPTS {
                let r = CVector::from_fn(dim, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                let v = a.product(&a.product(qi, &r), q1);
                let nrm = self.trace(&a.product(&a.star(&v), &v)).re / tq1;
                if nrm > 1e-6 {
                    best = Some(v.unscale(nrm.sqrt()));
                    break;
                }
            }
            vs.push(best.ok_or(LinalgError::SpectralCollision { attempts: MAX_ATTEMPTS })?);
        }
        let vstars: Vec<CVector> = vs.iter().map(|v| a.star(v)).collect();
        let mut units = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                units.push(a.product(&vs[i], &vstars[j]));
            }
        }
        // φ(a)_ij = τ(v_i* a v_j) / τ(q_1); linear in a.
        let mut map = CMatrix::zeros(n * n, dim);
        for i in 0..n {
            let left = a.left_mult(&vstars[i]);
            for j in 0..n {
                let right = a.right_mult(&vs[j]);
                let row = (self.tau.transpose() * &left * &right).unscale(tq1);
                map.set_row(i * n + j, &row);
            }
        }
        Ok(WedderburnBlock { n, map, units, central_projection: p.clone() })
    }
}
