//! Irreducible equivariant modules via the crossed product, fusion matrices, stabilization.

use nalgebra::DMatrix;

use super::{fixed_points, is_homogeneous, ActionError, Coaction, IrrepData};
use crate::corep::Corepresentation;
use crate::hopf::{haar_state, HopfStarAlgebra, StarAlgebra};
use crate::numlin::{kron, max_abs, range_basis, wedderburn_blocks, CMatrix, CVector, Tolerance, WedderburnOptions, ZERO};
use crate::products::crossed_product;

/// One irreducible equivariant module, i.e. a simple summand of `A ⋊ Ĝ`.
#[derive(Debug, Clone)]
pub struct EquivariantBlock {
    pub n: usize,
    /// `ρ(e_a)`, the action of `A`.
    pub rho: Vec<CMatrix>,
    /// `Π(f_g)`, the action of the dual basis of `𝒪(Ĝ)`.
    pub pi: Vec<CMatrix>,
    /// Central projection of the block in crossed-product coordinates.
    pub central: CVector,
}

fn product_err(e: crate::products::ProductError) -> ActionError {
    match e {
        crate::products::ProductError::Action(a) => a,
        other => ActionError::Invalid(other.to_string()),
    }
}

pub fn equivariant_blocks(alpha: &Coaction, tol: &Tolerance, seed: u64) -> Result<Vec<EquivariantBlock>, ActionError> {
    let fixed = fixed_points(alpha, tol)?.ncols();
    if fixed != 1 {
        return Err(ActionError::NotHomogeneous(fixed));
    }
    let (da, dg) = (alpha.algebra().dim(), alpha.hopf().dim());
    let cp = crossed_product(alpha, tol).map_err(product_err)?;
    let blocks = wedderburn_blocks(&cp.algebra, &WedderburnOptions { tol: *tol, seed })?;
    let eps = alpha.hopf().counit().clone();
    let unit_a = alpha.algebra().unit().clone();
    Ok(blocks
        .into_iter()
        .map(|b| {
            let rho = (0..da)
                .map(|a| b.apply(&CVector::from_fn(da * dg, |x, _| if x / dg == a { eps[x % dg] } else { ZERO })))
                .collect();
            let pi = (0..dg)
                .map(|g| b.apply(&CVector::from_fn(da * dg, |x, _| if x % dg == g { unit_a[x / dg] } else { ZERO })))
                .collect();
            EquivariantBlock { n: b.n, rho, pi, central: b.central_projection.clone() }
        })
        .collect())
}

/// `M(π)_{jk}`: multiplicity of block `k` in `H_π ⊗ E_j`.
pub fn fusion_matrix(
    alpha: &Coaction,
    blocks: &[EquivariantBlock],
    u: &Corepresentation,
    tol: &Tolerance,
) -> Result<DMatrix<i64>, ActionError> {
    let h = alpha.hopf();
    let (da, dg) = (alpha.algebra().dim(), h.dim());
    let n = u.dim();
    // [e_h U_pq]_g
    let prods: Vec<Vec<CVector>> =
        (0..dg).map(|hh| (0..n * n).map(|pq| h.product(&h.basis(hh), u.entry(pq / n, pq % n))).collect()).collect();
    let cp = crossed_product(alpha, tol).map_err(product_err)?;
    let mut m = DMatrix::<i64>::zeros(blocks.len(), blocks.len());
    let check_tol = tol.abs_tol.max(1e-8);
    for (j, b) in blocks.iter().enumerate() {
        let nj = b.n;
        let pi_w: Vec<CMatrix> = (0..dg)
            .map(|g| {
                let mut out = CMatrix::zeros(n * nj, n * nj);
                for (hh, row) in prods.iter().enumerate() {
                    for (pq, v) in row.iter().enumerate() {
                        let c = v[g];
                        if c != ZERO {
                            let mut e = CMatrix::zeros(n, n);
                            e[(pq / n, pq % n)] = c;
                            out += kron(&e, &b.pi[hh]);
                        }
                    }
                }
                out
            })
            .collect();
        let id = CMatrix::identity(n, n);
        let rho_w: Vec<CMatrix> = b.rho.iter().map(|r| kron(&id, r)).collect();
        let rep: Vec<CMatrix> = (0..da * dg).map(|x| &rho_w[x / dg] * &pi_w[x % dg]).collect();
        let apply = |v: &CVector| -> CMatrix {
            v.iter().zip(&rep).fold(CMatrix::zeros(n * nj, n * nj), |acc, (c, r)| if *c == ZERO { acc } else { acc + r * *c })
        };
        let mut hom: f64 = 0.0;
        for x in 0..da * dg {
            for y in 0..da * dg {
                hom = hom.max(max_abs(&(apply(&cp.algebra.basis_product(x, y)) - &rep[x] * &rep[y])));
            }
        }
        if hom > check_tol * 100.0 {
            return Err(ActionError::Invalid(format!("tensor module is not a representation (residual {hom:e})")));
        }
        for (k, bk) in blocks.iter().enumerate() {
            let mult = apply(&bk.central).trace().re / bk.n as f64;
            let r = mult.round();
            if (mult - r).abs() > 1e-6 || r < 0.0 {
                return Err(ActionError::NonIntegerMultiplicity(mult));
            }
            m[(j, k)] = r as i64;
        }
    }
    Ok(m)
}

/// `X_stab` as a corner of `B(⊕_π H_π) ⊗ A`.
#[derive(Debug, Clone)]
pub struct Stabilization {
    pub coaction: Coaction,
    /// Number of irreducible equivariant modules, equal to `dim` of the fixed points.
    pub blocks: usize,
    /// Cut-down projection in `M_N ⊗ A` coordinates.
    pub projection: CVector,
    /// Orthonormal basis of the corner inside `M_N ⊗ A`.
    pub embedding: CMatrix,
}

fn stab_beta(alpha: &Coaction, u: &Corepresentation, x: &CVector) -> CVector {
    let a = alpha.algebra();
    let h = alpha.hopf();
    let (da, dg) = (a.dim(), h.dim());
    let n = u.dim();
    let am = alpha.alpha_matrix();
    let mut out = CVector::zeros(n * n * da * dg);
    let stars: Vec<CVector> = (0..n * n).map(|k| h.star(u.entry(k / n, k % n))).collect();
    for (idx, coef) in x.iter().enumerate() {
        if *coef == ZERO {
            continue;
        }
        let (ij, ai) = (idx / da, idx % da);
        let (i, j) = (ij / n, ij % n);
        for row in 0..da * dg {
            let c = am[(row, ai)];
            if c == ZERO {
                continue;
            }
            let (ci, ki) = (row / dg, row % dg);
            for p in 0..n {
                let left = h.product(u.entry(p, i), &h.basis(ki));
                for q in 0..n {
                    let g = h.product(&left, &stars[q * n + j]);
                    let base = ((p * n + q) * da + ci) * dg;
                    for (t, z) in g.iter().enumerate() {
                        out[base + t] += coef * c * z;
                    }
                }
            }
        }
    }
    out
}

/// Direct sum of the given irreducibles, normalized to the identity inner product.
fn regular_sum(irreps: &[IrrepData]) -> Result<Corepresentation, ActionError> {
    let mut u: Option<Corepresentation> = None;
    for ir in irreps {
        let (w, _) = ir.irrep.normalized()?;
        u = Some(match u {
            None => w,
            Some(prev) => crate::corep::direct_sum(&prev, &w)?,
        });
    }
    u.ok_or_else(|| ActionError::Invalid("no irreducibles supplied".into()))
}

/// The coaction `β` on all of `B(⊕_π H_π) ⊗ A`.
#[cfg(test)]
pub(crate) fn ambient_coaction(alpha: &Coaction, irreps: &[IrrepData]) -> Result<Coaction, ActionError> {
    let u = regular_sum(irreps)?;
    let ambient = StarAlgebra::full_matrix(u.dim()).tensor(alpha.algebra());
    let d = ambient.dim();
    let mut beta = CMatrix::zeros(d * alpha.hopf().dim(), d);
    for x in 0..d {
        beta.set_column(x, &stab_beta(alpha, &u, &ambient.basis(x)));
    }
    Coaction::new(ambient, alpha.hopf().clone(), beta)
}

/// `β(x) = U_13 (id ⊗ α)(x) U_13*` on `B(⊕_π H_π) ⊗ A`, cut down by a projection
/// that meets every block of the fixed-point algebra in a minimal projection.
pub fn stabilize(alpha: &Coaction, irreps: &[IrrepData], tol: &Tolerance, seed: u64) -> Result<Stabilization, ActionError> {
    if !is_homogeneous(alpha, tol)? {
        return Err(ActionError::NotHomogeneous(fixed_points(alpha, tol)?.ncols()));
    }
    let h: &HopfStarAlgebra = alpha.hopf();
    let a = alpha.algebra();
    let dg = h.dim();
    let u = regular_sum(irreps)?;
    let n = u.dim();
    let ambient = StarAlgebra::full_matrix(n).tensor(a);
    let dm = ambient.dim();
    let phi = haar_state(h, tol)?.phi;
    let mut expect = CMatrix::zeros(dm, dm);
    for x in 0..dm {
        let b = stab_beta(alpha, &u, &ambient.basis(x));
        expect.set_column(x, &CVector::from_fn(dm, |r, _| (0..dg).fold(ZERO, |acc, g| acc + b[r * dg + g] * phi[g])));
    }
    let fixed_basis = range_basis(&expect, tol)?;
    let fixed = ambient.subalgebra(&fixed_basis, &Tolerance { abs_tol: tol.abs_tol.max(1e-8), ..*tol })?;
    let blocks = wedderburn_blocks(&fixed, &WedderburnOptions { tol: *tol, seed })?;
    let p_local = blocks.iter().fold(CVector::zeros(fixed.dim()), |acc, b| acc + b.unit(0, 0));
    let p = &fixed_basis * p_local;
    let (algebra, emb) = ambient.corner(&p, &Tolerance { abs_tol: tol.abs_tol.max(1e-8), ..*tol })?;
    let k = emb.ncols();
    let mut alpha_s = CMatrix::zeros(k * dg, k);
    let proj = emb.adjoint().kronecker(&CMatrix::identity(dg, dg));
    for x in 0..k {
        let b = stab_beta(alpha, &u, &emb.column(x).into_owned());
        alpha_s.set_column(x, &(&proj * b));
    }
    let coaction = Coaction::new(algebra, h.clone(), alpha_s)?;
    Ok(Stabilization { coaction, blocks: blocks.len(), projection: p, embedding: emb })
}
