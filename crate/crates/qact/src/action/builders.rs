use super::{ActionError, Coaction};
use crate::hopf::{builders::restriction_to_subgroup, function_algebra, GroupTable, HopfStarAlgebra};
use crate::numlin::{kernel, max_abs_vec, CMatrix, CVector, Tolerance};

/// `(id ⊗ π_H)Δ`: the coaction of `C(H)` on `C(Γ)` by right translation.
pub fn restriction_coaction(g: &GroupTable, subgroup: &[usize]) -> Result<Coaction, ActionError> {
    let big = function_algebra(g);
    let (small, pi) = restriction_to_subgroup(g, subgroup)?;
    let alpha = pi_right(&pi, big.dim()) * big.comult_matrix();
    Coaction::new(big.algebra().clone(), small, alpha)
}

/// `id ⊗ π` on `ℂ^d ⊗ 𝒪(G)`.
fn pi_right(pi: &CMatrix, d: usize) -> CMatrix {
    CMatrix::identity(d, d).kronecker(pi)
}

/// Orthonormal basis of `{g : (π_H ⊗ id)Δ(g) = 1_H ⊗ g}`.
pub(crate) fn invariant_subspace(
    g: &HopfStarAlgebra,
    h: &HopfStarAlgebra,
    pi: &CMatrix,
    tol: &Tolerance,
) -> Result<CMatrix, ActionError> {
    let d = g.dim();
    if pi.shape() != (h.dim(), d) {
        return Err(ActionError::DimensionMismatch("quotient map shape".into()));
    }
    let lhs = pi.kronecker(&CMatrix::identity(d, d)) * g.comult_matrix();
    let one = CMatrix::from_column_slice(h.dim(), 1, h.unit().as_slice());
    let rhs = one.kronecker(&CMatrix::identity(d, d));
    Ok(kernel(&(lhs - rhs), tol)?)
}

/// `𝒪(H\G)` with the restricted comultiplication as a coaction of `G`.
pub fn invariant_subalgebra(
    g: &HopfStarAlgebra,
    h: &HopfStarAlgebra,
    pi: &CMatrix,
    tol: &Tolerance,
) -> Result<Coaction, ActionError> {
    let d = g.dim();
    let basis = invariant_subspace(g, h, pi, tol)?;
    let k = basis.ncols();
    let sub = g.algebra().subalgebra(&basis, tol)?;
    let coords = basis.adjoint().kronecker(&CMatrix::identity(d, d));
    let mut alpha = CMatrix::zeros(k * d, k);
    for j in 0..k {
        let b: CVector = basis.column(j).into_owned();
        let delta = g.comult(&b);
        let c = &coords * &delta;
        let back = basis.kronecker(&CMatrix::identity(d, d)) * &c;
        let res = max_abs_vec(&(back - &delta));
        if res > tol.abs_tol.max(1e-10) {
            return Err(ActionError::Invalid(format!("Δ leaves the invariant subalgebra (residual {res:e})")));
        }
        alpha.set_column(j, &c);
    }
    Coaction::new(sub, g.clone(), alpha)
}
