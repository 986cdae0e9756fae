//! Coactions `α: A → A ⊗ 𝒪(G)` of finite quantum groups on finite-dimensional *-algebras.

mod builders;
mod equivariant;

pub use builders::{invariant_subalgebra, restriction_coaction};
pub use equivariant::{equivariant_blocks, fusion_matrix, stabilize, EquivariantBlock, Stabilization};

use thiserror::Error;

use crate::corep::{character, irreducibles, q_matrix, CorepError, Corepresentation, QMatrix};
use crate::hopf::{haar_state, modular_automorphism, tensor_mul, tensor_star, Functional, HopfError, HopfStarAlgebra, StarAlgebra};
use crate::numlin::{
    hermitian_fn, is_psd, kernel, kron_vec, lstsq, max_abs, max_abs_vec, numerical_rank, wedderburn_blocks, CMatrix,
    CVector, LinalgError, Tolerance, WedderburnOptions, ONE, ZERO,
};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ActionError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("isotypical projections do not sum to the identity (residual {0:e})")]
    IncompleteIrreducibleList(f64),
    #[error("action is not homogeneous (fixed points of dimension {0})")]
    NotHomogeneous(usize),
    #[error("modular automorphism could not be solved")]
    ModularSolveFailed,
    #[error("torsor certificates disagree: free∧homogeneous={0}, unitary={1}, multiplicities={2}")]
    CertificateDisagreement(bool, bool, bool),
    #[error("multiplicity {0} is not within 1e-6 of an integer")]
    NonIntegerMultiplicity(f64),
    #[error("algebra has no character")]
    NoCharacter,
    #[error("invalid coaction: {0}")]
    Invalid(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Corep(#[from] CorepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Right coaction. Column `a` of `alpha` is `α(e_a)` in `A ⊗ 𝒪(G)`, index `b * dim G + g`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coaction {
    algebra: StarAlgebra,
    hopf: HopfStarAlgebra,
    alpha: CMatrix,
}

impl Coaction {
    pub fn new(algebra: StarAlgebra, hopf: HopfStarAlgebra, alpha: CMatrix) -> Result<Self, ActionError> {
        let (da, dg) = (algebra.dim(), hopf.dim());
        if alpha.shape() != (da * dg, da) {
            return Err(ActionError::DimensionMismatch(format!(
                "alpha is {}x{}, expected {}x{da}",
                alpha.nrows(),
                alpha.ncols(),
                da * dg
            )));
        }
        Ok(Coaction { algebra, hopf, alpha })
    }

    /// `a ↦ a ⊗ 1`.
    pub fn trivial(algebra: StarAlgebra, hopf: HopfStarAlgebra) -> Self {
        let da = algebra.dim();
        let alpha = CMatrix::from_fn(da * hopf.dim(), da, |r, a| {
            if r / hopf.dim() == a {
                hopf.unit()[r % hopf.dim()]
            } else {
                ZERO
            }
        });
        Coaction { algebra, hopf, alpha }
    }

    /// `Δ` as a coaction of `G` on itself.
    pub fn comultiplication(hopf: &HopfStarAlgebra) -> Self {
        Coaction { algebra: hopf.algebra().clone(), hopf: hopf.clone(), alpha: hopf.comult_matrix().clone() }
    }

    /// `x ↦ U(x ⊗ 1)U*` on `B(H)` for a corep `U` (normalized to the standard inner product first).
    pub fn adjoint(u: &Corepresentation, hopf: &HopfStarAlgebra) -> Result<Self, ActionError> {
        let (w, _) = u.normalized()?;
        let n = w.dim();
        let dg = hopf.dim();
        let stars: Vec<CVector> = w.entries().iter().map(|e| hopf.star(e)).collect();
        let mut alpha = CMatrix::zeros(n * n * dg, n * n);
        for k in 0..n {
            for l in 0..n {
                for i in 0..n {
                    for ip in 0..n {
                        let coeff = hopf.product(w.entry(i, k), &stars[ip * n + l]);
                        let row = (i * n + ip) * dg;
                        for g in 0..dg {
                            alpha[(row + g, k * n + l)] += coeff[g];
                        }
                    }
                }
            }
        }
        Coaction::new(StarAlgebra::full_matrix(n), hopf.clone(), alpha)
    }

    /// Coaction of `C(Γ)` on `C(X)` from a left action, `α(δ_y) = Σ_g δ_{g·y} ⊗ δ_g`.
    /// `perm[g][y]` is `g·y`.
    pub fn from_permutation_action(hopf: &HopfStarAlgebra, perm: &[Vec<usize>]) -> Result<Self, ActionError> {
        let dg = hopf.dim();
        let n = perm.first().map(|p| p.len()).unwrap_or(0);
        if perm.len() != dg || perm.iter().any(|p| p.len() != n || p.iter().any(|&x| x >= n)) {
            return Err(ActionError::DimensionMismatch("permutation table".into()));
        }
        let mut alpha = CMatrix::zeros(n * dg, n);
        for (g, p) in perm.iter().enumerate() {
            for y in 0..n {
                alpha[(p[y] * dg + g, y)] = ONE;
            }
        }
        Coaction::new(StarAlgebra::functions_on_points(n), hopf.clone(), alpha)
    }

    pub fn algebra(&self) -> &StarAlgebra {
        &self.algebra
    }

    pub fn hopf(&self) -> &HopfStarAlgebra {
        &self.hopf
    }

    pub fn alpha_matrix(&self) -> &CMatrix {
        &self.alpha
    }

    pub fn apply(&self, a: &CVector) -> CVector {
        &self.alpha * a
    }

    /// `a ↦ a ⊗ 1` as a matrix.
    pub fn unit_embedding(&self) -> CMatrix {
        let (da, dg) = (self.algebra.dim(), self.hopf.dim());
        CMatrix::from_fn(da * dg, da, |r, a| if r / dg == a { self.hopf.unit()[r % dg] } else { ZERO })
    }

    fn tensor_product(&self, x: &CVector, y: &CVector) -> CVector {
        tensor_mul(&self.algebra, self.hopf.algebra(), x, y)
    }

    /// `(α ⊗ id)` applied to an element of `A ⊗ G`.
    fn alpha_left(&self, v: &CVector) -> CVector {
        let dg = self.hopf.dim();
        let mut out = CVector::zeros(v.len() * dg);
        for (p, z) in v.iter().enumerate() {
            if *z == ZERO {
                continue;
            }
            let (a, g) = (p / dg, p % dg);
            for (q, w) in self.alpha.column(a).iter().enumerate() {
                if *w != ZERO {
                    out[q * dg + g] += z * w;
                }
            }
        }
        out
    }

    /// `(id ⊗ Δ)` applied to an element of `A ⊗ G`.
    fn delta_right(&self, v: &CVector) -> CVector {
        let dg = self.hopf.dim();
        let comult = self.hopf.comult_matrix();
        let mut out = CVector::zeros(v.len() * dg);
        for (p, z) in v.iter().enumerate() {
            if *z == ZERO {
                continue;
            }
            let (a, g) = (p / dg, p % dg);
            for (q, w) in comult.column(g).iter().enumerate() {
                if *w != ZERO {
                    out[a * dg * dg + q] += z * w;
                }
            }
        }
        out
    }

    /// `(id ⊗ ω)` applied to an element of `A ⊗ G`.
    pub fn slice(&self, v: &CVector, omega: &Functional) -> CVector {
        let (da, dg) = (self.algebra.dim(), self.hopf.dim());
        CVector::from_fn(da, |a, _| (0..dg).fold(ZERO, |acc, g| acc + v[a * dg + g] * omega[g]))
    }
}

/// Homomorphism, unit, star, coassociativity and counit residuals.
pub fn verify_coaction(alpha: &Coaction, tol: &Tolerance) -> Report {
    let t = tol.abs_tol;
    let a = &alpha.algebra;
    let h = &alpha.hopf;
    let (da, dg) = (a.dim(), h.dim());
    let images: Vec<CVector> = (0..da).map(|i| alpha.alpha.column(i).into_owned()).collect();
    let sparse: Vec<Vec<(usize, crate::numlin::C64)>> =
        images.iter().map(|v| v.iter().enumerate().filter(|(_, z)| **z != ZERO).map(|(r, z)| (r, *z)).collect()).collect();
    let (ma, mg) = (a.mult_table(), h.algebra().mult_table());
    // α(e_i e_j) − α(e_i)α(e_j) accumulated in one buffer, touching only nonzero slots
    let mut acc = CVector::zeros(da * dg);
    let mut touched = Vec::new();
    let mut hom: f64 = 0.0;
    for i in 0..da {
        for j in 0..da {
            for &(k, v) in ma.get(i, j) {
                for &(r, z) in &sparse[k] {
                    acc[r] += v * z;
                    touched.push(r);
                }
            }
            for &(p, x) in &sparse[i] {
                for &(q, y) in &sparse[j] {
                    for &(k1, c1) in ma.get(p / dg, q / dg) {
                        for &(k2, c2) in mg.get(p % dg, q % dg) {
                            let r = k1 * dg + k2;
                            acc[r] -= x * y * c1 * c2;
                            touched.push(r);
                        }
                    }
                }
            }
            for r in touched.drain(..) {
                hom = hom.max(acc[r].norm());
                acc[r] = ZERO;
            }
        }
    }
    let unital = max_abs_vec(&(alpha.apply(a.unit()) - kron_vec(a.unit(), h.unit())));
    let mut star: f64 = 0.0;
    let mut coassoc: f64 = 0.0;
    let mut counit: f64 = 0.0;
    for i in 0..da {
        let lhs = alpha.apply(&a.star(&a.basis(i)));
        let rhs = tensor_star(a, h.algebra(), &images[i]);
        star = star.max(max_abs_vec(&(lhs - rhs)));
        let left = alpha.alpha_left(&images[i]);
        let right = alpha.delta_right(&images[i]);
        coassoc = coassoc.max(max_abs_vec(&(left - right)));
        let back = alpha.slice(&images[i], h.counit());
        counit = counit.max(max_abs_vec(&(back - a.basis(i))));
    }
    let mut rep = Report::new();
    rep.push("homomorphism", hom, t);
    rep.push("unital", unital, t);
    rep.push("star", star, t);
    rep.push("coassociativity", coassoc, t);
    rep.push("counit", counit, t);
    rep
}

/// Orthonormal basis of `{a : α(a) = a ⊗ 1}`.
pub fn fixed_points(alpha: &Coaction, tol: &Tolerance) -> Result<CMatrix, ActionError> {
    let m = &alpha.alpha - alpha.unit_embedding();
    Ok(kernel(&m, tol)?)
}

/// `E_Y = (id ⊗ φ_G)α` as a matrix.
pub fn conditional_expectation(alpha: &Coaction, phi: &Functional) -> CMatrix {
    let (da, dg) = (alpha.algebra.dim(), alpha.hopf.dim());
    CMatrix::from_fn(da, da, |b, a| (0..dg).fold(ZERO, |acc, g| acc + alpha.alpha[(b * dg + g, a)] * phi[g]))
}

pub fn is_homogeneous(alpha: &Coaction, tol: &Tolerance) -> Result<bool, ActionError> {
    Ok(fixed_points(alpha, tol)?.ncols() == 1)
}

/// Irreducible coreps of `G` with their `Q`-matrices and characters.
#[derive(Debug, Clone)]
pub struct IrrepData {
    pub irrep: Corepresentation,
    pub q: QMatrix,
    pub chi: CVector,
}

pub fn irrep_data(h: &HopfStarAlgebra, tol: &Tolerance, seed: u64) -> Result<Vec<IrrepData>, ActionError> {
    let phi = haar_state(h, tol)?.phi;
    irreducibles(h, tol, seed)?
        .into_iter()
        .map(|u| {
            let q = q_matrix(&u, h, &phi, tol)?;
            let chi = character(&u, &q)?;
            Ok(IrrepData { irrep: u, q, chi })
        })
        .collect()
}

/// Basis of `Mor(π, α) = {T : α(Tξ) = (T ⊗ id)δ_π(ξ)}`, each `T` a `dim A × n` matrix.
pub fn action_intertwiners(alpha: &Coaction, u: &Corepresentation, tol: &Tolerance) -> Result<Vec<CMatrix>, ActionError> {
    let (da, dg, n) = (alpha.algebra.dim(), alpha.hopf.dim(), u.dim());
    if u.hopf_dim() != dg {
        return Err(ActionError::DimensionMismatch("corep over a different Hopf algebra".into()));
    }
    let mut sys = CMatrix::zeros(n * da * dg, da * n);
    for j in 0..n {
        for r in 0..da * dg {
            let row = j * da * dg + r;
            for a in 0..da {
                sys[(row, a * n + j)] += alpha.alpha[(r, a)];
            }
            let (b, g) = (r / dg, r % dg);
            for i in 0..n {
                sys[(row, b * n + i)] -= u.entry(i, j)[g];
            }
        }
    }
    let ker = kernel(&sys, tol)?;
    Ok((0..ker.ncols()).map(|c| CMatrix::from_fn(da, n, |a, i| ker[(a * n + i, c)])).collect())
}

/// One π-isotypical component.
#[derive(Debug, Clone)]
pub struct IsotypicComponent {
    pub irrep_index: usize,
    pub dim: usize,
    /// `E_π` as a `dim A × dim A` matrix.
    pub projection: CMatrix,
    /// Orthonormal basis of `C(X)_π`.
    pub basis: CMatrix,
    pub intertwiners: Vec<CMatrix>,
}

impl IsotypicComponent {
    pub fn multiplicity(&self) -> usize {
        self.intertwiners.len()
    }
}

/// `E_π(a) = (id ⊗ φ_G)(α(a)(1 ⊗ χ_π*))` for every irreducible.
pub fn isotypical(alpha: &Coaction, irreps: &[IrrepData], phi: &Functional, tol: &Tolerance) -> Result<Vec<IsotypicComponent>, ActionError> {
    let a = &alpha.algebra;
    let h = &alpha.hopf;
    let (da, dg) = (a.dim(), h.dim());
    let mut total = CMatrix::zeros(da, da);
    let mut out = Vec::with_capacity(irreps.len());
    for (idx, ir) in irreps.iter().enumerate() {
        let chi_star = h.star(&ir.chi);
        // ψ(g) = φ(g χ*), so E_π = (id ⊗ ψ)α.
        let psi = CVector::from_fn(dg, |g, _| phi.dot(&h.product(&h.basis(g), &chi_star)));
        let proj = conditional_expectation(alpha, &psi);
        total += &proj;
        let basis = crate::numlin::range_basis(&proj, tol)?;
        let ints = action_intertwiners(alpha, &ir.irrep, tol)?;
        if basis.ncols() != ir.irrep.dim() * ints.len() {
            return Err(ActionError::DimensionMismatch(format!(
                "component {idx} has dimension {} but dim π · mult = {}",
                basis.ncols(),
                ir.irrep.dim() * ints.len()
            )));
        }
        out.push(IsotypicComponent { irrep_index: idx, dim: ir.irrep.dim(), projection: proj, basis, intertwiners: ints });
    }
    let res = max_abs(&(total - CMatrix::identity(da, da)));
    if res > tol.abs_tol.max(1e-8) {
        return Err(ActionError::IncompleteIrreducibleList(res));
    }
    Ok(out)
}

/// Residuals of `E_π² = E_π`, `E_π E_ρ = 0` and `Σ E_π = id`.
pub fn isotypical_residuals(comps: &[IsotypicComponent]) -> (f64, f64, f64) {
    let da = comps.first().map(|c| c.projection.nrows()).unwrap_or(0);
    let mut idem: f64 = 0.0;
    let mut orth: f64 = 0.0;
    let mut total = CMatrix::zeros(da, da);
    for (i, c) in comps.iter().enumerate() {
        idem = idem.max(max_abs(&(&c.projection * &c.projection - &c.projection)));
        total += &c.projection;
        for (j, d) in comps.iter().enumerate() {
            if i != j {
                orth = orth.max(max_abs(&(&c.projection * &d.projection)));
            }
        }
    }
    (idem, orth, max_abs(&(total - CMatrix::identity(da, da))))
}

/// Per-irreducible modular data of a homogeneous action.
#[derive(Debug, Clone)]
pub struct ModularData {
    pub irrep_index: usize,
    pub dim: usize,
    pub mult: usize,
    pub mult_q: f64,
    pub dim_q: f64,
    /// `F_π` in the orthonormal basis `intertwiners`.
    pub f: CMatrix,
    pub intertwiners: Vec<CMatrix>,
}

#[derive(Debug, Clone)]
pub struct HomogeneousData {
    pub phi: Functional,
    pub sigma: CMatrix,
    pub per_irrep: Vec<ModularData>,
    pub report: Report,
}

/// `⟨T, S⟩ = φ_X(Σ_i (S e_i)(T e_i)*)`.
pub fn mor_inner(a: &StarAlgebra, phi_x: &Functional, t: &CMatrix, s: &CMatrix) -> crate::numlin::C64 {
    (0..t.ncols()).fold(ZERO, |acc, i| {
        let si: CVector = s.column(i).into_owned();
        let ti: CVector = t.column(i).into_owned();
        acc + phi_x.dot(&a.product(&si, &a.star(&ti)))
    })
}

/// Orthonormalizes a basis of `Mor(π, α)` for the inner product [`mor_inner`].
fn orthonormalize_mor(a: &StarAlgebra, phi_x: &Functional, ts: &[CMatrix]) -> Result<Vec<CMatrix>, ActionError> {
    let m = ts.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let k = CMatrix::from_fn(m, m, |i, j| mor_inner(a, phi_x, &ts[i], &ts[j]));
    let k = (&k + k.adjoint()).scale(0.5);
    let k_isqrt = hermitian_fn(&k, |x| 1.0 / x.sqrt())?;
    Ok((0..m)
        .map(|l| (0..m).fold(CMatrix::zeros(ts[0].nrows(), ts[0].ncols()), |acc, j| acc + &ts[j] * k_isqrt[(j, l)]))
        .collect())
}

/// `φ_X`, `σ_X`, `F_π`, multiplicities and quantum dimensions of a homogeneous action.
pub fn homogeneous_data(alpha: &Coaction, irreps: &[IrrepData], tol: &Tolerance) -> Result<HomogeneousData, ActionError> {
    let a = &alpha.algebra;
    let h = &alpha.hopf;
    let da = a.dim();
    let fixed = fixed_points(alpha, tol)?;
    if fixed.ncols() != 1 {
        return Err(ActionError::NotHomogeneous(fixed.ncols()));
    }
    let phi_g = haar_state(h, tol)?.phi;
    let e_y = conditional_expectation(alpha, &phi_g);
    // E_Y(a) = φ_X(a) 1.
    let one = a.unit();
    let one_norm = one.dotc(one);
    let phi = CVector::from_fn(da, |j, _| one.dotc(&e_y.column(j).into_owned()) / one_norm);
    let phi_res = max_abs(&(&e_y - one * phi.transpose()));
    let sigma = modular_automorphism(a, &phi, tol).map_err(|_| ActionError::ModularSolveFailed)?;
    let (kms, hom) = crate::hopf::modular_residuals(a, &phi, &sigma);

    // α∘σ = (σ ⊗ S^{-2})∘α
    let s = h.antipode_matrix();
    let s_inv = h.antipode_inverse()?;
    let s_m2 = &s_inv * &s_inv;
    let lhs = &alpha.alpha * &sigma;
    let rhs = sigma.kronecker(&s_m2) * &alpha.alpha;
    let equiv = max_abs(&(lhs - rhs));
    let _ = s;

    let comps = isotypical(alpha, irreps, &phi_g, tol)?;
    let mut per = Vec::with_capacity(irreps.len());
    let mut orth: f64 = 0.0;
    let mut f_pos = true;
    for (comp, ir) in comps.iter().zip(irreps) {
        let ts = orthonormalize_mor(a, &phi, &comp.intertwiners)?;
        let m = ts.len();
        let n = ir.irrep.dim();
        let q = &ir.q.q;
        let q_inv = crate::numlin::inverse(q, tol)?.ok_or(ActionError::ModularSolveFailed)?;
        let mut f = CMatrix::zeros(m, m);
        if m > 0 {
            // σ_X ∘ T_l ∘ Q^{-1} = Σ_k F_kl T_k
            let stacked = CMatrix::from_fn(da * n, m, |r, k| ts[k][(r / n, r % n)]);
            let targets = CMatrix::from_fn(da * n, m, |r, l| {
                let y = &sigma * &ts[l] * &q_inv;
                y[(r / n, r % n)]
            });
            f = lstsq(&stacked, &targets, tol)?;
            let psd = is_psd(&f, tol)?;
            f_pos &= psd.psd && psd.min_eig > tol.abs_tol;
            for k in 0..m {
                for l in 0..m {
                    for i in 0..n {
                        for j in 0..n {
                            let x: CVector = ts[k].column(i).into_owned();
                            let y: CVector = ts[l].column(j).into_owned();
                            let v = phi.dot(&a.product(&x, &a.star(&y)));
                            let expect = if k == l { q[(j, i)] / ir.q.dim_q } else { ZERO };
                            orth = orth.max((v - expect).norm());
                        }
                    }
                }
            }
        }
        let mult_q = if m == 0 {
            0.0
        } else {
            let f_inv = crate::numlin::inverse(&f, tol)?.ok_or(ActionError::ModularSolveFailed)?;
            (f.trace().re * f_inv.trace().re).sqrt()
        };
        per.push(ModularData { irrep_index: comp.irrep_index, dim: n, mult: m, mult_q, dim_q: ir.q.dim_q, f, intertwiners: ts });
    }
    // Distinct isotypical components are φ_X-orthogonal.
    let mut cross: f64 = 0.0;
    for (i, ci) in comps.iter().enumerate() {
        for cj in comps.iter().skip(i + 1) {
            for x in ci.basis.column_iter() {
                for y in cj.basis.column_iter() {
                    let v = phi.dot(&a.product(&x.into_owned(), &a.star(&y.into_owned())));
                    cross = cross.max(v.norm());
                }
            }
        }
    }
    let mut report = Report::new();
    let t = tol.abs_tol.max(1e-8);
    report.push("phi_normalized", (phi.dot(one) - ONE).norm(), t);
    report.push("phi_invariant", phi_res, t);
    report.push("modular_kms", kms, t);
    report.push("modular_homomorphism", hom, t);
    report.push("modular_equivariance", equiv, t);
    report.push("action_orthogonality", orth, t);
    report.push("components_orthogonal", cross, t);
    report.push_bool("f_positive", f_pos);
    let bound = per
        .iter()
        .map(|p| ((p.mult as f64 - p.mult_q).max(0.0)).max((p.mult_q - p.dim_q).max(0.0)))
        .fold(0.0, f64::max);
    report.push("mult_bound", bound, 1e-9);
    Ok(HomogeneousData { phi, sigma, per_irrep: per, report })
}

/// Ellwood and Galois freeness certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct FreenessCertificate {
    pub ellwood: bool,
    pub galois: bool,
    pub ellwood_rank: usize,
    pub galois_rank: usize,
    pub balanced_dim: usize,
    pub target_dim: usize,
}

pub fn is_free(alpha: &Coaction, tol: &Tolerance) -> Result<FreenessCertificate, ActionError> {
    let a = &alpha.algebra;
    let h = &alpha.hopf;
    let (da, dg) = (a.dim(), h.dim());
    let target = da * dg;
    let images: Vec<CVector> = (0..da).map(|i| alpha.alpha.column(i).into_owned()).collect();
    let lifts: Vec<CVector> = (0..da).map(|i| kron_vec(&a.basis(i), h.unit())).collect();

    let mut ell = CMatrix::zeros(target, da * da);
    let mut gal = CMatrix::zeros(target, da * da);
    for i in 0..da {
        for j in 0..da {
            ell.set_column(i * da + j, &alpha.tensor_product(&lifts[i], &images[j]));
            gal.set_column(i * da + j, &alpha.tensor_product(&images[i], &lifts[j]));
        }
    }
    let ellwood_rank = numerical_rank(&ell, tol)?;

    // Balanced tensor product A ⊗_Y A. With Y = ⊕_k M_{m_k} semisimple and q_k a
    // minimal projection in block k, A ⊗_Y A ≅ ⊕_k Aq_k ⊗ q_kA.
    let fixed = fixed_points(alpha, tol)?;
    let y_alg = a.subalgebra(&fixed, &Tolerance { abs_tol: tol.abs_tol.max(1e-8), ..*tol })?;
    let mut balanced_dim = 0;
    for b in wedderburn_blocks(&y_alg, &WedderburnOptions { tol: *tol, seed: 0 })? {
        let q = &fixed * b.unit(0, 0);
        balanced_dim += numerical_rank(&a.right_mult(&q), tol)? * numerical_rank(&a.left_mult(&q), tol)?;
    }
    let galois_rank = numerical_rank(&gal, tol)?;
    // The Galois map kills the relations, so it is injective on the quotient
    // exactly when its kernel is no larger than the relation span.
    let injective = galois_rank == balanced_dim;
    let surjective = galois_rank == target;
    Ok(FreenessCertificate {
        ellwood: ellwood_rank == target,
        galois: injective && surjective,
        ellwood_rank,
        galois_rank,
        balanced_dim,
        target_dim: target,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsorCertificate {
    pub free_and_homogeneous: bool,
    pub unitary_coefficients: bool,
    pub multiplicities: bool,
    pub unitarity_residual: f64,
}

impl TorsorCertificate {
    pub fn is_torsor(&self) -> bool {
        self.free_and_homogeneous
    }
}

/// Three independent torsor tests; they must agree.
pub fn is_torsor(alpha: &Coaction, irreps: &[IrrepData], tol: &Tolerance) -> Result<TorsorCertificate, ActionError> {
    let a = &alpha.algebra;
    let homog = is_homogeneous(alpha, tol)?;
    let free = is_free(alpha, tol)?;
    let c1 = homog && free.ellwood && free.galois;
    let (mut c2, mut c3, mut ures) = (false, false, f64::INFINITY);
    if homog {
        let data = homogeneous_data(alpha, irreps, tol)?;
        c2 = true;
        ures = 0.0;
        for p in &data.per_irrep {
            if p.mult != p.dim {
                c2 = false;
                continue;
            }
            let n = p.dim;
            let v = |k: usize, j: usize| -> CVector { p.intertwiners[k].column(j).into_owned() };
            for j in 0..n {
                for l in 0..n {
                    let target = if j == l { a.unit().clone() } else { CVector::zeros(a.dim()) };
                    let vv = (0..n).fold(CVector::zeros(a.dim()), |acc, k| acc + a.product(&v(j, k), &a.star(&v(l, k))));
                    let vsv = (0..n).fold(CVector::zeros(a.dim()), |acc, k| acc + a.product(&a.star(&v(k, j)), &v(k, l)));
                    ures = ures.max(max_abs_vec(&(vv - &target))).max(max_abs_vec(&(vsv - &target)));
                }
            }
        }
        c2 &= ures <= tol.abs_tol.max(1e-8);
        let total: usize = data.per_irrep.iter().map(|p| p.mult * p.dim).sum();
        c3 = total == a.dim() && data.per_irrep.iter().all(|p| (p.mult_q - p.dim_q).abs() <= 1e-8);
    }
    if c1 != c2 || c1 != c3 {
        return Err(ActionError::CertificateDisagreement(c1, c2, c3));
    }
    Ok(TorsorCertificate { free_and_homogeneous: c1, unitary_coefficients: c2, multiplicities: c3, unitarity_residual: ures })
}

/// Embedding `θ = (χ ⊗ id)α: A → 𝒪(G)` built from a character `χ` of `A`.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub character: Functional,
    pub theta: CMatrix,
    pub report: Report,
}

/// All characters of `A` (its one-dimensional *-representations).
pub fn characters(a: &StarAlgebra, tol: &Tolerance) -> Result<Vec<Functional>, ActionError> {
    let blocks = wedderburn_blocks(a, &WedderburnOptions { tol: *tol, seed: 0 })?;
    Ok(blocks
        .into_iter()
        .filter(|b| b.n == 1)
        .map(|b| CVector::from_iterator(a.dim(), b.map.row(0).iter().cloned()))
        .collect())
}

fn embedding_for(alpha: &Coaction, chi: &Functional, tol: &Tolerance) -> Result<Embedding, ActionError> {
    let a = &alpha.algebra;
    let h = &alpha.hopf;
    let (da, dg) = (a.dim(), h.dim());
    let theta = CMatrix::from_fn(dg, da, |g, x| (0..da).fold(ZERO, |acc, b| acc + chi[b] * alpha.alpha[(b * dg + g, x)]));
    let mut report = Report::new();
    report.push_bool("injective", numerical_rank(&theta, tol)? == da);
    let mut hom: f64 = 0.0;
    for i in 0..da {
        for j in 0..da {
            let lhs = &theta * a.basis_product(i, j);
            let rhs = h.product(&theta.column(i).into_owned(), &theta.column(j).into_owned());
            hom = hom.max(max_abs_vec(&(lhs - rhs)));
        }
        let star = &theta * a.star(&a.basis(i)) - h.star(&theta.column(i).into_owned());
        hom = hom.max(max_abs_vec(&star));
    }
    report.push("homomorphism", hom, tol.abs_tol.max(1e-8));
    // (θ ⊗ id)α = Δθ
    let lhs = theta.kronecker(&CMatrix::identity(dg, dg)) * &alpha.alpha;
    let rhs = h.comult_matrix() * &theta;
    report.push("equivariant", max_abs(&(lhs - rhs)), tol.abs_tol.max(1e-8));
    Ok(Embedding { character: chi.clone(), theta, report })
}

/// Searches the characters of `A` for an equivariant embedding into `𝒪(G)`.
pub fn embeddable_check(alpha: &Coaction, tol: &Tolerance) -> Result<Embedding, ActionError> {
    let chars = characters(&alpha.algebra, tol)?;
    if chars.is_empty() {
        return Err(ActionError::NoCharacter);
    }
    let mut last = None;
    for chi in &chars {
        let e = embedding_for(alpha, chi, tol)?;
        if e.report.pass() {
            return Ok(e);
        }
        last = Some(e);
    }
    Ok(last.expect("nonempty"))
}

/// Result of a quotient-type search.
#[derive(Debug, Clone)]
pub struct QuotientMatch {
    pub quotient_index: usize,
    pub embedding: Embedding,
}

/// For each quotient map `π_H: 𝒪(G) → 𝒪(H)` (a `dim H × dim G` matrix together
/// with the target Hopf algebra) tests whether `A ≅ 𝒪(H\G)` equivariantly.
pub fn quotient_type_check(
    alpha: &Coaction,
    quotients: &[(HopfStarAlgebra, CMatrix)],
    tol: &Tolerance,
) -> Result<Option<QuotientMatch>, ActionError> {
    let chars = characters(&alpha.algebra, tol)?;
    if chars.is_empty() {
        return Err(ActionError::NoCharacter);
    }
    for (qi, (hq, pi)) in quotients.iter().enumerate() {
        let inv = builders::invariant_subspace(&alpha.hopf, hq, pi, tol)?;
        if inv.ncols() != alpha.algebra.dim() {
            continue;
        }
        for chi in &chars {
            let e = embedding_for(alpha, chi, tol)?;
            if !e.report.pass() {
                continue;
            }
            // range θ = 𝒪(H\G)
            let proj = &inv * inv.adjoint();
            let res = max_abs(&(&proj * &e.theta - &e.theta));
            if res <= tol.abs_tol.max(1e-8) {
                return Ok(Some(QuotientMatch { quotient_index: qi, embedding: e }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests;
