//! Finite-dimensional Hopf *-algebras given by structure constants.

mod algebra;
pub mod builders;

pub use algebra::{AlgebraReport, MultTable, StarAlgebra};
pub use builders::{function_algebra, group_algebra, GroupTable};

use thiserror::Error;

use crate::numlin::{
    basis_vector, hermitian_eigen, inverse, kernel, max_abs, max_abs_vec, CMatrix, CVector,
    LinalgError, Tolerance, C64, ZERO,
};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HopfError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("span is not closed under the algebra operations (residual {0:e})")]
    NotClosed(f64),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("no invariant state")]
    NoInvariantState,
    #[error("invariant functionals form a {0}-dimensional space")]
    NonUniqueInvariantState(usize),
    #[error("Haar state is not faithful and positive (min Gram eigenvalue {0:e})")]
    HaarNotPositive(f64),
    #[error("Gram matrix of the functional is singular")]
    GramSingular,
    #[error("antipode is not invertible")]
    AntipodeSingular,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Coefficients of a linear functional on the algebra basis.
pub type Functional = CVector;

/// Evaluates `ω(a) = Σ ω_i a_i`.
pub fn eval(omega: &Functional, a: &CVector) -> C64 {
    omega.dot(a)
}

/// Product of two elements of `A ⊗ B` (coefficients indexed `i * dim B + j`).
pub fn tensor_mul(a: &StarAlgebra, b: &StarAlgebra, x: &CVector, y: &CVector) -> CVector {
    let (da, db) = (a.dim(), b.dim());
    let mut out = CVector::zeros(da * db);
    let nz = |v: &CVector| -> Vec<(usize, C64)> {
        v.iter().enumerate().filter(|(_, z)| **z != ZERO).map(|(i, z)| (i, *z)).collect()
    };
    let (xs, ys) = (nz(x), nz(y));
    for &(p, xv) in &xs {
        let (i1, j1) = (p / db, p % db);
        for &(q, yv) in &ys {
            let (i2, j2) = (q / db, q % db);
            let s = xv * yv;
            for &(k1, c1) in a.mult_table().get(i1, i2) {
                for &(k2, c2) in b.mult_table().get(j1, j2) {
                    out[k1 * db + k2] += s * c1 * c2;
                }
            }
        }
    }
    out
}

/// Applies `*` leg-wise on `A ⊗ B`.
pub fn tensor_star(a: &StarAlgebra, b: &StarAlgebra, x: &CVector) -> CVector {
    let (sa, sb) = (a.star_matrix(), b.star_matrix());
    let db = b.dim();
    let mut out = CVector::zeros(x.len());
    for (p, z) in x.iter().enumerate() {
        if *z == ZERO {
            continue;
        }
        let (sa_col, sb_col) = (sa.column(p / db), sb.column(p % db));
        for (i, u) in sa_col.iter().enumerate().filter(|(_, u)| **u != ZERO) {
            for (j, v) in sb_col.iter().enumerate().filter(|(_, v)| **v != ZERO) {
                out[i * db + j] += z.conj() * u * v;
            }
        }
    }
    out
}

/// `f ⊗ g` for linear maps given as matrices.
pub fn kron_maps(f: &CMatrix, g: &CMatrix) -> CMatrix {
    f.kronecker(g)
}

/// Finite-dimensional Hopf *-algebra.
///
/// `comult` is a `dim² × dim` matrix whose column `i` is `Δ(e_i)`; `antipode`
/// has column `i` equal to `S(e_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfStarAlgebra {
    name: String,
    algebra: StarAlgebra,
    comult: CMatrix,
    counit: CVector,
    antipode: CMatrix,
}

impl HopfStarAlgebra {
    pub fn new(
        name: impl Into<String>,
        algebra: StarAlgebra,
        comult: CMatrix,
        counit: CVector,
        antipode: CMatrix,
    ) -> Result<Self, HopfError> {
        let d = algebra.dim();
        if comult.nrows() != d * d || comult.ncols() != d || counit.len() != d || antipode.shape() != (d, d) {
            return Err(HopfError::DimensionMismatch(format!(
                "dim {d}: comult {}x{}, counit {}, antipode {}x{}",
                comult.nrows(),
                comult.ncols(),
                counit.len(),
                antipode.nrows(),
                antipode.ncols()
            )));
        }
        Ok(HopfStarAlgebra { name: name.into(), algebra, comult, counit, antipode })
    }

    /// Builds from dense row-convention tensors: `delta[i][j][k]` is the
    /// coefficient of `e_j ⊗ e_k` in `Δ(e_i)`, `antipode_rows[i]` is `S(e_i)`.
    pub fn from_dense(
        name: impl Into<String>,
        algebra: StarAlgebra,
        delta: &[Vec<Vec<C64>>],
        counit: Vec<C64>,
        antipode_rows: &[Vec<C64>],
    ) -> Result<Self, HopfError> {
        let d = algebra.dim();
        let ok = delta.len() == d
            && delta.iter().all(|r| r.len() == d && r.iter().all(|s| s.len() == d))
            && antipode_rows.len() == d
            && antipode_rows.iter().all(|r| r.len() == d);
        if !ok {
            return Err(HopfError::DimensionMismatch(format!("expected {d}-dimensional coalgebra tensors")));
        }
        let comult = CMatrix::from_fn(d * d, d, |r, i| delta[i][r / d][r % d]);
        let antipode = CMatrix::from_fn(d, d, |r, i| antipode_rows[i][r]);
        Self::new(name, algebra, comult, CVector::from_vec(counit), antipode)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn algebra(&self) -> &StarAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn comult_matrix(&self) -> &CMatrix {
        &self.comult
    }

    pub fn counit(&self) -> &CVector {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &CMatrix {
        &self.antipode
    }

    /// `Δ[i][j][k]`.
    pub fn delta_coeff(&self, i: usize, j: usize, k: usize) -> C64 {
        self.comult[(j * self.dim() + k, i)]
    }

    pub fn comult(&self, a: &CVector) -> CVector {
        &self.comult * a
    }

    pub fn eps(&self, a: &CVector) -> C64 {
        self.counit.dot(a)
    }

    pub fn antipode(&self, a: &CVector) -> CVector {
        &self.antipode * a
    }

    pub fn antipode_inverse(&self) -> Result<CMatrix, HopfError> {
        inverse(&self.antipode, &Tolerance::default())?.ok_or(HopfError::AntipodeSingular)
    }

    pub fn product(&self, a: &CVector, b: &CVector) -> CVector {
        self.algebra.product(a, b)
    }

    pub fn star(&self, a: &CVector) -> CVector {
        self.algebra.star(a)
    }

    pub fn unit(&self) -> &CVector {
        self.algebra.unit()
    }

    pub fn basis(&self, i: usize) -> CVector {
        basis_vector(self.dim(), i)
    }

    /// Multiplication map `H ⊗ H → H` as a `dim × dim²` matrix.
    pub fn mult_matrix(&self) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d * d);
        for i in 0..d {
            for j in 0..d {
                for &(k, v) in self.algebra.mult_table().get(i, j) {
                    m[(k, i * d + j)] += v;
                }
            }
        }
        m
    }

    /// The co-opposite Hopf algebra: `Δ^op` and `S^{-1}`.
    pub fn cop(&self) -> Result<HopfStarAlgebra, HopfError> {
        let d = self.dim();
        let comult = CMatrix::from_fn(d * d, d, |r, i| self.comult[((r % d) * d + r / d, i)]);
        Ok(HopfStarAlgebra {
            name: format!("{}^cop", self.name),
            algebra: self.algebra.clone(),
            comult,
            counit: self.counit.clone(),
            antipode: self.antipode_inverse()?,
        })
    }

    pub fn is_cocommutative(&self, tol: &Tolerance) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| (self.delta_coeff(i, j, k) - self.delta_coeff(i, k, j)).norm() <= tol.abs_tol)))
    }

    /// `‖S² − id‖`, zero for Kac type.
    pub fn kac_residual(&self) -> f64 {
        let d = self.dim();
        max_abs(&(&self.antipode * &self.antipode - CMatrix::identity(d, d)))
    }
}

/// Checks every Hopf *-algebra axiom on basis elements.
pub fn verify_hopf(h: &HopfStarAlgebra, tol: &Tolerance) -> Report {
    let t = tol.abs_tol;
    let a = h.algebra();
    let d = h.dim();
    let mut rep = Report::new();
    for (name, r) in a.verify().entries() {
        rep.push(name, r, t);
    }
    let basis: Vec<CVector> = (0..d).map(|i| h.basis(i)).collect();
    let deltas: Vec<CVector> = basis.iter().map(|b| h.comult(b)).collect();

    let mut mult: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let lhs = h.comult(&a.basis_product(i, j));
            let rhs = tensor_mul(a, a, &deltas[i], &deltas[j]);
            mult = mult.max(max_abs_vec(&(lhs - rhs)));
        }
    }
    rep.push("comult_multiplicative", mult, t);
    let one = h.unit();
    let unital = max_abs_vec(&(h.comult(one) - crate::numlin::kron_vec(one, one)));
    rep.push("comult_unital", unital, t);
    let mut star: f64 = 0.0;
    for i in 0..d {
        let lhs = h.comult(&h.star(&basis[i]));
        let rhs = tensor_star(a, a, &deltas[i]);
        star = star.max(max_abs_vec(&(lhs - rhs)));
    }
    rep.push("comult_star", star, t);

    let id = CMatrix::identity(d, d);
    let left = kron_maps(&h.comult, &id) * &h.comult;
    let right = kron_maps(&id, &h.comult) * &h.comult;
    rep.push("coassociativity", max_abs(&(left - right)), t);

    let eps_row = h.counit.transpose();
    let counit_l = kron_maps(&CMatrix::from_row_slice(1, d, eps_row.as_slice()), &id) * &h.comult;
    let counit_r = kron_maps(&id, &CMatrix::from_row_slice(1, d, eps_row.as_slice())) * &h.comult;
    rep.push("counit_left", max_abs(&(counit_l - &id)), t);
    rep.push("counit_right", max_abs(&(counit_r - &id)), t);

    let m = h.mult_matrix();
    let ueps = one * &eps_row;
    let s_left = &m * kron_maps(&h.antipode, &id) * &h.comult;
    let s_right = &m * kron_maps(&id, &h.antipode) * &h.comult;
    rep.push("antipode_left", max_abs(&(s_left - &ueps)), t);
    rep.push("antipode_right", max_abs(&(s_right - &ueps)), t);

    let mut eps_hom: f64 = (h.eps(one) - C64::new(1.0, 0.0)).norm();
    for i in 0..d {
        eps_hom = eps_hom.max((h.eps(&h.star(&basis[i])) - h.eps(&basis[i]).conj()).norm());
        for j in 0..d {
            let lhs = h.eps(&a.basis_product(i, j));
            eps_hom = eps_hom.max((lhs - h.eps(&basis[i]) * h.eps(&basis[j])).norm());
        }
    }
    rep.push("counit_star_hom", eps_hom, t);

    let mut sstar: f64 = 0.0;
    for b in &basis {
        let v = h.star(&h.antipode(&h.star(&h.antipode(b))));
        sstar = sstar.max(max_abs_vec(&(v - b)));
    }
    rep.push("antipode_star", sstar, t);
    rep
}

/// Haar state with its certificates.
#[derive(Debug, Clone)]
pub struct HaarState {
    pub phi: Functional,
    pub solution_dim: usize,
    pub gram_min_eig: f64,
    pub left_residual: f64,
    pub right_residual: f64,
}

/// Solves the left and right invariance system and normalizes `φ(1) = 1`.
pub fn haar_state(h: &HopfStarAlgebra, tol: &Tolerance) -> Result<HaarState, HopfError> {
    let d = h.dim();
    let one = h.unit();
    // Row (a, j) of the left system: Σ_k Δ[a][j][k] φ_k − φ_a 1_j = 0; the right
    // system swaps the legs.
    let mut sys = CMatrix::zeros(2 * d * d, d);
    for a in 0..d {
        for j in 0..d {
            for k in 0..d {
                sys[(a * d + j, k)] += h.delta_coeff(a, j, k);
                sys[(d * d + a * d + j, k)] += h.delta_coeff(a, k, j);
            }
            sys[(a * d + j, a)] -= one[j];
            sys[(d * d + a * d + j, a)] -= one[j];
        }
    }
    let ker = kernel(&sys, tol)?;
    match ker.ncols() {
        0 => return Err(HopfError::NoInvariantState),
        1 => {}
        n => return Err(HopfError::NonUniqueInvariantState(n)),
    }
    let v: CVector = ker.column(0).into_owned();
    let norm = v.dot(one);
    if norm.norm() <= tol.abs_tol {
        return Err(HopfError::NoInvariantState);
    }
    let phi = v.map(|z| z / norm);
    let (left_residual, right_residual) = invariance_residuals(h, &phi);
    let gram = h.algebra().gram(&phi);
    let (vals, _) = hermitian_eigen(&gram)?;
    let gram_min_eig = vals.first().copied().unwrap_or(0.0);
    let herm = max_abs(&(&gram - gram.adjoint()));
    if gram_min_eig <= tol.abs_tol || herm > tol.abs_tol.max(1e-12) * 10.0 {
        return Err(HopfError::HaarNotPositive(gram_min_eig));
    }
    Ok(HaarState { phi, solution_dim: 1, gram_min_eig, left_residual, right_residual })
}

/// Max residuals of `(id⊗φ)Δ(a) = φ(a)1` and `(φ⊗id)Δ(a) = φ(a)1` over basis `a`.
pub fn invariance_residuals(h: &HopfStarAlgebra, phi: &Functional) -> (f64, f64) {
    let d = h.dim();
    let id = CMatrix::identity(d, d);
    let row = CMatrix::from_row_slice(1, d, phi.as_slice());
    let left = kron_maps(&id, &row) * h.comult_matrix();
    let right = kron_maps(&row, &id) * h.comult_matrix();
    let target = h.unit() * phi.transpose();
    (max_abs(&(left - &target)), max_abs(&(right - &target)))
}

/// `(ω * θ)(x) = (ω ⊗ θ)Δ(x)`.
pub fn convolution(omega: &Functional, theta: &Functional, h: &HopfStarAlgebra) -> Result<Functional, HopfError> {
    let d = h.dim();
    if omega.len() != d || theta.len() != d {
        return Err(HopfError::DimensionMismatch(format!("functionals must have length {d}")));
    }
    let w = crate::numlin::kron_vec(omega, theta);
    Ok(h.comult_matrix().transpose() * w)
}

/// `ω*(x) = conj(ω(S(x)*))`.
pub fn functional_star(omega: &Functional, h: &HopfStarAlgebra) -> Result<Functional, HopfError> {
    let d = h.dim();
    if omega.len() != d {
        return Err(HopfError::DimensionMismatch(format!("functional must have length {d}")));
    }
    Ok(CVector::from_fn(d, |i, _| {
        let x = h.star(&h.antipode(&h.basis(i)));
        omega.dot(&x).conj()
    }))
}

/// The dual Hopf *-algebra on the dual basis `f_i`.
pub fn dual_hopf(h: &HopfStarAlgebra) -> Result<HopfStarAlgebra, HopfError> {
    let d = h.dim();
    let a = h.algebra();
    let mult = MultTable::from_dense(d, |p, q, i| h.delta_coeff(i, p, q));
    let star = (a.star_matrix().map(|z| z.conj()) * h.antipode_matrix()).transpose();
    let labels = a.labels().iter().map(|l| format!("f[{l}]")).collect();
    let algebra = StarAlgebra::new(labels, mult, h.counit().clone(), star)?;
    let mut comult = CMatrix::zeros(d * d, d);
    for p in 0..d {
        for q in 0..d {
            for &(i, v) in a.mult_table().get(p, q) {
                comult[(p * d + q, i)] += v;
            }
        }
    }
    HopfStarAlgebra::new(
        format!("dual({})", h.name()),
        algebra,
        comult,
        a.unit().clone(),
        h.antipode_matrix().transpose(),
    )
}

/// Max difference of all structure constants of two Hopf algebras on the same basis.
pub fn structure_distance(x: &HopfStarAlgebra, y: &HopfStarAlgebra) -> f64 {
    if x.dim() != y.dim() {
        return f64::INFINITY;
    }
    let d = x.dim();
    let (ax, ay) = (x.algebra(), y.algebra());
    let mut r: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            r = r.max(max_abs_vec(&(ax.basis_product(i, j) - ay.basis_product(i, j))));
        }
    }
    r.max(max_abs_vec(&(ax.unit() - ay.unit())))
        .max(max_abs(&(ax.star_matrix() - ay.star_matrix())))
        .max(max_abs(&(x.comult_matrix() - y.comult_matrix())))
        .max(max_abs_vec(&(x.counit() - y.counit())))
        .max(max_abs(&(x.antipode_matrix() - y.antipode_matrix())))
}

/// Residual of the canonical identification `H ≅ H**`.
pub fn double_dual_residual(h: &HopfStarAlgebra) -> Result<f64, HopfError> {
    Ok(structure_distance(h, &dual_hopf(&dual_hopf(h)?)?))
}

/// Nakayama automorphism `σ` with `φ(ab) = φ(bσ(a))`, as a matrix.
pub fn modular_automorphism(algebra: &StarAlgebra, phi: &Functional, tol: &Tolerance) -> Result<CMatrix, HopfError> {
    let d = algebra.dim();
    let p = CMatrix::from_fn(d, d, |a, b| phi.dot(&algebra.basis_product(a, b)));
    let p_inv = inverse(&p, tol)?.ok_or(HopfError::GramSingular)?;
    Ok(p_inv * p.transpose())
}

/// Residual of `φ(ab) = φ(bσ(a))` and of `σ` being a unital homomorphism.
pub fn modular_residuals(algebra: &StarAlgebra, phi: &Functional, sigma: &CMatrix) -> (f64, f64) {
    let d = algebra.dim();
    let mut kms: f64 = 0.0;
    let mut hom: f64 = max_abs_vec(&(sigma * algebra.unit() - algebra.unit()));
    for a in 0..d {
        let sa: CVector = sigma.column(a).into_owned();
        for b in 0..d {
            let lhs = phi.dot(&algebra.basis_product(a, b));
            let rhs = phi.dot(&algebra.product(&algebra.basis(b), &sa));
            kms = kms.max((lhs - rhs).norm());
            let sb: CVector = sigma.column(b).into_owned();
            hom = hom.max(max_abs_vec(&(sigma * algebra.basis_product(a, b) - algebra.product(&sa, &sb))));
        }
    }
    (kms, hom)
}
