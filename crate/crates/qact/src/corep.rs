//! Corepresentations of finite-dimensional Hopf *-algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hopf::{convolution, haar_state, Functional, HopfError, HopfStarAlgebra};
use crate::numlin::{
    c, cluster_sorted, hermitian_eigen, hermitian_fn, inverse, kernel, kron, kron_vec, max_abs,
    max_abs_vec, CMatrix, CVector, LinalgError, Tolerance, ONE, ZERO,
};
use crate::report::Report;

const MAX_RESEEDS: usize = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorepError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coreps live over different Hopf algebras")]
    AlgebraMismatch,
    #[error("Q does not intertwine the corepresentation with its double contragredient (residual {0:e})")]
    QNotIntertwining(f64),
    #[error("corepresentation is not irreducible (dim Mor = {0})")]
    NotIrreducible(usize),
    #[error("recovered Q is not positive definite (min eigenvalue {0:e})")]
    QNotPositive(f64),
    #[error("orthogonality relations fail (residual {0:e})")]
    OrthogonalityFailed(f64),
    #[error("commutant spectrum did not separate after {0} reseeds")]
    DecompositionUnstable(usize),
    #[error("irreducible list is incomplete: Σ dim² = {found}, dim H = {expected}")]
    Incomplete { expected: usize, found: usize },
    #[error("not a valid corepresentation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Matrix `U = (U_ij)` over `𝒪(G)` on `ℂ^n` with inner product `⟨ξ,η⟩ = ξ† P η`.
#[derive(Debug, Clone, PartialEq)]
pub struct Corepresentation {
    n: usize,
    hopf_dim: usize,
    entries: Vec<CVector>,
    inner: CMatrix,
}

impl Corepresentation {
    pub fn new(n: usize, entries: Vec<CVector>, inner: Option<CMatrix>) -> Result<Self, CorepError> {
        if n == 0 || entries.len() != n * n {
            return Err(CorepError::DimensionMismatch(format!("{} entries for n = {n}", entries.len())));
        }
        let hopf_dim = entries[0].len();
        if entries.iter().any(|e| e.len() != hopf_dim) {
            return Err(CorepError::DimensionMismatch("entries of unequal length".into()));
        }
        let inner = inner.unwrap_or_else(|| CMatrix::identity(n, n));
        if inner.shape() != (n, n) {
            return Err(CorepError::DimensionMismatch("inner product shape".into()));
        }
        Ok(Corepresentation { n, hopf_dim, entries, inner })
    }

    pub fn trivial(h: &HopfStarAlgebra) -> Self {
        Corepresentation { n: 1, hopf_dim: h.dim(), entries: vec![h.unit().clone()], inner: CMatrix::identity(1, 1) }
    }

    /// `δ(e_j) = Σ_i e_i ⊗ U_ij` read off from the comultiplication.
    pub fn regular(h: &HopfStarAlgebra, phi: &Functional) -> Self {
        let d = h.dim();
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(CVector::from_fn(d, |k, _| h.delta_coeff(j, i, k)));
            }
        }
        Corepresentation { n: d, hopf_dim: d, entries, inner: h.algebra().gram(phi) }
    }

    /// Matrix coefficients `U_ij = Σ_g ρ(g)_ij δ_g` of a group representation, as a corep of `C(Γ)`.
    pub fn from_group_representation(rho: &[CMatrix]) -> Result<Self, CorepError> {
        let n = rho.first().map(|m| m.nrows()).unwrap_or(0);
        let g = rho.len();
        if n == 0 || rho.iter().any(|m| m.shape() != (n, n)) {
            return Err(CorepError::DimensionMismatch("representation matrices".into()));
        }
        let entries = (0..n * n)
            .map(|x| CVector::from_fn(g, |k, _| rho[k][(x / n, x % n)]))
            .collect();
        Corepresentation::new(n, entries, None)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn hopf_dim(&self) -> usize {
        self.hopf_dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &CVector {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[CVector] {
        &self.entries
    }

    pub fn inner_product(&self) -> &CMatrix {
        &self.inner
    }

    /// `U(ξ, η) = Σ conj(ξ_i) P_ij U_jk η_k`.
    pub fn coefficient(&self, xi: &CVector, eta: &CVector) -> CVector {
        let left = self.inner.adjoint() * xi;
        let mut out = CVector::zeros(self.hopf_dim);
        for j in 0..self.n {
            for k in 0..self.n {
                let s = left[j].conj() * eta[k];
                if s != ZERO {
                    out += self.entry(j, k) * s;
                }
            }
        }
        out
    }

    /// Conjugates by `T` (an `m × n` matrix) and its pseudo-inverse `Tinv` (`n × m`): `T U Tinv`.
    pub fn transform(&self, t: &CMatrix, t_inv: &CMatrix, inner: CMatrix) -> Corepresentation {
        let m = t.nrows();
        let mut entries = vec![CVector::zeros(self.hopf_dim); m * m];
        for a in 0..m {
            for b in 0..m {
                let mut acc = CVector::zeros(self.hopf_dim);
                for i in 0..self.n {
                    if t[(a, i)] == ZERO {
                        continue;
                    }
                    for j in 0..self.n {
                        let s = t[(a, i)] * t_inv[(j, b)];
                        if s != ZERO {
                            acc += self.entry(i, j) * s;
                        }
                    }
                }
                entries[a * m + b] = acc;
            }
        }
        Corepresentation { n: m, hopf_dim: self.hopf_dim, entries, inner }
    }

    /// Unitarily equivalent corep with the standard inner product, plus `R = P^{1/2}`.
    pub fn normalized(&self) -> Result<(Corepresentation, CMatrix), CorepError> {
        let r = hermitian_fn(&self.inner, f64::sqrt)?;
        let r_inv = hermitian_fn(&self.inner, |x| 1.0 / x.sqrt())?;
        Ok((self.transform(&r, &r_inv, CMatrix::identity(self.n, self.n)), r))
    }

    /// Restriction to the span of orthonormal columns `w` (assumed invariant).
    pub fn restrict(&self, w: &CMatrix) -> Corepresentation {
        let k = w.ncols();
        self.transform(&w.adjoint(), w, CMatrix::identity(k, k))
    }

    /// `χ = Σ_i U_ii`.
    pub fn trace_element(&self) -> CVector {
        (0..self.n).fold(CVector::zeros(self.hopf_dim), |acc, i| acc + self.entry(i, i))
    }
}

fn check_same(u: &Corepresentation, v: &Corepresentation) -> Result<(), CorepError> {
    if u.hopf_dim != v.hopf_dim {
        return Err(CorepError::AlgebraMismatch);
    }
    Ok(())
}

/// Corep identity, counit and unitarity residuals.
pub fn verify_corep(u: &Corepresentation, h: &HopfStarAlgebra, tol: &Tolerance) -> Result<Report, CorepError> {
    if u.hopf_dim != h.dim() {
        return Err(CorepError::DimensionMismatch(format!("corep over {}-dim algebra, Hopf algebra has {}", u.hopf_dim, h.dim())));
    }
    let n = u.n;
    let mut rep = Report::new();
    let mut ident: f64 = 0.0;
    let mut counit: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let lhs = h.comult(u.entry(i, j));
            let rhs = (0..n).fold(CVector::zeros(h.dim() * h.dim()), |acc, k| acc + kron_vec(u.entry(i, k), u.entry(k, j)));
            ident = ident.max(max_abs_vec(&(lhs - rhs)));
            let target = if i == j { ONE } else { ZERO };
            counit = counit.max((h.eps(u.entry(i, j)) - target).norm());
        }
    }
    rep.push("corep_identity", ident, tol.abs_tol);
    rep.push("counit", counit, tol.abs_tol);
    rep.push("unitarity", unitarity_residual(u, h)?, tol.abs_tol);
    Ok(rep)
}

/// Max residual of `U*U = 1` and `UU* = 1` after passing to an orthonormal basis.
pub fn unitarity_residual(u: &Corepresentation, h: &HopfStarAlgebra) -> Result<f64, CorepError> {
    let psd = crate::numlin::is_psd(&u.inner, &Tolerance::default())?;
    if !psd.psd || psd.min_eig <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let (w, _) = u.normalized()?;
    let n = w.n;
    let stars: Vec<CVector> = w.entries.iter().map(|e| h.star(e)).collect();
    let mut res: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { h.unit().clone() } else { CVector::zeros(h.dim()) };
            let a = (0..n).fold(CVector::zeros(h.dim()), |acc, k| acc + h.product(&stars[k * n + i], w.entry(k, j)));
            let b = (0..n).fold(CVector::zeros(h.dim()), |acc, k| acc + h.product(w.entry(i, k), &stars[j * n + k]));
            res = res.max(max_abs_vec(&(a - &target))).max(max_abs_vec(&(b - &target)));
        }
    }
    Ok(res)
}

/// `U ⊗ V` on `ℂ^{n_U} ⊗ ℂ^{n_V}`.
pub fn tensor(u: &Corepresentation, v: &Corepresentation, h: &HopfStarAlgebra) -> Result<Corepresentation, CorepError> {
    check_same(u, v)?;
    let (n1, n2) = (u.n, v.n);
    let n = n1 * n2;
    let mut entries = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            entries.push(h.product(u.entry(a / n2, b / n2), v.entry(a % n2, b % n2)));
        }
    }
    Ok(Corepresentation { n, hopf_dim: u.hopf_dim, entries, inner: kron(&u.inner, &v.inner) })
}

pub fn direct_sum(u: &Corepresentation, v: &Corepresentation) -> Result<Corepresentation, CorepError> {
    check_same(u, v)?;
    let n = u.n + v.n;
    let mut entries = vec![CVector::zeros(u.hopf_dim); n * n];
    let mut inner = CMatrix::zeros(n, n);
    for i in 0..u.n {
        for j in 0..u.n {
            entries[i * n + j] = u.entry(i, j).clone();
            inner[(i, j)] = u.inner[(i, j)];
        }
    }
    for i in 0..v.n {
        for j in 0..v.n {
            entries[(u.n + i) * n + u.n + j] = v.entry(i, j).clone();
            inner[(u.n + i, u.n + j)] = v.inner[(i, j)];
        }
    }
    Ok(Corepresentation { n, hopf_dim: u.hopf_dim, entries, inner })
}

/// Contragredient `Ū_ij = U_ij*` with inner product `(P Q)^T`.
pub fn conjugate(u: &Corepresentation, q: &CMatrix, h: &HopfStarAlgebra, tol: &Tolerance) -> Result<Corepresentation, CorepError> {
    if q.shape() != (u.n, u.n) {
        return Err(CorepError::DimensionMismatch("Q shape".into()));
    }
    let entries = u.entries.iter().map(|e| h.star(e)).collect();
    let inner = (&u.inner * q).transpose();
    let out = Corepresentation { n: u.n, hopf_dim: u.hopf_dim, entries, inner };
    let res = unitarity_residual(&out, h)?;
    if res > tol.abs_tol {
        return Err(CorepError::QNotIntertwining(res));
    }
    Ok(out)
}

/// Orthonormal (Hilbert–Schmidt) basis of `Mor(U, V) = {T : V(T⊗1) = (T⊗1)U}`.
pub fn intertwiners(u: &Corepresentation, v: &Corepresentation, tol: &Tolerance) -> Result<Vec<CMatrix>, CorepError> {
    check_same(u, v)?;
    let (nu, nv, d) = (u.n, v.n, u.hopf_dim);
    let mut sys = CMatrix::zeros(nv * nu * d, nv * nu);
    for i in 0..nv {
        for j in 0..nu {
            for cc in 0..d {
                let row = (i * nu + j) * d + cc;
                for k in 0..nv {
                    sys[(row, k * nu + j)] += v.entry(i, k)[cc];
                }
                for k in 0..nu {
                    sys[(row, i * nu + k)] -= u.entry(k, j)[cc];
                }
            }
        }
    }
    let ker = kernel(&sys, tol)?;
    Ok((0..ker.ncols())
        .map(|col| CMatrix::from_fn(nv, nu, |r, s| ker[(r * nu + s, col)]))
        .collect())
}

/// One isotypical piece: `mult` copies of `irrep`, embedded by `isometry`
/// (`n × (mult · dim irrep)`, isometric for the inner product of the input).
#[derive(Debug, Clone)]
pub struct Component {
    pub irrep: Corepresentation,
    pub multiplicity: usize,
    pub isometry: CMatrix,
}

/// Splits a unitary corep into isotypical components.
pub fn decompose(u: &Corepresentation, tol: &Tolerance, seed: u64) -> Result<Vec<Component>, CorepError> {
    let (w, _) = u.normalized()?;
    let r_inv = hermitian_fn(&u.inner, |x| 1.0 / x.sqrt())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pieces = split_irreducible(&w, &CMatrix::identity(w.n, w.n), tol, &mut rng, 0)?;

    // Group the irreducible pieces by isomorphism class.
    let mut classes: Vec<(Corepresentation, Vec<CMatrix>)> = Vec::new();
    for (piece, basis) in pieces {
        let mut placed = false;
        for (rep, embeds) in classes.iter_mut() {
            if rep.n != piece.n {
                continue;
            }
            let mor = intertwiners(rep, &piece, tol)?;
            if mor.len() == 1 {
                // For irreducibles T*T is a positive scalar.
                let t = &mor[0];
                let s = (t.adjoint() * t)[(0, 0)].re.sqrt();
                embeds.push(&basis * t.unscale(s));
                placed = true;
                break;
            }
        }
        if !placed {
            let n = piece.n;
            classes.push((piece, vec![basis * CMatrix::identity(n, n)]));
        }
    }
    let mut out: Vec<Component> = classes
        .into_iter()
        .map(|(irrep, embeds)| {
            let d = irrep.n;
            let mult = embeds.len();
            let mut iso = CMatrix::zeros(u.n, d * mult);
            for (k, e) in embeds.iter().enumerate() {
                iso.columns_mut(k * d, d).copy_from(&(&r_inv * e));
            }
            Component { irrep, multiplicity: mult, isometry: iso }
        })
        .collect();
    out.sort_by(|a, b| canonical_order(&a.irrep, &b.irrep));
    Ok(out)
}

fn canonical_key(u: &Corepresentation) -> (usize, Vec<i64>) {
    let chi = u.trace_element();
    (u.n, chi.iter().flat_map(|z| [(z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64]).collect())
}

fn canonical_order(a: &Corepresentation, b: &Corepresentation) -> std::cmp::Ordering {
    canonical_key(a).cmp(&canonical_key(b))
}

/// Recursively splits a unitary corep (given on the orthonormal columns `basis`
/// of the ambient space) into irreducible pieces.
fn split_irreducible(
    u: &Corepresentation,
    basis: &CMatrix,
    tol: &Tolerance,
    rng: &mut ChaCha8Rng,
    depth: usize,
) -> Result<Vec<(Corepresentation, CMatrix)>, CorepError> {
    let comm = intertwiners(u, u, tol)?;
    if comm.len() == 1 {
        return Ok(vec![(u.clone(), basis.clone())]);
    }
    if depth > MAX_RESEEDS {
        return Err(CorepError::DecompositionUnstable(MAX_RESEEDS));
    }
    let n = u.n;
    let mut hmat = CMatrix::zeros(n, n);
    for t in &comm {
        hmat += t * c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    let hmat = (&hmat + hmat.adjoint()).scale(0.5);
    let (vals, vecs) = hermitian_eigen(&hmat)?;
    let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let clusters = cluster_sorted(&vals, 10.0 * tol.abs_tol.max(1e-12) * scale * 1e3);
    if clusters.len() == 1 {
        return split_irreducible(u, basis, tol, rng, depth + 1);
    }
    let mut out = Vec::new();
    for cl in clusters {
        let w = vecs.columns(cl[0], cl.len()).into_owned();
        let sub = u.restrict(&w);
        out.extend(split_irreducible(&sub, &(basis * &w), tol, rng, depth + 1)?);
    }
    Ok(out)
}

/// All irreducible coreps, extracted from the regular corep and sorted by
/// dimension, then by rounded character coefficients.
pub fn irreducibles(h: &HopfStarAlgebra, tol: &Tolerance, seed: u64) -> Result<Vec<Corepresentation>, CorepError> {
    let phi = haar_state(h, tol)?.phi;
    let reg = Corepresentation::regular(h, &phi);
    let comps = decompose(&reg, tol, seed)?;
    let irreps: Vec<Corepresentation> = comps.into_iter().map(|c| c.irrep).collect();
    let found: usize = irreps.iter().map(|u| u.n * u.n).sum();
    if found != h.dim() {
        return Err(CorepError::Incomplete { expected: h.dim(), found });
    }
    Ok(irreps)
}

/// `Q` with `Tr Q = Tr Q^{-1}` recovered from the second orthogonality relation.
#[derive(Debug, Clone)]
pub struct QMatrix {
    pub q: CMatrix,
    pub dim_q: f64,
    /// Max residual of both orthogonality relations.
    pub orthogonality_residual: f64,
}

pub fn q_matrix(u: &Corepresentation, h: &HopfStarAlgebra, phi: &Functional, tol: &Tolerance) -> Result<QMatrix, CorepError> {
    let mor = intertwiners(u, u, tol)?;
    if mor.len() != 1 {
        return Err(CorepError::NotIrreducible(mor.len()));
    }
    let (w, _) = u.normalized()?;
    let n = w.n;
    let stars: Vec<CVector> = w.entries.iter().map(|e| h.star(e)).collect();
    // R_ki = Σ_j φ(U_ij* U_kj) = n (Q^{-1})_ki / Tr Q
    let r = CMatrix::from_fn(n, n, |k, i| {
        (0..n).fold(ZERO, |acc, j| acc + phi.dot(&h.product(&stars[i * n + j], w.entry(k, j))))
    });
    let psd = crate::numlin::is_psd(&r, tol)?;
    if !psd.psd || psd.min_eig <= tol.abs_tol {
        return Err(CorepError::QNotPositive(psd.min_eig));
    }
    let r_inv = inverse(&r, tol)?.ok_or(CorepError::QNotPositive(psd.min_eig))?;
    let scale = (r.trace().re / r_inv.trace().re).sqrt();
    let q = &r_inv * c(scale, 0.0);
    let q = (&q + q.adjoint()).scale(0.5);
    let dim_q = q.trace().re;
    let q_inv = inverse(&q, tol)?.ok_or(CorepError::QNotPositive(0.0))?;
    let mut res: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    // φ(U_ij U_kl*) = δ_ik Q_lj / Tr Q and φ(U_ij* U_kl) = (Q^{-1})_ki δ_jl / Tr Q.
                    let first = phi.dot(&h.product(w.entry(i, j), &stars[k * n + l]));
                    let expect1 = if i == k { q[(l, j)] / dim_q } else { ZERO };
                    let second = phi.dot(&h.product(&stars[i * n + j], w.entry(k, l)));
                    let expect2 = if j == l { q_inv[(k, i)] / dim_q } else { ZERO };
                    res = res.max((first - expect1).norm()).max((second - expect2).norm());
                }
            }
        }
    }
    if res > tol.abs_tol.max(1e-8) {
        return Err(CorepError::OrthogonalityFailed(res));
    }
    Ok(QMatrix { q, dim_q, orthogonality_residual: res })
}

/// `χ_π = Tr(Q) Σ_i U(e_i, Q^{-1} e_i)` for a corep with standard inner product.
pub fn character(u: &Corepresentation, q: &QMatrix) -> Result<CVector, CorepError> {
    let n = u.n;
    let q_inv = inverse(&q.q, &Tolerance::default())?.ok_or(CorepError::QNotPositive(0.0))?;
    let mut chi = CVector::zeros(u.hopf_dim);
    for i in 0..n {
        for b in 0..n {
            if q_inv[(b, i)] != ZERO {
                chi += u.entry(i, b) * q_inv[(b, i)];
            }
        }
    }
    Ok(chi * c(q.dim_q, 0.0))
}

/// `p_π = φ(· χ_π*)`.
pub fn central_projection(chi: &CVector, h: &HopfStarAlgebra, phi: &Functional) -> Functional {
    let chi_star = h.star(chi);
    CVector::from_fn(h.dim(), |a, _| phi.dot(&h.product(&h.basis(a), &chi_star)))
}

/// Residuals of `p * p = p` and `p * ω = ω * p` on basis functionals.
pub fn projection_residuals(p: &Functional, h: &HopfStarAlgebra) -> Result<(f64, f64), CorepError> {
    let idem = max_abs_vec(&(convolution(p, p, h)? - p));
    let mut central: f64 = 0.0;
    for i in 0..h.dim() {
        let e = h.basis(i);
        central = central.max(max_abs_vec(&(convolution(p, &e, h)? - convolution(&e, p, h)?)));
    }
    Ok((idem, central))
}

/// Max residual of `φ(U(ξ,η) χ*) = ⟨ξ,η⟩` on basis vectors.
pub fn character_pairing_residual(u: &Corepresentation, chi: &CVector, h: &HopfStarAlgebra, phi: &Functional) -> f64 {
    let n = u.n;
    let chi_star = h.star(chi);
    let mut res: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let v = phi.dot(&h.product(u.entry(i, j), &chi_star));
            let target = if i == j { ONE } else { ZERO };
            res = res.max((v - target).norm());
        }
    }
    res
}

/// Largest residual of the intertwining equation over the given maps.
pub fn intertwining_residual(u: &Corepresentation, v: &Corepresentation, t: &CMatrix) -> f64 {
    let (nu, nv) = (u.n, v.n);
    let mut res: f64 = 0.0;
    for i in 0..nv {
        for j in 0..nu {
            let mut acc = CVector::zeros(u.hopf_dim);
            for k in 0..nv {
                acc += v.entry(i, k) * t[(k, j)];
            }
            for k in 0..nu {
                acc -= u.entry(k, j) * t[(i, k)];
            }
            res = res.max(max_abs_vec(&acc));
        }
    }
    res
}

/// Max deviation of `W† P W` from the identity.
pub fn is_isometry(w: &CMatrix, inner: &CMatrix) -> f64 {
    max_abs(&(w.adjoint() * inner * w - CMatrix::identity(w.ncols(), w.ncols())))
}

/// The standard two-dimensional representation of S_3 on the sum-zero plane.
pub fn symmetric3_standard() -> Vec<CMatrix> {
    let s2 = 1.0 / 2f64.sqrt();
    let s6 = 1.0 / 6f64.sqrt();
    let b = CMatrix::from_row_slice(3, 2, &[c(s2, 0.0), c(s6, 0.0), c(-s2, 0.0), c(s6, 0.0), ZERO, c(-2.0 * s6, 0.0)]);
    // same order as GroupTable::symmetric3
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    perms
        .iter()
        .map(|p| {
            let mut pm = CMatrix::zeros(3, 3);
            for x in 0..3 {
                pm[(p[x], x)] = ONE;
            }
            b.adjoint() * pm * &b
        })
        .collect()
}
