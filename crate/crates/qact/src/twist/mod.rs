//! Unitary 2-cocycles on duals of finite quantum groups, twisted algebras,
//! and the reflected quantum group of a torsor.
//!
//! Handedness: the twisted algebra `𝒪(G)_ω` carries the left coaction `Δ` of
//! `G`. Here every torsor is a right coaction, so `𝒪(G)_ω` is returned with the
//! flipped map `g ↦ g_(2) ⊗ g_(1)`, a right coaction of `G^cop`. Left
//! coactions of `H` and right coactions of `H^cop` are swapped by
//! [`LeftCoaction::to_right`] and [`LeftCoaction::from_right`].

use thiserror::Error;

use crate::action::{characters, irrep_data, is_torsor, verify_coaction, ActionError, Coaction};
use crate::hopf::{dual_hopf, Functional, GroupTable, HopfError, HopfStarAlgebra, MultTable, StarAlgebra};
use crate::numlin::{inverse, kernel, max_abs, max_abs_vec, CMatrix, CVector, LinalgError, Tolerance, C64, ZERO};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwistError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a unitary 2-cocycle: {0}")]
    CocycleInvalid(String),
    #[error("coaction is not a torsor")]
    NotATorsor,
    #[error("reflected structure failed: {0}")]
    ReflectionFailed(String),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Bilinear functional `ω` on `𝒪(G) ⊗ 𝒪(G)`, `omega[(i, j)] = ω(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle {
    hopf: HopfStarAlgebra,
    omega: CMatrix,
}

type DeltaTerms = Vec<Vec<(usize, usize, C64)>>;

fn delta_terms(h: &HopfStarAlgebra) -> DeltaTerms {
    let d = h.dim();
    let cm = h.comult_matrix();
    (0..d)
        .map(|i| (0..d * d).filter(|&r| cm[(r, i)] != ZERO).map(|r| (r / d, r % d, cm[(r, i)])).collect())
        .collect()
}

impl Cocycle {
    pub fn new(hopf: HopfStarAlgebra, omega: CMatrix) -> Result<Self, TwistError> {
        let d = hopf.dim();
        if omega.shape() != (d, d) {
            return Err(TwistError::DimensionMismatch(format!("omega is {}x{}, expected {d}x{d}", omega.nrows(), omega.ncols())));
        }
        Ok(Cocycle { hopf, omega })
    }

    /// `ε ⊗ ε`.
    pub fn trivial(hopf: &HopfStarAlgebra) -> Self {
        let e = hopf.counit();
        Cocycle { hopf: hopf.clone(), omega: e * e.transpose() }
    }

    /// On `ℂ[ℤ_n × ℤ_n]` (pair `(a, b)` at `a * n + b`):
    /// `ω(λ_(a,b), λ_(c,d)) = z^{(a,b) K (c,d)ᵀ}`.
    pub fn bicharacter(n: usize, z: C64, k: [[u32; 2]; 2]) -> Self {
        let g = GroupTable::cyclic(n).direct_product(&GroupTable::cyclic(n));
        let hopf = crate::hopf::group_algebra(&g);
        let omega = CMatrix::from_fn(n * n, n * n, |x, y| {
            let (a, b, c, d) = (x / n, x % n, y / n, y % n);
            let e = a * c * k[0][0] as usize + a * d * k[0][1] as usize + b * c * k[1][0] as usize + b * d * k[1][1] as usize;
            z.powu(e as u32)
        });
        Cocycle { hopf, omega }
    }

    pub fn hopf(&self) -> &HopfStarAlgebra {
        &self.hopf
    }

    pub fn omega(&self) -> &CMatrix {
        &self.omega
    }

    pub fn eval(&self, x: &CVector, y: &CVector) -> C64 {
        (x.transpose() * &self.omega * y)[(0, 0)]
    }

    /// `(ω * θ)(x ⊗ y) = ω(x_(1), y_(1)) θ(x_(2), y_(2))`.
    pub fn convolve(&self, theta: &CMatrix) -> CMatrix {
        convolve2(&delta_terms(&self.hopf), &self.omega, theta)
    }

    /// `ω*(x ⊗ y) = conj(ω(S(x)*, S(y)*))`.
    pub fn star(&self) -> CMatrix {
        let h = &self.hopf;
        let d = h.dim();
        let v: Vec<CVector> = (0..d).map(|i| h.star(&h.antipode(&h.basis(i)))).collect();
        CMatrix::from_fn(d, d, |i, j| self.eval(&v[i], &v[j]).conj())
    }

    /// `χ_ω(g) = conj(ω(g_(2)*, S(g_(1))*))`.
    pub fn chi(&self) -> Functional {
        let h = &self.hopf;
        let terms = delta_terms(h);
        let stars: Vec<CVector> = (0..h.dim()).map(|i| h.star(&h.basis(i))).collect();
        let s_stars: Vec<CVector> = (0..h.dim()).map(|i| h.star(&h.antipode(&h.basis(i)))).collect();
        CVector::from_fn(h.dim(), |i, _| {
            terms[i].iter().fold(ZERO, |acc, &(a, b, c)| acc + c * self.eval(&stars[b], &s_stars[a]).conj())
        })
    }
}

fn convolve2(terms: &DeltaTerms, w: &CMatrix, v: &CMatrix) -> CMatrix {
    let d = w.nrows();
    CMatrix::from_fn(d, d, |i, j| {
        let mut s = ZERO;
        for &(a, b, x) in &terms[i] {
            for &(c, e, y) in &terms[j] {
                s += x * y * w[(a, c)] * v[(b, e)];
            }
        }
        s
    })
}

/// Max residual of `ω(g_(1)h_(1), k) ω(g_(2), h_(2)) = ω(g, h_(1)k_(1)) ω(h_(2), k_(2))`.
pub fn cocycle_residual(omega: &Cocycle) -> f64 {
    let h = &omega.hopf;
    let d = h.dim();
    let terms = delta_terms(h);
    let m = h.mult_matrix();
    let w = &omega.omega;
    // left[(g1 h1), k] = ω(e_g1 e_h1, e_k), right[g, (h1 k1)] = ω(e_g, e_h1 e_k1)
    let left = m.transpose() * w;
    let right = w * &m;
    let mut res: f64 = 0.0;
    for g in 0..d {
        for hh in 0..d {
            for k in 0..d {
                let mut lhs = ZERO;
                for &(g1, g2, x) in &terms[g] {
                    for &(h1, h2, y) in &terms[hh] {
                        lhs += x * y * left[(g1 * d + h1, k)] * w[(g2, h2)];
                    }
                }
                let mut rhs = ZERO;
                for &(h1, h2, x) in &terms[hh] {
                    for &(k1, k2, y) in &terms[k] {
                        rhs += x * y * right[(g, h1 * d + k1)] * w[(h2, k2)];
                    }
                }
                res = res.max((lhs - rhs).norm());
            }
        }
    }
    res
}

/// Normalization, convolution unitarity and the cocycle identity.
pub fn verify_cocycle(omega: &Cocycle, tol: &Tolerance) -> Report {
    let h = &omega.hopf;
    let d = h.dim();
    let t = tol.abs_tol;
    let one = h.unit();
    let eps = h.counit();
    let mut norm: f64 = 0.0;
    for j in 0..d {
        let e = h.basis(j);
        norm = norm.max((omega.eval(one, &e) - eps[j]).norm()).max((omega.eval(&e, one) - eps[j]).norm());
    }
    let terms = delta_terms(h);
    let unit = eps * eps.transpose();
    let st = omega.star();
    let u1 = convolve2(&terms, &st, &omega.omega);
    let u2 = convolve2(&terms, &omega.omega, &st);
    let mut rep = Report::new();
    rep.push("normalized", norm, t);
    rep.push("unitary", max_abs(&(u1 - &unit)).max(max_abs(&(u2 - &unit))), t);
    rep.push("cocycle_identity", cocycle_residual(omega), t);
    rep
}

/// `e_i ·_ω e_j = ω(e_i(2), e_j(2)) e_i(1) e_j(1)`, no validation.
pub fn twisted_product(omega: &Cocycle) -> MultTable {
    let h = &omega.hopf;
    let d = h.dim();
    let terms = delta_terms(h);
    let a = h.algebra();
    let mut dense = vec![ZERO; d * d * d];
    for i in 0..d {
        for j in 0..d {
            for &(a1, a2, x) in &terms[i] {
                for &(b1, b2, y) in &terms[j] {
                    let w = x * y * omega.omega[(a2, b2)];
                    if w == ZERO {
                        continue;
                    }
                    for &(k, z) in a.mult_table().get(a1, b1) {
                        dense[(i * d + j) * d + k] += w * z;
                    }
                }
            }
        }
    }
    MultTable::from_dense(d, |i, j, k| dense[(i * d + j) * d + k])
}

/// Associativity residual of `·_ω`, for any bilinear `ω`.
pub fn associativity_residual(omega: &Cocycle) -> f64 {
    let d = omega.hopf.dim();
    let a = StarAlgebra::new(
        omega.hopf.algebra().labels().to_vec(),
        twisted_product(omega),
        omega.hopf.unit().clone(),
        CMatrix::identity(d, d),
    );
    a.map(|a| a.verify().associativity).unwrap_or(f64::INFINITY)
}

/// `𝒪(G)_ω` with its right coaction of `G^cop` and the functional `χ_ω`.
#[derive(Debug, Clone)]
pub struct TwistedAlgebra {
    pub algebra: StarAlgebra,
    pub coaction: Coaction,
    pub chi: Functional,
}

pub fn twist(omega: &Cocycle, tol: &Tolerance) -> Result<TwistedAlgebra, TwistError> {
    let rep = verify_cocycle(omega, tol);
    if let Some(f) = rep.first_failure() {
        return Err(TwistError::CocycleInvalid(format!("{} residual {:e}", f.name, f.residual)));
    }
    let h = &omega.hopf;
    let d = h.dim();
    let chi = omega.chi();
    let terms = delta_terms(h);
    let stars: Vec<CVector> = (0..d).map(|i| h.star(&h.basis(i))).collect();
    // g# = χ(g_(2)*) g_(1)*, conjugate-linear in g
    let mut star = CMatrix::zeros(d, d);
    for i in 0..d {
        let mut col = CVector::zeros(d);
        for &(a, b, x) in &terms[i] {
            col += &stars[a] * (x.conj() * chi.dot(&stars[b]));
        }
        star.set_column(i, &col);
    }
    let labels = h.algebra().labels().iter().map(|l| format!("{l}_ω")).collect();
    let algebra = StarAlgebra::new(labels, twisted_product(omega), h.unit().clone(), star)?;
    let cop = h.cop()?;
    let coaction = Coaction::new(algebra.clone(), cop.clone(), cop.comult_matrix().clone())?;
    Ok(TwistedAlgebra { algebra, coaction, chi })
}

/// Left coaction `β: A → 𝒪(H) ⊗ A`; column `a` of `beta` is `β(e_a)`, index `h * dim A + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftCoaction {
    pub algebra: StarAlgebra,
    pub hopf: HopfStarAlgebra,
    pub beta: CMatrix,
}

fn swap_legs(m: &CMatrix, outer: usize, inner: usize) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| m[((r % outer) * inner + r / outer, c)])
}

impl LeftCoaction {
    pub fn new(algebra: StarAlgebra, hopf: HopfStarAlgebra, beta: CMatrix) -> Result<Self, TwistError> {
        let (da, dh) = (algebra.dim(), hopf.dim());
        if beta.shape() != (dh * da, da) {
            return Err(TwistError::DimensionMismatch(format!("beta is {}x{}, expected {}x{da}", beta.nrows(), beta.ncols(), dh * da)));
        }
        Ok(LeftCoaction { algebra, hopf, beta })
    }

    /// `a ↦ 1 ⊗ a`.
    pub fn trivial(algebra: StarAlgebra, hopf: HopfStarAlgebra) -> Self {
        let (da, dh) = (algebra.dim(), hopf.dim());
        let beta = CMatrix::from_fn(dh * da, da, |r, a| if r % da == a { hopf.unit()[r / da] } else { ZERO });
        LeftCoaction { algebra, hopf, beta }
    }

    /// `Δ` as a left coaction of `G` on itself.
    pub fn comultiplication(hopf: &HopfStarAlgebra) -> Self {
        LeftCoaction { algebra: hopf.algebra().clone(), hopf: hopf.clone(), beta: hopf.comult_matrix().clone() }
    }

    /// `a ↦ a_(0) ⊗ a_(-1)`, a right coaction of `H^cop`.
    pub fn to_right(&self) -> Result<Coaction, TwistError> {
        let (da, dh) = (self.algebra.dim(), self.hopf.dim());
        Ok(Coaction::new(self.algebra.clone(), self.hopf.cop()?, swap_legs(&self.beta, da, dh))?)
    }

    /// Inverse of [`LeftCoaction::to_right`]: a right coaction of `H` is a left coaction of `H^cop`.
    pub fn from_right(alpha: &Coaction) -> Result<Self, TwistError> {
        let (da, dh) = (alpha.algebra().dim(), alpha.hopf().dim());
        LeftCoaction::new(alpha.algebra().clone(), alpha.hopf().cop()?, swap_legs(alpha.alpha_matrix(), dh, da))
    }
}

/// The reflected quantum group `H_X` with its left coaction on `X`.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub hopf: HopfStarAlgebra,
    /// Orthonormal basis of `𝒪(H_X)` inside `𝒪(X) ⊗ 𝒪(X^op)`.
    pub embedding: CMatrix,
    pub coaction: LeftCoaction,
    pub report: Report,
}

/// Builds `𝒪(H_X) = {z ∈ 𝒪(X) ⊗ 𝒪(X)^op : z_(0) ⊗ z_(1) = z ⊗ 1}` for the codiagonal
/// coaction `x ⊗ y ↦ x_(0) ⊗ y_(0) ⊗ x_(1) y_(1)`, with
/// `Δ(x ⊗ y) = x_(0) ⊗ γ(x_(1)) ⊗ y`, `ε(x ⊗ y) = xy`, `S(x ⊗ y) = y_(0) ⊗ γ₁ x γ₂`
/// where `γ(h) = γ₁ ⊗ γ₂ = Can⁻¹(1 ⊗ h)`.
pub fn reflect(alpha: &Coaction, tol: &Tolerance) -> Result<Reflection, TwistError> {
    let a = alpha.algebra();
    let h = alpha.hopf();
    let (da, dg) = (a.dim(), h.dim());
    let irreps = irrep_data(h, tol, 0)?;
    if !is_torsor(alpha, &irreps, tol)?.is_torsor() {
        return Err(TwistError::NotATorsor);
    }
    let am = alpha.alpha_matrix();
    let col_terms: Vec<Vec<(usize, usize, C64)>> = (0..da)
        .map(|x| (0..da * dg).filter(|&r| am[(r, x)] != ZERO).map(|r| (r / dg, r % dg, am[(r, x)])).collect())
        .collect();
    let d2 = da * da;

    // codiagonal coaction minus z ↦ z ⊗ 1
    let mut sys = CMatrix::zeros(d2 * dg, d2);
    for x in 0..da {
        for y in 0..da {
            let col = x * da + y;
            for &(c, k, u) in &col_terms[x] {
                for &(e, l, v) in &col_terms[y] {
                    let g = h.algebra().basis_product(k, l);
                    for (t, z) in g.iter().enumerate() {
                        if *z != ZERO {
                            sys[((c * da + e) * dg + t, col)] += u * v * z;
                        }
                    }
                }
            }
            for t in 0..dg {
                sys[(col * dg + t, col)] -= h.unit()[t];
            }
        }
    }
    let z = kernel(&sys, tol)?;
    let dl = z.ncols();
    let mut report = Report::new();
    report.push_bool("dimension", dl == dg);
    if dl != dg {
        return Err(TwistError::ReflectionFailed(format!("invariant space has dimension {dl}, expected {dg}")));
    }
    let ambient = a.tensor(&a.opposite());
    let check = Tolerance { abs_tol: tol.abs_tol.max(1e-8), ..*tol };
    let lalg = ambient.subalgebra(&z, &check)?;

    // Can(e_a ⊗ e_b) = e_a b_(0) ⊗ b_(1)
    let mut can = CMatrix::zeros(da * dg, d2);
    for x in 0..da {
        for y in 0..da {
            for &(c, k, u) in &col_terms[y] {
                for &(p, w) in a.mult_table().get(x, c) {
                    can[(p * dg + k, x * da + y)] += u * w;
                }
            }
        }
    }
    let can_inv = inverse(&can, tol)?.ok_or_else(|| TwistError::ReflectionFailed("canonical map is not invertible".into()))?;
    let gamma: Vec<CVector> = (0..dg)
        .map(|k| {
            let rhs = CVector::from_fn(da * dg, |r, _| a.unit()[r / dg] * h.basis(k)[r % dg]);
            &can_inv * rhs
        })
        .collect();

    let zc: Vec<CVector> = (0..dl).map(|i| z.column(i).into_owned()).collect();
    let proj2 = z.adjoint().kronecker(&z.adjoint());
    let mut comult = CMatrix::zeros(dl * dl, dl);
    let mut counit = CVector::zeros(dl);
    let mut antipode = CMatrix::zeros(dl, dl);
    let mut lift_res: f64 = 0.0;
    let one_norm = a.unit().dotc(a.unit());
    for (i, zi) in zc.iter().enumerate() {
        let mut big = CVector::zeros(d2 * d2);
        let mut prod = CVector::zeros(da);
        let mut s = CVector::zeros(d2);
        for (idx, coef) in zi.iter().enumerate() {
            if coef.norm() < 1e-15 {
                continue;
            }
            let (x, y) = (idx / da, idx % da);
            for &(c, k, u) in &col_terms[x] {
                for (gi, gv) in gamma[k].iter().enumerate() {
                    if *gv != ZERO {
                        let (g1, g2) = (gi / da, gi % da);
                        big[(c * da + g1) * d2 + g2 * da + y] += coef * u * gv;
                    }
                }
            }
            for &(p, w) in a.mult_table().get(x, y) {
                prod[p] += coef * w;
            }
            for &(c, k, u) in &col_terms[y] {
                for (gi, gv) in gamma[k].iter().enumerate() {
                    if *gv != ZERO {
                        let (g1, g2) = (gi / da, gi % da);
                        let m = a.product(&a.product(&a.basis(g1), &a.basis(x)), &a.basis(g2));
                        for (p, w) in m.iter().enumerate() {
                            s[c * da + p] += coef * u * gv * w;
                        }
                    }
                }
            }
        }
        let dc = &proj2 * &big;
        lift_res = lift_res.max(max_abs_vec(&(z.kronecker(&z) * &dc - &big)));
        comult.set_column(i, &dc);
        let e = a.unit().dotc(&prod) / one_norm;
        lift_res = lift_res.max(max_abs_vec(&(a.unit() * e - &prod)));
        counit[i] = e;
        let sc = z.adjoint() * &s;
        lift_res = lift_res.max(max_abs_vec(&(&z * &sc - &s)));
        antipode.set_column(i, &sc);
    }
    report.push("structure_in_span", lift_res, check.abs_tol);
    let hx = HopfStarAlgebra::new(format!("H_X({})", h.name()), lalg, comult, counit, antipode)?;
    report.extend_prefixed("hopf", crate::hopf::verify_hopf(&hx, &check));

    // λ(a) = a_(0) ⊗ γ(a_(1)), read in 𝒪(H_X) ⊗ A
    let proj_l = z.adjoint().kronecker(&CMatrix::identity(da, da));
    let mut beta = CMatrix::zeros(dl * da, da);
    let mut beta_res: f64 = 0.0;
    for x in 0..da {
        let mut v = CVector::zeros(d2 * da);
        for &(c, k, u) in &col_terms[x] {
            for (gi, gv) in gamma[k].iter().enumerate() {
                if *gv != ZERO {
                    let (g1, g2) = (gi / da, gi % da);
                    v[(c * da + g1) * da + g2] += u * gv;
                }
            }
        }
        let b = &proj_l * &v;
        beta_res = beta_res.max(max_abs_vec(&(z.kronecker(&CMatrix::identity(da, da)) * &b - &v)));
        beta.set_column(x, &b);
    }
    report.push("coaction_in_span", beta_res, check.abs_tol);
    let coaction = LeftCoaction::new(a.clone(), hx.clone(), beta)?;
    if let Some(f) = report.first_failure() {
        return Err(TwistError::ReflectionFailed(format!("{} residual {:e}", f.name, f.residual)));
    }
    Ok(Reflection { hopf: hx, embedding: z, coaction, report })
}

/// Commutation `(β ⊗ id)α = (id ⊗ α)β` plus torsor certificates for both sides.
pub fn bitorsor_check(alpha: &Coaction, beta: &LeftCoaction, tol: &Tolerance) -> Result<Report, TwistError> {
    let da = alpha.algebra().dim();
    if beta.algebra.dim() != da {
        return Err(TwistError::DimensionMismatch("coactions on different algebras".into()));
    }
    let (dg, dh) = (alpha.hopf().dim(), beta.hopf.dim());
    let lhs = beta.beta.kronecker(&CMatrix::identity(dg, dg)) * alpha.alpha_matrix();
    let rhs = CMatrix::identity(dh, dh).kronecker(alpha.alpha_matrix()) * &beta.beta;
    let t = tol.abs_tol.max(1e-8);
    let mut rep = Report::new();
    rep.push("commute", max_abs(&(lhs - rhs)), t);
    let right = beta.to_right()?;
    for (name, c) in [("right", alpha), ("left", &right)] {
        let v = verify_coaction(c, tol);
        rep.push_bool(format!("{name}_coaction"), v.pass());
        let irreps = irrep_data(c.hopf(), tol, 0)?;
        let torsor = v.pass() && is_torsor(c, &irreps, tol)?.is_torsor();
        rep.push_bool(format!("{name}_torsor"), torsor);
    }
    Ok(rep)
}

/// A Hopf *-isomorphism `x → y` with its verification residual.
#[derive(Debug, Clone)]
pub struct HopfMatch {
    pub map: CMatrix,
    pub residual: f64,
}

/// Characters of a commutative Hopf algebra with the convolution group law; the counit comes first.
fn point_group(h: &HopfStarAlgebra, tol: &Tolerance) -> Result<Option<(Vec<Functional>, GroupTable)>, TwistError> {
    if !h.algebra().is_commutative(tol) {
        return Ok(None);
    }
    let mut chars = characters(h.algebra(), tol)?;
    if chars.len() != h.dim() {
        return Ok(None);
    }
    let close = |x: &CVector, y: &CVector| max_abs_vec(&(x - y)) <= tol.abs_tol.max(1e-8);
    let Some(e) = chars.iter().position(|c| close(c, h.counit())) else {
        return Ok(None);
    };
    chars.swap(0, e);
    let n = chars.len();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let conv = crate::hopf::convolution(&chars[i], &chars[j], h)?;
            match chars.iter().position(|c| close(c, &conv)) {
                Some(k) => table[i][j] = k,
                None => return Ok(None),
            }
        }
    }
    let g = GroupTable::new((0..n).map(|i| i.to_string()).collect(), table)?;
    Ok(Some((chars, g)))
}

fn commutative_match(x: &HopfStarAlgebra, y: &HopfStarAlgebra, tol: &Tolerance) -> Result<Option<CMatrix>, TwistError> {
    let (Some((cx, gx)), Some((cy, gy))) = (point_group(x, tol)?, point_group(y, tol)?) else {
        return Ok(None);
    };
    let Some(sigma) = gx.isomorphism(&gy) else {
        return Ok(None);
    };
    let n = cx.len();
    let xm = CMatrix::from_fn(n, n, |i, k| cx[i][k]);
    let ym = CMatrix::from_fn(n, n, |i, k| cy[sigma[i]][k]);
    Ok(inverse(&ym, tol)?.map(|yi| yi * xm))
}

/// Max residual of `m` being a unital *-homomorphism intertwining `Δ`, `ε` and `S`.
pub fn hopf_iso_residual(m: &CMatrix, x: &HopfStarAlgebra, y: &HopfStarAlgebra) -> f64 {
    let d = x.dim();
    let (ax, ay) = (x.algebra(), y.algebra());
    let cols: Vec<CVector> = (0..d).map(|i| m.column(i).into_owned()).collect();
    let mut r = max_abs_vec(&(m * ax.unit() - ay.unit()));
    for i in 0..d {
        for j in 0..d {
            r = r.max(max_abs_vec(&(m * ax.basis_product(i, j) - ay.product(&cols[i], &cols[j]))));
        }
        r = r.max(max_abs_vec(&(m * ax.star(&ax.basis(i)) - ay.star(&cols[i]))));
    }
    r.max(max_abs(&(m.kronecker(m) * x.comult_matrix() - y.comult_matrix() * m)))
        .max(max_abs_vec(&(m.transpose() * y.counit() - x.counit())))
        .max(max_abs(&(m * x.antipode_matrix() - y.antipode_matrix() * m)))
}

/// Searches for a Hopf *-isomorphism when both sides are commutative or both cocommutative.
pub fn match_hopf(x: &HopfStarAlgebra, y: &HopfStarAlgebra, tol: &Tolerance) -> Result<Option<HopfMatch>, TwistError> {
    if x.dim() != y.dim() {
        return Ok(None);
    }
    let mut map = commutative_match(x, y, tol)?;
    if map.is_none() && x.is_cocommutative(tol) && y.is_cocommutative(tol) {
        let (dx, dy) = (dual_hopf(x)?, dual_hopf(y)?);
        if let Some(md) = commutative_match(&dx, &dy, tol)? {
            map = inverse(&md.transpose(), tol)?;
        }
    }
    Ok(map.map(|m| {
        let residual = hopf_iso_residual(&m, x, y);
        HopfMatch { map: m, residual }
    }))
}

/// `x · y` in the twisted algebra written as `phase · (y · x)`, if the two are proportional.
pub fn commutation_phase(a: &StarAlgebra, x: &CVector, y: &CVector, tol: &Tolerance) -> Option<C64> {
    let xy = a.product(x, y);
    let yx = a.product(y, x);
    let n = yx.dotc(&yx);
    if n.norm() <= tol.abs_tol {
        return None;
    }
    let phase = yx.dotc(&xy) / n;
    (max_abs_vec(&(&yx * phase - &xy)) <= tol.abs_tol.max(1e-8)).then_some(phase)
}

#[cfg(test)]
mod tests;
