use crate::numlin::{
    basis_vector, conj_vec, hermitian_eigen, kernel, kron, lstsq, max_abs, max_abs_vec, range_basis, CMatrix,
    CVector, Tolerance, C64, ONE, ZERO,
};

use super::HopfError;

/// Sparse structure constants: `terms[i * dim + j]` lists `(k, c)` with `e_i e_j = Σ c e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultTable {
    dim: usize,
    terms: Vec<Vec<(usize, C64)>>,
}

impl MultTable {
    pub fn from_dense(dim: usize, m: impl Fn(usize, usize, usize) -> C64) -> Self {
        let mut terms = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let row = (0..dim)
                    .filter_map(|k| {
                        let v = m(i, j, k);
                        (v != ZERO).then_some((k, v))
                    })
                    .collect();
                terms.push(row);
            }
        }
        MultTable { dim, terms }
    }

    pub fn from_sparse(dim: usize, terms: Vec<Vec<(usize, C64)>>) -> Self {
        assert_eq!(terms.len(), dim * dim);
        MultTable { dim, terms }
    }

    pub fn get(&self, i: usize, j: usize) -> &[(usize, C64)] {
        &self.terms[i * self.dim + j]
    }

    pub fn dense(&self, i: usize, j: usize, k: usize) -> C64 {
        self.get(i, j)
            .iter()
            .filter(|(kk, _)| *kk == k)
            .fold(ZERO, |acc, (_, v)| acc + v)
    }
}

/// Finite-dimensional *-algebra given by structure constants.
///
/// The involution is stored column-wise: column `i` of `star` holds the
/// coefficients of `e_i*`. It acts conjugate-linearly on coefficient vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct StarAlgebra {
    labels: Vec<String>,
    mult: MultTable,
    unit: CVector,
    star: CMatrix,
}

impl StarAlgebra {
    pub fn new(labels: Vec<String>, mult: MultTable, unit: CVector, star: CMatrix) -> Result<Self, HopfError> {
        let dim = labels.len();
        if dim == 0 {
            return Err(HopfError::DimensionMismatch("algebra must be nonzero".into()));
        }
        if mult.dim != dim || unit.len() != dim || star.nrows() != dim || star.ncols() != dim {
            return Err(HopfError::DimensionMismatch(format!(
                "dim {dim}: mult {}, unit {}, star {}x{}",
                mult.dim,
                unit.len(),
                star.nrows(),
                star.ncols()
            )));
        }
        Ok(StarAlgebra { labels, mult, unit, star })
    }

    /// Builds from a dense tensor `m[i][j][k]` and the row-convention star matrix
    /// (`star_rows[i][j]` is the coefficient of `e_j` in `e_i*`).
    pub fn from_dense(
        labels: Vec<String>,
        m: &[Vec<Vec<C64>>],
        unit: Vec<C64>,
        star_rows: &[Vec<C64>],
    ) -> Result<Self, HopfError> {
        let dim = labels.len();
        let shape_ok = m.len() == dim
            && m.iter().all(|r| r.len() == dim && r.iter().all(|s| s.len() == dim))
            && star_rows.len() == dim
            && star_rows.iter().all(|r| r.len() == dim);
        if !shape_ok {
            return Err(HopfError::DimensionMismatch(format!("expected {dim}-dimensional tensors")));
        }
        let mult = MultTable::from_dense(dim, |i, j, k| m[i][j][k]);
        let star = CMatrix::from_fn(dim, dim, |r, col| star_rows[col][r]);
        Self::new(labels, mult, CVector::from_vec(unit), star)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mult_table(&self) -> &MultTable {
        &self.mult
    }

    pub fn unit(&self) -> &CVector {
        &self.unit
    }

    pub fn star_matrix(&self) -> &CMatrix {
        &self.star
    }

    pub fn basis(&self, i: usize) -> CVector {
        basis_vector(self.dim(), i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> CVector {
        let mut out = CVector::zeros(self.dim());
        for &(k, v) in self.mult.get(i, j) {
            out[k] += v;
        }
        out
    }

    pub fn product(&self, a: &CVector, b: &CVector) -> CVector {
        let mut out = CVector::zeros(self.dim());
        let nz: Vec<usize> = (0..b.len()).filter(|&j| b[j] != ZERO).collect();
        for (i, &ai) in a.iter().enumerate() {
            if ai == ZERO {
                continue;
            }
            for &j in &nz {
                let s = ai * b[j];
                for &(k, v) in self.mult.get(i, j) {
                    out[k] += s * v;
                }
            }
        }
        out
    }

    pub fn star(&self, a: &CVector) -> CVector {
        &self.star * conj_vec(a)
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult(&self, a: &CVector) -> CMatrix {
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for i in 0..d {
            if a[i] == ZERO {
                continue;
            }
            for j in 0..d {
                for &(k, v) in self.mult.get(i, j) {
                    out[(k, j)] += a[i] * v;
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mult(&self, a: &CVector) -> CMatrix {
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for j in 0..d {
            if a[j] == ZERO {
                continue;
            }
            for i in 0..d {
                for &(k, v) in self.mult.get(i, j) {
                    out[(k, i)] += a[j] * v;
                }
            }
        }
        out
    }

    /// The canonical trace `τ(a) = Tr(L_a)` as a covector.
    pub fn regular_trace(&self) -> CVector {
        let d = self.dim();
        CVector::from_fn(d, |i, _| {
            (0..d).fold(ZERO, |acc, j| acc + self.mult.dense(i, j, j))
        })
    }

    /// Gram matrix `G_ij = ω(e_i* e_j)` of a functional.
    pub fn gram(&self, omega: &CVector) -> CMatrix {
        let d = self.dim();
        let stars: Vec<CVector> = (0..d).map(|i| self.star.column(i).into_owned()).collect();
        CMatrix::from_fn(d, d, |i, j| {
            let p = self.product(&stars[i], &self.basis(j));
            omega.dot(&p)
        })
    }

    pub fn tensor(&self, other: &StarAlgebra) -> StarAlgebra {
        let (da, db) = (self.dim(), other.dim());
        let d = da * db;
        let mut terms = vec![Vec::new(); d * d];
        for i1 in 0..da {
            for j1 in 0..da {
                let t1 = self.mult.get(i1, j1);
                if t1.is_empty() {
                    continue;
                }
                for i2 in 0..db {
                    for j2 in 0..db {
                        let t2 = other.mult.get(i2, j2);
                        let row = &mut terms[(i1 * db + i2) * d + (j1 * db + j2)];
                        for &(k1, v1) in t1 {
                            for &(k2, v2) in t2 {
                                row.push((k1 * db + k2, v1 * v2));
                            }
                        }
                    }
                }
            }
        }
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        StarAlgebra {
            labels,
            mult: MultTable::from_sparse(d, terms),
            unit: crate::numlin::kron_vec(&self.unit, &other.unit),
            star: kron(&self.star, &other.star),
        }
    }

    /// Same vector space with the product reversed.
    pub fn opposite(&self) -> StarAlgebra {
        let d = self.dim();
        let mut terms = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                terms.push(self.mult.get(j, i).to_vec());
            }
        }
        StarAlgebra {
            labels: self.labels.iter().map(|l| format!("{l}ᵒᵖ")).collect(),
            mult: MultTable::from_sparse(d, terms),
            unit: self.unit.clone(),
            star: self.star.clone(),
        }
    }

    /// Structure constants of the subalgebra spanned by the orthonormal columns of `basis`.
    ///
    /// Fails with `NotClosed` when products or adjoints leave the span.
    pub fn subalgebra(&self, basis: &CMatrix, tol: &Tolerance) -> Result<StarAlgebra, HopfError> {
        self.subalgebra_with_unit(basis, &self.unit, tol)
    }

    /// Corner `pAp` of a self-adjoint projection `p`, with orthonormal basis in `A`.
    pub fn corner(&self, p: &CVector, tol: &Tolerance) -> Result<(StarAlgebra, CMatrix), HopfError> {
        let cut = self.left_mult(p) * self.right_mult(p);
        let basis = range_basis(&cut, tol)?;
        Ok((self.subalgebra_with_unit(&basis, p, tol)?, basis))
    }

    fn subalgebra_with_unit(&self, basis: &CMatrix, unit: &CVector, tol: &Tolerance) -> Result<StarAlgebra, HopfError> {
        let m = basis.ncols();
        let cols: Vec<CVector> = (0..m).map(|i| basis.column(i).into_owned()).collect();
        let project = |v: &CVector| -> Result<CVector, HopfError> {
            let coeffs = basis.adjoint() * v;
            let back = basis * &coeffs;
            let res = max_abs_vec(&(back - v));
            if res > tol.abs_tol.max(1e-12) * (1.0 + max_abs_vec(v)) * 10.0 {
                return Err(HopfError::NotClosed(res));
            }
            Ok(coeffs)
        };
        let mut terms = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let p = project(&self.product(&cols[i], &cols[j]))?;
                terms.push(
                    p.iter()
                        .enumerate()
                        .filter(|(_, v)| v.norm() > 1e-15)
                        .map(|(k, v)| (k, *v))
                        .collect(),
                );
            }
        }
        let unit = project(unit)?;
        let mut star = CMatrix::zeros(m, m);
        for i in 0..m {
            star.set_column(i, &project(&self.star(&cols[i]))?);
        }
        Ok(StarAlgebra {
            labels: (0..m).map(|i| format!("b{i}")).collect(),
            mult: MultTable::from_sparse(m, terms),
            unit,
            star,
        })
    }

    /// Coefficients of `v` in the (not necessarily orthonormal) basis given by the columns of `basis`.
    pub fn coordinates(basis: &CMatrix, v: &CMatrix, tol: &Tolerance) -> Result<(CMatrix, f64), HopfError> {
        let x = lstsq(basis, v, tol)?;
        let res = max_abs(&(basis * &x - v));
        Ok((x, res))
    }

    /// Center of the algebra as an orthonormal column basis.
    pub fn center(&self, tol: &Tolerance) -> Result<CMatrix, HopfError> {
        let d = self.dim();
        let mut stacked = CMatrix::zeros(d * d, d);
        for i in 0..d {
            let e = self.basis(i);
            let comm = self.right_mult(&e) - self.left_mult(&e);
            stacked.rows_mut(i * d, d).copy_from(&comm);
        }
        Ok(kernel(&stacked, tol)?)
    }

    pub fn verify(&self) -> AlgebraReport {
        let d = self.dim();
        let basis: Vec<CVector> = (0..d).map(|i| self.basis(i)).collect();
        let products: Vec<Vec<CVector>> = (0..d)
            .map(|i| (0..d).map(|j| self.basis_product(i, j)).collect())
            .collect();
        let mut assoc: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let ij = &products[i][j];
                for k in 0..d {
                    let lhs = self.product(ij, &basis[k]);
                    let rhs = self.product(&basis[i], &products[j][k]);
                    assoc = assoc.max(max_abs_vec(&(lhs - rhs)));
                }
            }
        }
        let mut unit: f64 = 0.0;
        for b in &basis {
            unit = unit.max(max_abs_vec(&(self.product(&self.unit, b) - b)));
            unit = unit.max(max_abs_vec(&(self.product(b, &self.unit) - b)));
        }
        let mut involution: f64 = 0.0;
        let mut anti: f64 = 0.0;
        let stars: Vec<CVector> = basis.iter().map(|b| self.star(b)).collect();
        for (i, b) in basis.iter().enumerate() {
            involution = involution.max(max_abs_vec(&(self.star(&stars[i]) - b)));
            for j in 0..d {
                let lhs = self.star(&products[i][j]);
                let rhs = self.product(&stars[j], &stars[i]);
                anti = anti.max(max_abs_vec(&(lhs - rhs)));
            }
        }
        AlgebraReport { associativity: assoc, unit, involution, anti_multiplicative: anti }
    }

    /// Smallest eigenvalue of the Gram form of the canonical trace.
    pub fn trace_gram_min_eig(&self) -> Result<f64, HopfError> {
        let g = self.gram(&self.regular_trace());
        let (vals, _) = hermitian_eigen(&g)?;
        Ok(vals.first().copied().unwrap_or(0.0))
    }

    pub fn is_commutative(&self, tol: &Tolerance) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| max_abs_vec(&(self.basis_product(i, j) - self.basis_product(j, i))) <= tol.abs_tol)
        })
    }

    pub fn one_dim() -> StarAlgebra {
        StarAlgebra {
            labels: vec!["1".into()],
            mult: MultTable::from_sparse(1, vec![vec![(0, ONE)]]),
            unit: CVector::from_element(1, ONE),
            star: CMatrix::identity(1, 1),
        }
    }

    /// `C(n points)` with the basis of minimal projections.
    pub fn functions_on_points(n: usize) -> StarAlgebra {
        let mult = MultTable::from_dense(n, |i, j, k| if i == j && j == k { ONE } else { ZERO });
        StarAlgebra {
            labels: (0..n).map(|i| format!("δ{i}")).collect(),
            mult,
            unit: CVector::from_element(n, ONE),
            star: CMatrix::identity(n, n),
        }
    }

    /// `M_n(ℂ)` with matrix units `E_ij` at index `i * n + j`.
    pub fn full_matrix(n: usize) -> StarAlgebra {
        let d = n * n;
        let mut terms = vec![Vec::new(); d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    terms[(i * n + j) * d + (j * n + l)].push((i * n + l, ONE));
                }
            }
        }
        let mut star = CMatrix::zeros(d, d);
        let mut unit = CVector::zeros(d);
        for i in 0..n {
            unit[i * n + i] = ONE;
            for j in 0..n {
                star[(j * n + i, i * n + j)] = ONE;
            }
        }
        StarAlgebra {
            labels: (0..d).map(|k| format!("E{}{}", k / n, k % n)).collect(),
            mult: MultTable::from_sparse(d, terms),
            unit,
            star,
        }
    }

    /// Relabels the basis.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }
}

/// Max residual per *-algebra axiom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraReport {
    pub associativity: f64,
    pub unit: f64,
    pub involution: f64,
    pub anti_multiplicative: f64,
}

impl AlgebraReport {
    pub fn max(&self) -> f64 {
        self.associativity.max(self.unit).max(self.involution).max(self.anti_multiplicative)
    }

    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("associativity", self.associativity),
            ("unit", self.unit),
            ("star_involution", self.involution),
            ("star_anti_multiplicative", self.anti_multiplicative),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_algebra_axioms() {
        let m = StarAlgebra::full_matrix(3);
        assert!(m.verify().max() < 1e-14);
        assert_eq!(m.center(&Tolerance::default()).unwrap().ncols(), 1);
        assert!(m.trace_gram_min_eig().unwrap() > 0.5);
    }

    #[test]
    fn tensor_and_opposite() {
        let m = StarAlgebra::full_matrix(2);
        let p = StarAlgebra::functions_on_points(3);
        let t = m.tensor(&p);
        assert_eq!(t.dim(), 12);
        assert!(t.verify().max() < 1e-14);
        let o = m.opposite();
        assert!(o.verify().max() < 1e-14);
        let e01 = m.basis(1);
        let e10 = m.basis(2);
        assert_eq!(o.product(&e01, &e10), m.product(&e10, &e01));
    }

    #[test]
    fn diagonal_subalgebra() {
        let m = StarAlgebra::full_matrix(2);
        let mut b = CMatrix::zeros(4, 2);
        b[(0, 0)] = ONE;
        b[(3, 1)] = ONE;
        let s = m.subalgebra(&b, &Tolerance::default()).unwrap();
        assert!(s.is_commutative(&Tolerance::default()));
        assert!(s.verify().max() < 1e-14);
        let mut off = CMatrix::zeros(4, 1);
        off[(1, 0)] = ONE;
        assert!(matches!(m.subalgebra(&off, &Tolerance::default()), Err(HopfError::NotClosed(_))));
    }

    #[test]
    fn left_and_right_multiplication() {
        let m = StarAlgebra::full_matrix(2);
        let a = CVector::from_fn(4, |i, _| C64::new(i as f64, 1.0));
        let b = CVector::from_fn(4, |i, _| C64::new(1.0, -(i as f64)));
        assert!(max_abs_vec(&(m.left_mult(&a) * &b - m.product(&a, &b))) < 1e-12);
        assert!(max_abs_vec(&(m.right_mult(&b) * &a - m.product(&a, &b))) < 1e-12);
    }
}
