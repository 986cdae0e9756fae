//! Dense complex linear algebra on top of `nalgebra`.
//!
//! Everything here works on small dense matrices (a few hundred rows at most),
//! so the routines favour SVD-based robustness over speed.

mod decomp;
mod wedderburn;

pub use wedderburn::{wedderburn_blocks, WedderburnBlock, WedderburnOptions};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("matrix contains NaN or infinite entries")]
    NonFinite,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("algebra is not semisimple: trace Gram form has min eigenvalue {min_eig:e}")]
    NotSemisimple { min_eig: f64 },
    #[error("wedderburn decomposition did not separate blocks after {attempts} seeds")]
    SpectralCollision { attempts: usize },
    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// Absolute and relative cutoffs shared by every numerical check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    /// Singular values below `rank_tol * sigma_max` count as zero.
    pub rank_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs_tol: 1e-9, rank_tol: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rank_tol: f64) -> Result<Self> {
        for t in [abs_tol, rank_tol] {
            if !t.is_finite() || t < 0.0 {
                return Err(LinalgError::InvalidTolerance(t));
            }
        }
        Ok(Tolerance { abs_tol, rank_tol })
    }

    /// Same cutoff for both residuals and rank decisions.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol)
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn check_finite(m: &CMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(LinalgError::NonFinite)
    }
}

pub fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(m.nrows())
}

/// Largest absolute entry; the residual measure used by all verification reports.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_vec(v: &CVector) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CVector, b: &CVector) -> f64 {
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn basis_vector(n: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[i] = ONE;
    v
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let mut out = CVector::zeros(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        if *x == ZERO {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

pub fn conj_vec(v: &CVector) -> CVector {
    v.map(|z| z.conj())
}

/// Singular values (descending) together with the full right singular basis.
///
/// Wide matrices are padded with zero rows so that `V` is always square.
fn full_svd(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let cols = m.ncols();
    let padded;
    let work = if m.nrows() < cols {
        padded = {
            let mut p = CMatrix::zeros(cols, cols);
            p.rows_mut(0, m.nrows()).copy_from(m);
            p
        };
        &padded
    } else {
        m
    };
    let f = decomp::svd(work);
    (f.s, f.v_t.adjoint())
}

fn rank_from_singular(sv: &[f64], tol: &Tolerance) -> usize {
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax <= f64::MIN_POSITIVE {
        return 0;
    }
    // noise floor so that an all-roundoff matrix has rank zero
    let cut = (tol.rank_tol * smax).max(tol.abs_tol * 1e-3);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Number of singular values above `max(rank_tol * sigma_max, abs_tol / 1000)`.
pub fn numerical_rank(m: &CMatrix, tol: &Tolerance) -> Result<usize> {
    check_finite(m)?;
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0);
    }
    Ok(rank_from_singular(&decomp::svd(m).s, tol))
}

/// Orthonormal basis of the null space, one column per kernel vector.
pub fn kernel(m: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    check_finite(m)?;
    let cols = m.ncols();
    if cols == 0 {
        return Ok(CMatrix::zeros(0, 0));
    }
    if m.nrows() == 0 {
        return Ok(CMatrix::identity(cols, cols));
    }
    let (sv, v) = full_svd(m);
    let rank = rank_from_singular(&sv, tol);
    Ok(v.columns(rank, cols - rank).into_owned())
}

/// Orthonormal basis of the column space.
pub fn range_basis(m: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    check_finite(m)?;
    if m.ncols() == 0 || m.nrows() == 0 {
        return Ok(CMatrix::zeros(m.nrows(), 0));
    }
    let f = decomp::svd(m);
    let rank = rank_from_singular(&f.s, tol);
    Ok(f.u.columns(0, rank).into_owned())
}

/// Minimum-norm least-squares solution of `a x = b` via SVD.
pub fn lstsq(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    check_finite(a)?;
    check_finite(b)?;
    if a.nrows() != b.nrows() {
        return Err(LinalgError::DimensionMismatch {
            expected: format!("{} rows", a.nrows()),
            found: format!("{} rows", b.nrows()),
        });
    }
    if a.ncols() == 0 {
        return Ok(CMatrix::zeros(0, b.ncols()));
    }
    let f = decomp::svd(a);
    let rank = rank_from_singular(&f.s, tol);
    let mut ub = f.u.columns(0, rank).adjoint() * b;
    for (i, mut row) in ub.row_iter_mut().enumerate() {
        row /= c(f.s[i], 0.0);
    }
    Ok(f.v_t.rows(0, rank).adjoint() * ub)
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues in ascending order.
pub fn hermitian_eigen(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = check_square(m)?;
    check_finite(m)?;
    if n == 0 {
        return Ok((vec![], CMatrix::zeros(0, 0)));
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let (ev, evecs) = decomp::hermitian_eig(&sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| ev[i].total_cmp(&ev[j]));
    let vals = order.iter().map(|&i| ev[i]).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &evecs.column(i));
    }
    Ok((vals, vecs))
}

/// Positivity report for a square matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdReport {
    pub psd: bool,
    pub hermitian: bool,
    pub min_eig: f64,
}

pub fn is_psd(m: &CMatrix, tol: &Tolerance) -> Result<PsdReport> {
    check_square(m)?;
    check_finite(m)?;
    let scale = spectral_norm(m)?.max(1.0);
    let hermitian = max_abs(&(m - m.adjoint())) <= tol.abs_tol * scale;
    let (vals, _) = hermitian_eigen(m)?;
    let min_eig = vals.first().copied().unwrap_or(0.0);
    Ok(PsdReport { psd: hermitian && min_eig >= -tol.abs_tol * scale, hermitian, min_eig })
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> Result<f64> {
    check_finite(m)?;
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0.0);
    }
    Ok(decomp::svd(m).s.first().copied().unwrap_or(0.0))
}

/// Applies `f` to the eigenvalues of a Hermitian matrix.
pub fn hermitian_fn(m: &CMatrix, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    let (vals, vecs) = hermitian_eigen(m)?;
    let d = CMatrix::from_diagonal(&CVector::from_iterator(vals.len(), vals.iter().map(|&x| c(f(x), 0.0))));
    Ok(&vecs * d * vecs.adjoint())
}

/// Inverse of a square matrix, `None` when numerically singular.
pub fn inverse(m: &CMatrix, tol: &Tolerance) -> Result<Option<CMatrix>> {
    let n = check_square(m)?;
    if numerical_rank(m, tol)? < n {
        return Ok(None);
    }
    Ok(m.clone().try_inverse())
}

/// Groups sorted reals into clusters whose consecutive gaps are at most `gap`.
pub fn cluster_sorted(values: &[f64], gap: f64) -> Vec<Vec<usize>> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        match clusters.last_mut() {
            Some(cl) if (v - values[*cl.last().unwrap()]).abs() <= gap => cl.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, k: usize) -> CMatrix {
        CMatrix::from_fn(r, k, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn rank_one_projection_with_roundoff() {
        // x ↦ φ(x)1 on M_2, entries as produced by an isotypical projection
        let v = [
            0.49999999999999967, -1.3877787807814457e-17, -1.3877787807814457e-17, 0.5000000000000003,
            -2.7755575615628914e-17, -9.020562075079397e-17, -2.7755575615628914e-17, 4.163336342344337e-17,
            -2.7755575615628914e-17, -2.7755575615628914e-17, -9.020562075079397e-17, 4.163336342344337e-17,
            0.5000000000000003, 0.0, 0.0, 0.5000000000000002,
        ];
        let m = CMatrix::from_column_slice(4, 4, &v.map(|x| c(x, 0.0)));
        let tol = Tolerance::default();
        let r = range_basis(&m, &tol).unwrap();
        assert_eq!(r.ncols(), 1);
        let s = 1.0 / 2f64.sqrt();
        assert!((r[(0, 0)].norm() - s).abs() < 1e-12 && (r[(3, 0)].norm() - s).abs() < 1e-12);
        assert!((spectral_norm(&m).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(kernel(&m, &tol).unwrap().ncols(), 3);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let k = kernel(&CMatrix::identity(2, 2), &Tolerance::default()).unwrap();
        assert_eq!(k.ncols(), 0);
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = CMatrix::from_row_slice(1, 2, &[ONE, -ONE]);
        let k = kernel(&m, &Tolerance::default()).unwrap();
        assert_eq!(k.ncols(), 1);
        let v = k.column(0);
        let phase = v[0] / v[0].norm();
        let s = 1.0 / 2f64.sqrt();
        assert!((v[0] / phase - c(s, 0.0)).norm() < 1e-12);
        assert!((v[1] / phase - c(s, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn kernel_of_rank_three_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = random_matrix(&mut rng, 5, 3) * random_matrix(&mut rng, 3, 5);
        let tol = Tolerance::default();
        let k = kernel(&m, &tol).unwrap();
        assert_eq!(k.ncols(), 2);
        assert_eq!(numerical_rank(&m, &tol).unwrap(), 3);
        assert!(max_abs(&(&m * &k)) <= 1e-9 * spectral_norm(&m).unwrap());
        assert!(max_abs(&(k.adjoint() * &k - CMatrix::identity(2, 2))) < 1e-12);
    }

    #[test]
    fn psd_examples() {
        let tol = Tolerance::default();
        let r = is_psd(&CMatrix::identity(3, 3), &tol).unwrap();
        assert!(r.psd);
        assert!((r.min_eig - 1.0).abs() < 1e-14);
        let d = CMatrix::from_diagonal(&CVector::from_vec(vec![ONE, -ONE]));
        let r = is_psd(&d, &tol).unwrap();
        assert!(!r.psd);
        assert!((r.min_eig + 1.0).abs() < 1e-14);
        assert!(is_psd(&CMatrix::zeros(2, 3), &tol).is_err());
    }

    #[test]
    fn spectral_norm_examples() {
        assert!((spectral_norm(&CMatrix::identity(4, 4)).unwrap() - 1.0).abs() < 1e-14);
        let m = CMatrix::from_element(1, 1, c(2.0, 0.0));
        assert!((spectral_norm(&m).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn nonfinite_rejected() {
        let m = CMatrix::from_element(2, 2, c(f64::NAN, 0.0));
        assert_eq!(kernel(&m, &Tolerance::default()), Err(LinalgError::NonFinite));
        assert_eq!(spectral_norm(&m), Err(LinalgError::NonFinite));
    }

    #[test]
    fn clusters_split_on_gaps() {
        let cl = cluster_sorted(&[0.0, 1e-12, 1.0, 2.0, 2.0 + 1e-11], 1e-8);
        assert_eq!(cl, vec![vec![0, 1], vec![2], vec![3, 4]]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix_strategy() -> impl Strategy<Value = CMatrix> {
            (1usize..7, 1usize..7, 0usize..4, any::<u64>()).prop_map(|(r, k, drop, seed)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let inner = (r.min(k)).saturating_sub(drop).max(1);
                random_matrix(&mut rng, r, inner) * random_matrix(&mut rng, inner, k)
            })
        }

        proptest! {
            #[test]
            fn rank_nullity(m in matrix_strategy()) {
                let tol = Tolerance::default();
                let k = kernel(&m, &tol).unwrap();
                prop_assert_eq!(numerical_rank(&m, &tol).unwrap() + k.ncols(), m.ncols());
                let norm = spectral_norm(&m).unwrap();
                prop_assert!(max_abs(&(&m * &k)) <= 1e-9 * norm.max(1.0));
            }

            #[test]
            fn norm_of_adjoint(m in matrix_strategy()) {
                let a = spectral_norm(&m).unwrap();
                let b = spectral_norm(&m.adjoint()).unwrap();
                prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0));
            }
        }
    }
}
