//! Checked SVD and Hermitian eigendecomposition.
//!
//! nalgebra's bidiagonal SVD occasionally returns factors that do not reproduce
//! the input when entries sit at roundoff level (seen on rank-one projections
//! with ~1e-17 entries). Both routines chop roundoff, verify the factorization,
//! and retry under random unitary rotations when the check fails.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{c, max_abs, CMatrix, CVector};

const ATTEMPTS: u64 = 6;

/// Thin SVD `m = u · diag(s) · v_t`, singular values descending.
pub(crate) struct Svd {
    pub u: CMatrix,
    pub s: Vec<f64>,
    pub v_t: CMatrix,
}

fn chop(m: &CMatrix) -> CMatrix {
    let thr = 64.0 * f64::EPSILON * max_abs(m);
    m.map(|z| c(if z.re.abs() < thr { 0.0 } else { z.re }, if z.im.abs() < thr { 0.0 } else { z.im }))
}

fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
    g.qr().q()
}

fn unitary_defect(q: &CMatrix) -> f64 {
    max_abs(&(q.adjoint() * q - CMatrix::identity(q.ncols(), q.ncols())))
}

fn raw_svd(m: &CMatrix) -> Svd {
    let svd = m.clone().svd(true, true);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let u0 = svd.u.expect("u requested");
    let v0 = svd.v_t.expect("v_t requested");
    let mut u = CMatrix::zeros(u0.nrows(), order.len());
    let mut v_t = CMatrix::zeros(order.len(), v0.ncols());
    for (new, &old) in order.iter().enumerate() {
        u.set_column(new, &u0.column(old));
        v_t.set_row(new, &v0.row(old));
    }
    Svd { u, s: order.iter().map(|&i| svd.singular_values[i]).collect(), v_t }
}

fn svd_error(m: &CMatrix, f: &Svd) -> f64 {
    let d = CMatrix::from_diagonal(&CVector::from_iterator(f.s.len(), f.s.iter().map(|&x| c(x, 0.0))));
    let rec = max_abs(&(&f.u * d * &f.v_t - m));
    rec.max(unitary_defect(&f.u)).max(unitary_defect(&f.v_t.adjoint()))
}

pub(crate) fn svd(m: &CMatrix) -> Svd {
    let m = chop(m);
    let ok = 1e-11 * (1.0 + max_abs(&m));
    let mut best = raw_svd(&m);
    let mut best_err = svd_error(&m, &best);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut attempt = 0;
    while best_err > ok && attempt < ATTEMPTS {
        attempt += 1;
        let q = random_unitary(m.nrows(), &mut rng);
        let p = random_unitary(m.ncols(), &mut rng);
        let f = raw_svd(&(&q * &m * &p));
        let f = Svd { u: q.adjoint() * f.u, s: f.s, v_t: f.v_t * p.adjoint() };
        let err = svd_error(&m, &f);
        if err < best_err {
            best = f;
            best_err = err;
        }
    }
    best
}

/// Eigenvalues (unsorted) and unitary eigenvectors of a Hermitian matrix.
pub(crate) fn hermitian_eig(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = chop(h);
    let ok = 1e-11 * (1.0 + max_abs(&h));
    let run = |x: &CMatrix| {
        let e = x.clone().symmetric_eigen();
        (e.eigenvalues.iter().copied().collect::<Vec<f64>>(), e.eigenvectors)
    };
    let err = |vals: &[f64], vecs: &CMatrix| {
        let d = CMatrix::from_diagonal(&CVector::from_iterator(vals.len(), vals.iter().map(|&x| c(x, 0.0))));
        max_abs(&(vecs * d * vecs.adjoint() - &h)).max(unitary_defect(vecs))
    };
    let mut best = run(&h);
    let mut best_err = err(&best.0, &best.1);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut attempt = 0;
    while best_err > ok && attempt < ATTEMPTS {
        attempt += 1;
        let q = random_unitary(h.nrows(), &mut rng);
        let x = &q * &h * q.adjoint();
        let x = (&x + x.adjoint()).scale(0.5);
        let (vals, vecs) = run(&x);
        let vecs = q.adjoint() * vecs;
        let e = err(&vals, &vecs);
        if e < best_err {
            best = (vals, vecs);
            best_err = e;
        }
    }
    best
}
