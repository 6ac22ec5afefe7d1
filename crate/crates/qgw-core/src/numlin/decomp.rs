//! Eigen- and singular-value decompositions by complex Jacobi rotations.
//!
//! Sizes here are tiny (at most ~100 on a side), so we favour the rotation
//! methods: they are simple, backward stable, and deliver high relative
//! accuracy for the well-conditioned projectors and frames this crate
//! manipulates.

use super::matrix::CMatrix;
use num_complex::Complex64;

const MAX_SWEEPS: usize = 64;
const OFF_TOL: f64 = 1e-14;

/// Jacobi rotation parameters zeroing the (p,q) entry of the Hermitian block
/// [[a, r e^{i phi}], [r e^{-i phi}, b]] with a, b real and r = |apq| > 0.
fn rotation(a: f64, b: f64, apq: Complex64) -> (f64, f64, Complex64) {
    let r = apq.norm();
    let phase = apq / r;
    let tau = (a - b) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    (c, s, phase)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and a matrix whose columns are the
/// corresponding orthonormal eigenvectors. Only the Hermitian part of the
/// input is referenced.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    assert!(m.is_square(), "hermitian_eigen needs a square matrix");
    let n = m.rows();
    // Symmetrize to guard against tiny non-Hermitian noise in the input.
    let mut a = CMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = CMatrix::identity(n);

    let scale = a.max_abs().max(1e-300);
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= OFF_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm() <= OFF_TOL * scale {
                    continue;
                }
                let (c, s, phase) = rotation(a[(p, p)].re, a[(q, q)].re, apq);
                // G has columns p,q: G_pp = c, G_qp = s*conj(phase),
                // G_pq = -s*phase, G_qq = c. Apply A <- G^H A G, V <- V G.
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = c * aip + s * phase.conj() * aiq;
                    a[(i, q)] = -s * phase * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = c * apj + s * phase * aqj;
                    a[(q, j)] = -s * phase.conj() * apj + c * aqj;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = c * vip + s * phase.conj() * viq;
                    v[(i, q)] = -s * phase * vip + c * viq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let evals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| evals[i].partial_cmp(&evals[j]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| evals[i]).collect();
    let sorted_vecs = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    (sorted_vals, sorted_vecs)
}

/// Singular values in descending order, by one-sided Jacobi: orthogonalize
/// column pairs until every cross inner product is negligible, then read off
/// the column norms.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    // Work on the tall orientation; singular values are shared.
    let mut a = if m.rows() >= m.cols() { m.clone() } else { m.adjoint() };
    let (rows, cols) = (a.rows(), a.cols());
    if rows == 0 || cols == 0 {
        return vec![];
    }

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut app = 0.0f64;
                let mut aqq = 0.0f64;
                let mut apq = Complex64::ZERO;
                for i in 0..rows {
                    app += a[(i, p)].norm_sqr();
                    aqq += a[(i, q)].norm_sqr();
                    apq += a[(i, p)].conj() * a[(i, q)];
                }
                if apq.norm() <= OFF_TOL * (app * aqq).sqrt().max(1e-300) {
                    continue;
                }
                rotated = true;
                let (c, s, phase) = rotation(app, aqq, apq);
                for i in 0..rows {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = c * aip + s * phase.conj() * aiq;
                    a[(i, q)] = -s * phase * aip + c * aiq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

/// Orthonormalize the columns of `m` by modified Gram-Schmidt with
/// reorthogonalization. Returns None if some column is (numerically) in the
/// span of the previous ones.
pub fn orthonormalize_columns(m: &CMatrix) -> Option<CMatrix> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = m.column(j);
        for _ in 0..2 {
            for u in &q {
                let proj: Complex64 =
                    u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for i in 0..rows {
                    v[i] -= proj * u[i];
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for z in &mut v {
            *z /= norm;
        }
        q.push(v);
    }
    Some(CMatrix::from_fn(rows, cols, |i, j| q[j][i]))
}
