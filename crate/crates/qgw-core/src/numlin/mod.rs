//! Dense complex linear algebra primitives: matrices, ranks,
//! projector/isometry predicates, subspace operations, seeded randomness.

mod decomp;
mod matrix;
mod rng;

pub use decomp::{hermitian_eigen, orthonormalize_columns, singular_values};
pub use matrix::{unvec, vec_of, CMatrix};
pub use rng::Rng;

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Numerical slack for all predicates. The constructions in this crate are
/// exact rationals and phases, so the default leaves several digits of
/// headroom in double precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps: 1e-8 }
    }
}

impl Tolerance {
    pub fn new(eps: f64) -> Result<Self> {
        if eps <= 0.0 || eps.is_nan() || !eps.is_finite() {
            return Err(Error::Input(format!("tolerance must be positive and finite, got {eps}")));
        }
        Ok(Self { eps })
    }
}

/// Numerical rank: the number of singular values above eps * max(1, sigma_max).
pub fn rank(m: &CMatrix, tol: Tolerance) -> Result<usize> {
    if !m.is_finite() {
        return Err(Error::Input("rank: matrix has non-finite entries".into()));
    }
    let sv = singular_values(m);
    let cutoff = tol.eps * sv.first().copied().unwrap_or(0.0).max(1.0);
    Ok(sv.iter().filter(|&&s| s > cutoff).count())
}

/// True iff max|M^2 - M| <= eps and max|M^H - M| <= eps.
pub fn is_projector(m: &CMatrix, tol: Tolerance) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::Input(format!(
            "is_projector: matrix is {}x{}, not square",
            m.rows(),
            m.cols()
        )));
    }
    Ok(projector_defect(m).0 <= tol.eps && projector_defect(m).1 <= tol.eps)
}

/// (max|M^2 - M|, max|M^H - M|).
pub fn projector_defect(m: &CMatrix) -> (f64, f64) {
    let idem = m.matmul(m).max_abs_diff(m);
    let herm = m.adjoint().max_abs_diff(m);
    (idem, herm)
}

/// True iff max|V^H V - I| <= eps. Requires rows >= cols: there is no
/// isometry C^k -> C^n with k > n.
pub fn is_isometry(v: &CMatrix, tol: Tolerance) -> Result<bool> {
    if v.rows() < v.cols() {
        return Err(Error::Input(format!(
            "is_isometry: {} rows < {} cols",
            v.rows(),
            v.cols()
        )));
    }
    let gram = v.adjoint().matmul(v);
    Ok(gram.max_abs_diff(&CMatrix::identity(v.cols())) <= tol.eps)
}

/// Inverse square root of a Hermitian positive definite matrix, via
/// eigendecomposition. Fails if some eigenvalue is <= eps.
pub fn inv_sqrt_psd(f: &CMatrix, tol: Tolerance) -> Result<CMatrix> {
    if !f.is_square() {
        return Err(Error::Input("inv_sqrt_psd: matrix not square".into()));
    }
    if f.adjoint().max_abs_diff(f) > tol.eps {
        return Err(Error::Input("inv_sqrt_psd: matrix not Hermitian".into()));
    }
    let (vals, vecs) = hermitian_eigen(f);
    if let Some(bad) = vals.iter().find(|&&l| l <= tol.eps) {
        return Err(Error::Singular(format!(
            "inv_sqrt_psd: eigenvalue {bad:.3e} <= eps = {:.1e}",
            tol.eps
        )));
    }
    let d = CMatrix::from_diag(
        &vals
            .iter()
            .map(|&l| Complex64::new(1.0 / l.sqrt(), 0.0))
            .collect::<Vec<_>>(),
    );
    Ok(vecs.matmul(&d).matmul(&vecs.adjoint()))
}

/// dim(col U ∩ col W) = k_U + k_W - rank([U | W]) for matrices with
/// orthonormal columns.
pub fn subspace_intersection_dim(u: &CMatrix, w: &CMatrix, tol: Tolerance) -> Result<usize> {
    for (name, m) in [("U", u), ("W", w)] {
        if !is_isometry(m, tol).unwrap_or(false) {
            return Err(Error::Input(format!(
                "subspace_intersection_dim: {name} does not have orthonormal columns"
            )));
        }
    }
    if u.rows() != w.rows() {
        return Err(Error::Input("subspace_intersection_dim: ambient dimensions differ".into()));
    }
    let stacked = u.hcat(w);
    let r = rank(&stacked, tol)?;
    Ok(u.cols() + w.cols() - r)
}

/// Haar-ish random isometry C^k -> C^n: orthonormalized complex Gaussian
/// columns. Deterministic per seed.
pub fn random_isometry(n: usize, k: usize, seed: u64) -> Result<CMatrix> {
    if k == 0 || k > n {
        return Err(Error::Input(format!("random_isometry: need 1 <= k <= n, got k={k}, n={n}")));
    }
    let mut rng = Rng::new(seed);
    loop {
        let g = CMatrix::from_fn(n, k, |_, _| rng.next_complex_gaussian());
        // A Gaussian draw is full rank except on a null set; retry on the
        // off chance the orthogonalization breaks down.
        if let Some(q) = orthonormalize_columns(&g) {
            return Ok(q);
        }
    }
}

/// Random unitary: orthonormalized complex Gaussian square matrix.
pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    random_isometry(n, n, seed).expect("k = n is always valid")
}

/// Random real orthogonal matrix.
pub fn random_orthogonal(n: usize, seed: u64) -> CMatrix {
    let mut rng = Rng::new(seed);
    loop {
        let g = CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.next_gaussian(), 0.0));
        if let Some(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

/// Random diagonal unitary diag(e^{i theta_1}, ..., e^{i theta_n}).
pub fn random_diagonal_unitary(n: usize, seed: u64) -> CMatrix {
    let mut rng = Rng::new(seed);
    CMatrix::from_diag(
        &(0..n)
            .map(|_| Complex64::from_polar(1.0, std::f64::consts::TAU * rng.next_f64()))
            .collect::<Vec<_>>(),
    )
}

/// Random diagonal matrix with +-1 entries.
pub fn random_diagonal_signs(n: usize, seed: u64) -> CMatrix {
    let mut rng = Rng::new(seed);
    CMatrix::from_diag(
        &(0..n)
            .map(|_| Complex64::new(if rng.next_bool(0.5) { 1.0 } else { -1.0 }, 0.0))
            .collect::<Vec<_>>(),
    )
}

/// Random signed permutation matrix (hyperoctahedral group element).
pub fn random_signed_permutation(n: usize, seed: u64) -> CMatrix {
    let mut rng = Rng::new(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut perm);
    let mut m = CMatrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        let sign = if rng.next_bool(0.5) { 1.0 } else { -1.0 };
        m[(i, j)] = Complex64::new(sign, 0.0);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn rank_identity() {
        assert_eq!(rank(&CMatrix::identity(3), tol()).unwrap(), 3);
    }

    #[test]
    fn rank_all_ones_is_one() {
        assert_eq!(rank(&CMatrix::ones(4), tol()).unwrap(), 1);
    }

    #[test]
    fn rank_of_centering_matrix() {
        // I_4 - J_4/4 kills the all-ones vector and fixes its complement.
        let b = CMatrix::identity(4).sub(&CMatrix::ones(4).scale(Complex64::new(0.25, 0.0)));
        assert_eq!(rank(&b, tol()).unwrap(), 3);
    }

    #[test]
    fn rank_rejects_non_finite() {
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = Complex64::new(f64::NAN, 0.0);
        assert!(rank(&m, tol()).is_err());
    }

    #[test]
    fn projector_examples() {
        let n = 5;
        let b = CMatrix::identity(n).sub(&CMatrix::ones(n).scale(Complex64::new(1.0 / n as f64, 0.0)));
        assert!(is_projector(&b, tol()).unwrap());
        assert!(!is_projector(&CMatrix::ones(3), tol()).unwrap());

        // (1/2) [[1, e^{i t}], [e^{-i t}, 1]] is a rank-1 projector for any phase.
        let theta = 0.7;
        let mut p = CMatrix::zeros(2, 2);
        p[(0, 0)] = Complex64::new(0.5, 0.0);
        p[(1, 1)] = Complex64::new(0.5, 0.0);
        p[(0, 1)] = Complex64::from_polar(0.5, theta);
        p[(1, 0)] = Complex64::from_polar(0.5, -theta);
        assert!(is_projector(&p, tol()).unwrap());
    }

    #[test]
    fn projector_rank_complement() {
        for seed in 0..5u64 {
            let v = random_isometry(5, 2, seed).unwrap();
            let p = v.matmul(&v.adjoint());
            assert!(is_projector(&p, tol()).unwrap());
            let q = CMatrix::identity(5).sub(&p);
            assert_eq!(
                rank(&p, tol()).unwrap() + rank(&q, tol()).unwrap(),
                5,
                "rank P + rank (I-P) = n"
            );
        }
    }

    #[test]
    fn isometry_examples() {
        assert!(is_isometry(&CMatrix::identity(4), tol()).unwrap());
        // (1/sqrt 2) [I; I] stacked.
        let k = 3;
        let v = CMatrix::from_fn(2 * k, k, |i, j| {
            if i % k == j {
                Complex64::new(1.0 / 2f64.sqrt(), 0.0)
            } else {
                Complex64::ZERO
            }
        });
        assert!(is_isometry(&v, tol()).unwrap());
        // Column (1,1)^T has norm sqrt(2).
        let bad = CMatrix::from_real(2, 1, &[1.0, 1.0]).unwrap();
        assert!(!is_isometry(&bad, tol()).unwrap());
        // k > n is an input error, not "false".
        assert!(is_isometry(&CMatrix::zeros(2, 3), tol()).is_err());
    }

    #[test]
    fn inv_sqrt_cases() {
        let g = inv_sqrt_psd(&CMatrix::identity(3), tol()).unwrap();
        assert!(g.max_abs_diff(&CMatrix::identity(3)) < 1e-12);

        let f = CMatrix::identity(3).scale(Complex64::new(4.0, 0.0));
        let g = inv_sqrt_psd(&f, tol()).unwrap();
        assert!(g.max_abs_diff(&CMatrix::identity(3).scale(Complex64::new(0.5, 0.0))) < 1e-12);

        // G F G = I for a random Hermitian PD matrix.
        let mut rng = Rng::new(7);
        let a = CMatrix::from_fn(4, 4, |_, _| rng.next_complex_gaussian());
        let f = a.adjoint().matmul(&a).add(&CMatrix::identity(4));
        let g = inv_sqrt_psd(&f, tol()).unwrap();
        assert!(g.matmul(&f).matmul(&g).max_abs_diff(&CMatrix::identity(4)) < 10.0 * tol().eps);
        assert!(g.adjoint().max_abs_diff(&g) < 1e-10);

        // Singular input is rejected.
        let mut s = CMatrix::identity(2);
        s[(1, 1)] = Complex64::ZERO;
        assert!(matches!(inv_sqrt_psd(&s, tol()), Err(Error::Singular(_))));
    }

    #[test]
    fn subspace_intersection_cases() {
        let id = CMatrix::identity(4);
        assert_eq!(subspace_intersection_dim(&id, &id, tol()).unwrap(), 4);

        // Orthogonal coordinate subspaces.
        let u = CMatrix::from_fn(4, 2, |i, j| {
            if i == j { Complex64::ONE } else { Complex64::ZERO }
        });
        let w = CMatrix::from_fn(4, 2, |i, j| {
            if i == j + 2 { Complex64::ONE } else { Complex64::ZERO }
        });
        assert_eq!(subspace_intersection_dim(&u, &w, tol()).unwrap(), 0);

        // Same span, different bases.
        let w2 = CMatrix::from_fn(4, 2, |i, j| {
            let s = 1.0 / 2f64.sqrt();
            match (i, j) {
                (0, 0) => Complex64::new(s, 0.0),
                (1, 0) => Complex64::new(s, 0.0),
                (0, 1) => Complex64::new(s, 0.0),
                (1, 1) => Complex64::new(-s, 0.0),
                _ => Complex64::ZERO,
            }
        });
        assert_eq!(subspace_intersection_dim(&u, &w2, tol()).unwrap(), 2);

        // Non-orthonormal input is rejected.
        let bad = CMatrix::ones(3);
        assert!(subspace_intersection_dim(&bad, &bad, tol()).is_err());
    }

    #[test]
    fn deterministic_conjugate_free_subspace() {
        // Columns of (1/sqrt 2) [I_k; i I_k; 0] meet their conjugate span
        // only at 0 when 2k <= n.
        let (n, k) = (5, 2);
        let s = 1.0 / 2f64.sqrt();
        let u = CMatrix::from_fn(n, k, |i, j| {
            if i == j {
                Complex64::new(s, 0.0)
            } else if i == j + k {
                Complex64::new(0.0, s)
            } else {
                Complex64::ZERO
            }
        });
        assert!(is_isometry(&u, tol()).unwrap());
        assert_eq!(subspace_intersection_dim(&u, &u.conj(), tol()).unwrap(), 0);
    }

    #[test]
    fn random_isometry_reproducible() {
        let a = random_isometry(4, 2, 1).unwrap();
        let b = random_isometry(4, 2, 1).unwrap();
        assert_eq!(a, b, "identical seed gives bit-identical output");
        let c = random_isometry(4, 2, 2).unwrap();
        assert!(a.max_abs_diff(&c) > 1e-3);
        for seed in 0..20 {
            assert!(is_isometry(&random_isometry(6, 3, seed).unwrap(), tol()).unwrap());
        }
        assert!(random_isometry(3, 4, 0).is_err());
    }

    #[test]
    fn random_subspaces_avoid_conjugates() {
        // E ∩ conj(E) = 0 almost surely for k <= n/2; sampled at n=6, k=3.
        let mut hits = 0;
        for seed in 0..100 {
            let v = random_isometry(6, 3, seed).unwrap();
            if subspace_intersection_dim(&v, &v.conj(), tol()).unwrap() == 0 {
                hits += 1;
            }
        }
        assert!(hits >= 99, "only {hits}/100 seeds gave trivial intersection");
    }
}
