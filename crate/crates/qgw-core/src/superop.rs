//! Superoperators M_n -> M_n as concrete n^2 x n^2 tensors.
//!
//! Index convention: `T[(i,j),(k,l)]` is the coefficient of `x_{kl}` in
//! `apply(T, x)_{ij}`, flattened row-major on both pairs, so
//! `vec(|k><l|) = |k> (x) |l>`. Realignment swaps the bottom-right and
//! top-left tensor legs: `(T^R)[(i,j),(k,l)] = T[(l,j),(k,i)]`.

use crate::error::{Error, Result};
use crate::numlin::{unvec, vec_of, CMatrix};
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct SuperOp {
    n: usize,
    mat: CMatrix,
}

impl SuperOp {
    pub fn from_matrix(mat: CMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::Input("superoperator matrix must be square".into()));
        }
        let side = mat.rows();
        let n = (side as f64).sqrt().round() as usize;
        if n * n != side {
            return Err(Error::Input(format!("side {side} is not a perfect square")));
        }
        if !mat.is_finite() {
            return Err(Error::Input("superoperator has non-finite entries".into()));
        }
        Ok(Self { n, mat })
    }

    pub fn zero(n: usize) -> Self {
        Self { n, mat: CMatrix::zeros(n * n, n * n) }
    }

    /// The identity map x -> x.
    pub fn identity(n: usize) -> Self {
        Self { n, mat: CMatrix::identity(n * n) }
    }

    /// The transposition map x -> x^T.
    pub fn swap(n: usize) -> Self {
        let mut s = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                s.set(i, j, j, i, Complex64::ONE);
            }
        }
        s
    }

    /// The map x -> Tr(x) I, whose matrix is Omega Omega^H for Omega = vec(I).
    pub fn trace_map(n: usize) -> Self {
        let mut s = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                s.set(i, i, k, k, Complex64::ONE);
            }
        }
        s
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> Complex64) -> Self {
        let mat = CMatrix::from_fn(n * n, n * n, |r, c| f(r / n, r % n, c / n, c % n));
        Self { n, mat }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        self.mat[(i * self.n + j, k * self.n + l)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, z: Complex64) {
        self.mat[(i * self.n + j, k * self.n + l)] = z;
    }

    /// Leg swap (T^R)[(i,j),(k,l)] = T[(l,j),(k,i)]. An involution.
    pub fn realign(&self) -> Self {
        Self::from_fn(self.n, |i, j, k, l| self.get(l, j, k, i))
    }

    /// apply(T, x)_{ij} = sum_{kl} T[(i,j),(k,l)] x_{kl}.
    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.rows() != self.n || x.cols() != self.n {
            return Err(Error::Input(format!(
                "apply: expected a {0}x{0} matrix, got {1}x{2}",
                self.n,
                x.rows(),
                x.cols()
            )));
        }
        let v = vec_of(x);
        let mut out = vec![Complex64::ZERO; self.n * self.n];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for (c, &vc) in v.iter().enumerate() {
                acc += self.mat[(r, c)] * vc;
            }
            *o = acc;
        }
        Ok(unvec(&out, self.n))
    }

    /// Normalized diagrammatic Schur product on M_n:
    /// (F * G)[(i,j),(k,l)] = (1/n) sum_{p,q} F[(i,p),(k,q)] G[(p,j),(q,l)].
    pub fn schur_product(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Input("schur_product: dimension mismatch".into()));
        }
        let n = self.n;
        let inv_n = Complex64::new(1.0 / n as f64, 0.0);
        Ok(Self::from_fn(n, |i, j, k, l| {
            let mut acc = Complex64::ZERO;
            for p in 0..n {
                for q in 0..n {
                    acc += self.get(i, p, k, q) * other.get(p, j, q, l);
                }
            }
            acc * inv_n
        }))
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> Self {
        Self { n: self.n, mat: self.mat.conj() }
    }

    /// Matrix transpose of the n^2 x n^2 representation.
    pub fn transpose_map(&self) -> Self {
        Self { n: self.n, mat: self.mat.transpose() }
    }

    pub fn adjoint_map(&self) -> Self {
        Self { n: self.n, mat: self.mat.adjoint() }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Input("compose: dimension mismatch".into()));
        }
        Ok(Self { n: self.n, mat: self.mat.matmul(&other.mat) })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self { n: self.n, mat: self.mat.add(&other.mat) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self { n: self.n, mat: self.mat.sub(&other.mat) }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { n: self.n, mat: self.mat.scale(s) }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.mat.max_abs_diff(&other.mat)
    }
}

/// Multiplication and unit tensors of a special symmetric dagger-Frobenius
/// monoid, stored densely in the standard basis. Comultiplication and counit
/// are the adjoints.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub n: usize,
    /// dim x dim^2 multiplication tensor.
    pub mult: CMatrix,
    /// dim x 1 unit.
    pub unit: CMatrix,
}

impl FrobeniusData {
    pub fn comult(&self) -> CMatrix {
        self.mult.adjoint()
    }

    pub fn counit(&self) -> CMatrix {
        self.unit.adjoint()
    }

    /// Cup C -> X (x) X as a dim^2 x 1 column: comult . unit.
    pub fn cup(&self) -> CMatrix {
        self.comult().matmul(&self.unit)
    }

    /// Cap X (x) X -> C as a 1 x dim^2 row: counit . mult.
    pub fn cap(&self) -> CMatrix {
        self.counit().matmul(&self.mult)
    }
}

/// The classical monoid on C^n: multiplication copies the standard basis,
/// m(|i> (x) |j>) = delta_ij |i>, with unit the all-ones vector.
pub fn frobenius_cn(n: usize) -> FrobeniusData {
    let mut mult = CMatrix::zeros(n, n * n);
    for i in 0..n {
        mult[(i, i * n + i)] = Complex64::ONE;
    }
    let unit = CMatrix::from_real(n, 1, &vec![1.0; n]).unwrap();
    FrobeniusData { n, mult, unit }
}

/// The endomorphism monoid on M_n: multiplication is matrix multiplication
/// under vec, with unit vec(I). Not special: m . m^H = n id.
pub fn frobenius_mn(n: usize) -> FrobeniusData {
    let d = n * n;
    let mut mult = CMatrix::zeros(d, d * d);
    // m(vec X (x) vec Y) = vec(XY): [(i,j), ((i,s),(s,j))] = 1.
    for i in 0..n {
        for j in 0..n {
            for s in 0..n {
                let row = i * n + j;
                let col = (i * n + s) * d + (s * n + j);
                mult[(row, col)] = Complex64::ONE;
            }
        }
    }
    let mut unit = CMatrix::zeros(d, 1);
    for i in 0..n {
        unit[(i * n + i, 0)] = Complex64::ONE;
    }
    FrobeniusData { n, mult, unit }
}
