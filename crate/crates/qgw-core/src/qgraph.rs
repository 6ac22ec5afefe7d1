//! Quantum graphs on M_n, represented canonically by the orthogonal
//! projector onto their operator space S. The adjacency operator is the
//! realignment of that projector; all graph axioms become exact
//! linear-algebra predicates on the projector.

use crate::error::{Error, Result};
use crate::numlin::{
    hermitian_eigen, is_isometry, projector_defect, unvec, vec_of, CMatrix, Tolerance,
};
use crate::superop::SuperOp;
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct QuantumGraph {
    n: usize,
    proj: SuperOp,
    /// Orthonormal basis of S = img(proj), as n x n matrices.
    basis: Vec<CMatrix>,
}

impl QuantumGraph {
    /// Wrap a projector onto an operator space S of M_n. Rejects inputs that
    /// fail the Hermitian-idempotent check, reporting both defects.
    pub fn from_projector(proj: SuperOp, tol: Tolerance) -> Result<Self> {
        let (idem, herm) = projector_defect(proj.matrix());
        if idem > tol.eps || herm > tol.eps {
            return Err(Error::NotAProjector { idempotency: idem, hermiticity: herm });
        }
        let n = proj.n();
        // Projector spectrum is {0, 1}; the 0.5 threshold is maximally robust.
        let (vals, vecs) = hermitian_eigen(proj.matrix());
        let mut basis = Vec::new();
        for (j, &l) in vals.iter().enumerate() {
            if l > 0.5 {
                basis.push(unvec(&vecs.column(j), n));
            }
        }
        Ok(Self { n, proj, basis })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Projector onto the operator space.
    pub fn projector(&self) -> &SuperOp {
        &self.proj
    }

    /// Adjacency operator: realignment of the projector.
    pub fn adjacency(&self) -> SuperOp {
        self.proj.realign()
    }

    /// Adjacency scaled by n, which is Schur-idempotent under the
    /// normalized Schur product.
    pub fn normalized_adjacency(&self) -> SuperOp {
        self.adjacency().scale(Complex64::new(self.n as f64, 0.0))
    }

    /// Orthonormal basis of the operator space S.
    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn dim_s(&self) -> usize {
        self.basis.len()
    }

    /// Number of edges: n^2 * dim S, matching the counting diagram on the
    /// normalized adjacency.
    pub fn edge_count(&self) -> usize {
        self.n * self.n * self.dim_s()
    }

    fn project_vec(&self, v: &CMatrix) -> CMatrix {
        self.proj.apply(v).expect("dimension checked at construction")
    }

    /// Undirected: the adjoint of every basis element stays in S.
    pub fn is_undirected(&self, tol: Tolerance) -> bool {
        self.basis.iter().all(|b| {
            let bd = b.adjoint();
            self.project_vec(&bd).max_abs_diff(&bd) <= tol.eps
        })
    }

    /// Loopless: proj(vec I) = 0, i.e. every element of S is traceless.
    pub fn is_loopless(&self, tol: Tolerance) -> bool {
        self.project_vec(&CMatrix::identity(self.n)).max_abs() <= tol.eps
    }

    /// Loops at every vertex: I is in S.
    pub fn has_all_loops(&self, tol: Tolerance) -> bool {
        let id = CMatrix::identity(self.n);
        self.project_vec(&id).max_abs_diff(&id) <= tol.eps
    }

    /// Adjoin the identity line: proj + Omega Omega^H / n. Requires loopless.
    pub fn add_loops(&self, tol: Tolerance) -> Result<Self> {
        if !self.is_loopless(tol) {
            return Err(Error::State("add_loops requires a loopless graph".into()));
        }
        let omega = SuperOp::trace_map(self.n).scale(Complex64::new(1.0 / self.n as f64, 0.0));
        Self::from_projector(self.proj.add(&omega), tol)
    }

    /// Remove the identity line. Requires loops at every vertex.
    pub fn remove_loops(&self, tol: Tolerance) -> Result<Self> {
        if !self.has_all_loops(tol) {
            return Err(Error::State("remove_loops requires loops at every vertex".into()));
        }
        let omega = SuperOp::trace_map(self.n).scale(Complex64::new(1.0 / self.n as f64, 0.0));
        Self::from_projector(self.proj.sub(&omega), tol)
    }

    /// Disjoint union: operator spaces embedded block-diagonally into
    /// M_{k+l}, basis elements zero-padded into the corner blocks.
    pub fn disjoint_union(&self, other: &Self, tol: Tolerance) -> Result<Self> {
        let m = self.n + other.n;
        let mut mat = CMatrix::zeros(m * m, m * m);
        let mut accumulate = |b: &CMatrix| {
            let v = vec_of(b);
            for (r, &vr) in v.iter().enumerate() {
                if vr == Complex64::ZERO {
                    continue;
                }
                for (c, &vc) in v.iter().enumerate() {
                    mat[(r, c)] += vr * vc.conj();
                }
            }
        };
        for b in &self.basis {
            accumulate(&b.embed(m, 0, 0));
        }
        for b in &other.basis {
            accumulate(&b.embed(m, self.n, self.n));
        }
        Self::from_projector(SuperOp::from_matrix(mat)?, tol)
    }

    /// Commutator defect max|(u (x) conj u) A - A (u (x) conj u)| for the
    /// adjacency A.
    pub fn invariance_defect(&self, u: &CMatrix) -> Result<f64> {
        if u.rows() != self.n || !u.is_square() {
            return Err(Error::Input(format!(
                "invariance_defect: expected a {0}x{0} matrix",
                self.n
            )));
        }
        if !is_isometry(u, Tolerance::default())? {
            return Err(Error::Input("invariance_defect: matrix is not unitary".into()));
        }
        let action = u.kron(&u.conj());
        let adj = self.adjacency();
        let lhs = action.matmul(adj.matrix());
        let rhs = adj.matrix().matmul(&action);
        Ok(lhs.max_abs_diff(&rhs))
    }

    /// True iff the adjacency commutes with u (x) conj(u) for every u.
    pub fn check_group_invariance(&self, unitaries: &[CMatrix], tol: Tolerance) -> Result<bool> {
        for u in unitaries {
            if self.invariance_defect(u)? > tol.eps {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantGroup {
    Unitary,
    Orthogonal,
}

/// The group-invariant adjacency ansatz Phi(x) = beta x + alpha Tr(x) I
/// + gamma x^T. The transpose term only arises for the orthogonal group.
pub fn invariant_family(
    group: InvariantGroup,
    n: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<SuperOp> {
    if group == InvariantGroup::Unitary && gamma != 0.0 {
        return Err(Error::Input("unitary-invariant maps have no transpose term".into()));
    }
    Ok(SuperOp::identity(n)
        .scale(Complex64::new(beta, 0.0))
        .add(&SuperOp::trace_map(n).scale(Complex64::new(alpha, 0.0)))
        .add(&SuperOp::swap(n).scale(Complex64::new(gamma, 0.0))))
}

/// Projector constructors for the four canonical graphs.
pub mod canonical_projectors {
    use super::*;

    /// Empty graph: the zero operator space.
    pub fn empty(n: usize) -> SuperOp {
        SuperOp::zero(n)
    }

    /// Complete graph: projector onto the traceless matrices,
    /// I - Omega Omega^H / n.
    pub fn complete(n: usize) -> SuperOp {
        SuperOp::identity(n)
            .sub(&SuperOp::trace_map(n).scale(Complex64::new(1.0 / n as f64, 0.0)))
    }

    /// Antisymmetric graph: projector onto the antisymmetric subspace,
    /// (I - SWAP) / 2.
    pub fn asym(n: usize) -> SuperOp {
        SuperOp::identity(n).sub(&SuperOp::swap(n)).scale(Complex64::new(0.5, 0.0))
    }

    /// Symmetric graph: traceless part of the symmetric subspace,
    /// (I + SWAP) / 2 - Omega Omega^H / n.
    pub fn sym(n: usize) -> SuperOp {
        SuperOp::identity(n)
            .add(&SuperOp::swap(n))
            .scale(Complex64::new(0.5, 0.0))
            .sub(&SuperOp::trace_map(n).scale(Complex64::new(1.0 / n as f64, 0.0)))
    }
}
