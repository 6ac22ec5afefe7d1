//! The parametric quantum graph families invariant under the diagonal
//! unitary, diagonal orthogonal, and hyperoctahedral groups: construction,
//! validation, block decomposition, strange-graph extraction, canonical
//! graphs, and seeded instance generators.
//!
//! An instance is a triple (A, B, C) of n x n matrices with matching
//! diagonals. Its adjacency operator acts as
//!
//! ```text
//! x  |->  diag(A diag x)  +  Boff (.) x  +  Coff (.) x^T
//! ```
//!
//! where (.) is the entrywise product and Boff, Coff are the off-diagonal
//! parts. Realigning yields the projector onto the operator space, which
//! decomposes as B on the diagonal coordinates plus the 2x2 blocks
//! [[A_ij, C_ij], [C_ji, A_ji]] on each coordinate pair.

use crate::classical::{ClassicalGraph, StrangeGraph};
use crate::error::{Error, Result};
use crate::numlin::{is_projector, orthonormalize_columns, projector_defect, CMatrix, Rng, Tolerance};
use crate::qgraph::QuantumGraph;
use crate::superop::SuperOp;
use num_complex::Complex64;
use std::f64::consts::TAU;

#[derive(Clone, Debug, PartialEq)]
pub struct AbcParams {
    n: usize,
    a: CMatrix,
    b: CMatrix,
    c: CMatrix,
}

/// Outcome of checking the quantum graph axioms on a parameter triple.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub quantum_graph: bool,
    pub undirected: bool,
    pub loopless: bool,
    pub reasons: Vec<String>,
}

/// The projector-side direct sum: B on the diagonal coordinates plus one
/// 2x2 block per vertex pair.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub b: CMatrix,
    /// ((i, j), [[A_ij, C_ij], [C_ji, A_ji]]) for i < j.
    pub blocks: Vec<((usize, usize), CMatrix)>,
}

impl AbcParams {
    /// Diagonals must agree entrywise; offending indices are reported.
    pub fn new(a: CMatrix, b: CMatrix, c: CMatrix) -> Result<Self> {
        let n = a.rows();
        for (name, m) in [("A", &a), ("B", &b), ("C", &c)] {
            if !m.is_square() || m.rows() != n {
                return Err(Error::Input(format!("{name} must be {n}x{n}")));
            }
            if !m.is_finite() {
                return Err(Error::Input(format!("{name} has non-finite entries")));
            }
        }
        let eps = Tolerance::default().eps;
        let mut bad = Vec::new();
        for i in 0..n {
            if (a[(i, i)] - b[(i, i)]).norm() > eps || (a[(i, i)] - c[(i, i)]).norm() > eps {
                bad.push(i);
            }
        }
        if !bad.is_empty() {
            return Err(Error::Input(format!(
                "diagonals of A, B, C disagree at indices {bad:?}"
            )));
        }
        Ok(Self { n, a, b, c })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn c(&self) -> &CMatrix {
        &self.c
    }

    /// The adjacency operator of the instance, as an unvalidated superop.
    pub fn action_superop(&self) -> SuperOp {
        let n = self.n;
        let mut t = SuperOp::zero(n);
        for i in 0..n {
            for k in 0..n {
                t.set(i, i, k, k, self.a[(i, k)]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    t.set(i, j, i, j, self.b[(i, j)]);
                    t.set(i, j, j, i, self.c[(i, j)]);
                }
            }
        }
        t
    }

    /// Realignment of the adjacency: the candidate operator-space projector.
    pub fn proj_superop(&self) -> SuperOp {
        self.action_superop().realign()
    }

    /// The 2x2 block sitting on the coordinate pair (i, j).
    pub fn block(&self, i: usize, j: usize) -> CMatrix {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = self.a[(i, j)];
        m[(0, 1)] = self.c[(i, j)];
        m[(1, 0)] = self.c[(j, i)];
        m[(1, 1)] = self.a[(j, i)];
        m
    }

    pub fn decompose(&self) -> BlockDecomposition {
        let mut blocks = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                blocks.push(((i, j), self.block(i, j)));
            }
        }
        BlockDecomposition { b: self.b.clone(), blocks }
    }

    /// Check the quantum graph axioms: B and every 2x2 block must be
    /// projectors; undirectedness asks the off-diagonal of A to be
    /// self-adjoint and B symmetric; looplessness asks B 1 = 0.
    pub fn validate(&self, tol: Tolerance) -> ValidationReport {
        let mut report = ValidationReport {
            quantum_graph: true,
            undirected: true,
            loopless: true,
            reasons: Vec::new(),
        };
        let (idem, herm) = projector_defect(&self.b);
        if idem > tol.eps || herm > tol.eps {
            report.quantum_graph = false;
            report.reasons.push(format!(
                "B is not a projector (max|B^2-B| = {idem:.3e}, max|B^H-B| = {herm:.3e})"
            ));
        }
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let blk = self.block(i, j);
                let (bi, bh) = projector_defect(&blk);
                if bi > tol.eps || bh > tol.eps {
                    report.quantum_graph = false;
                    report.reasons.push(format!("block ({i},{j}) is not a projector"));
                }
            }
        }
        let a_off = self.a.off_diag();
        if a_off.adjoint().max_abs_diff(&a_off) > tol.eps {
            report.undirected = false;
            report.reasons.push("off-diagonal part of A is not self-adjoint".into());
        }
        if self.b.transpose().max_abs_diff(&self.b) > tol.eps {
            report.undirected = false;
            report.reasons.push("B is not symmetric".into());
        }
        let ones = vec![Complex64::ONE; self.n];
        let b_ones: f64 = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|k| self.b[(i, k)] * ones[k])
                    .sum::<Complex64>()
                    .norm()
            })
            .fold(0.0, f64::max);
        if b_ones > tol.eps {
            report.loopless = false;
            report.reasons.push(format!("B 1 != 0 (max row sum magnitude {b_ones:.3e})"));
        }
        report
    }

    /// Validate and wrap into a [`QuantumGraph`].
    pub fn build(&self, tol: Tolerance) -> Result<QuantumGraph> {
        let report = self.validate(tol);
        if !report.quantum_graph {
            return Err(Error::InvalidGraph(report.reasons.join("; ")));
        }
        QuantumGraph::from_projector(self.proj_superop(), tol)
    }

    /// Classify every 2x2 block into non-edge / classical edge / strange
    /// edge with a phase. Requires an undirected instance.
    pub fn to_strange_graph(&self, tol: Tolerance) -> Result<StrangeGraph> {
        let report = self.validate(tol);
        if !report.undirected {
            return Err(Error::Input(format!(
                "strange graph requires an undirected instance: {}",
                report.reasons.join("; ")
            )));
        }
        let mut sg = StrangeGraph::new(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let blk = self.block(i, j);
                if blk.max_abs() <= tol.eps {
                    continue;
                }
                if blk.max_abs_diff(&CMatrix::identity(2)) <= tol.eps {
                    sg.add_classical_edge(i, j)?;
                    continue;
                }
                // Rank-1 projector with diagonal (1/2, 1/2): check the full
                // shape rather than the rank alone.
                let a_ij = blk[(0, 0)];
                let a_ji = blk[(1, 1)];
                let c_ij = blk[(0, 1)];
                let c_ji = blk[(1, 0)];
                let strange = (a_ij - Complex64::new(0.5, 0.0)).norm() <= tol.eps
                    && (a_ji - Complex64::new(0.5, 0.0)).norm() <= tol.eps
                    && (c_ij.norm() - 0.5).abs() <= tol.eps
                    && (c_ji - c_ij.conj()).norm() <= tol.eps;
                if !strange {
                    return Err(Error::MalformedBlock {
                        i,
                        j,
                        detail: format!("block {blk:?} is neither 0, I, nor a phase block"),
                    });
                }
                let mut theta = c_ij.arg();
                if theta < 0.0 {
                    theta += TAU;
                }
                if (TAU - theta).abs() <= tol.eps {
                    theta = 0.0;
                }
                sg.add_strange_edge(i, j, theta)?;
            }
        }
        Ok(sg)
    }

    /// Block-diagonal direct sum of two instances.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let m = self.n + other.n;
        let pad = |x: &CMatrix, y: &CMatrix| {
            CMatrix::from_fn(m, m, |i, j| {
                if i < self.n && j < self.n {
                    x[(i, j)]
                } else if i >= self.n && j >= self.n {
                    y[(i - self.n, j - self.n)]
                } else {
                    Complex64::ZERO
                }
            })
        };
        Self {
            n: m,
            a: pad(&self.a, &other.a),
            b: pad(&self.b, &other.b),
            c: pad(&self.c, &other.c),
        }
    }
}

/// Rebuild an instance from a strange graph, optionally attaching a
/// subspace: `b` must then be a real symmetric projector, whose diagonal
/// becomes the shared diagonal of the triple.
pub fn from_strange_graph(sg: &StrangeGraph, b: Option<&CMatrix>) -> Result<AbcParams> {
    let n = sg.n();
    let b = match b {
        Some(m) => {
            if m.rows() != n || !m.is_square() {
                return Err(Error::Input(format!("B must be {n}x{n}")));
            }
            let tol = Tolerance::default();
            let real = m.data().iter().all(|z| z.im.abs() <= tol.eps);
            let symmetric = m.transpose().max_abs_diff(m) <= tol.eps;
            if !real || !symmetric || !is_projector(m, tol)? {
                return Err(Error::Input("B must be a real symmetric projector".into()));
            }
            m.clone()
        }
        None => CMatrix::zeros(n, n),
    };
    let mut a = CMatrix::zeros(n, n);
    let mut c = CMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = b[(i, i)];
        c[(i, i)] = b[(i, i)];
    }
    for (u, v) in sg.classical_edges() {
        a[(u, v)] = Complex64::ONE;
        a[(v, u)] = Complex64::ONE;
    }
    for ((u, v), theta) in sg.strange_edges() {
        a[(u, v)] = Complex64::new(0.5, 0.0);
        a[(v, u)] = Complex64::new(0.5, 0.0);
        c[(u, v)] = Complex64::from_polar(0.5, theta);
        c[(v, u)] = Complex64::from_polar(0.5, -theta);
    }
    AbcParams::new(a, b, c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalKind {
    Empty,
    Complete,
    Sym,
    Asym,
}

impl CanonicalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CanonicalKind::Empty => "empty",
            CanonicalKind::Complete => "complete",
            CanonicalKind::Sym => "sym",
            CanonicalKind::Asym => "asym",
        }
    }
}

/// The four canonical parameter triples: the empty and complete graphs and
/// the symmetric/antisymmetric pair.
///
/// ```
/// use qgw_core::{canonical, CanonicalKind, Tolerance};
///
/// let params = canonical(CanonicalKind::Complete, 3)?;
/// let graph = params.build(Tolerance::default())?;
/// // The complete graph's operator space is the traceless matrices.
/// assert_eq!(graph.dim_s(), 8);
/// assert_eq!(graph.edge_count(), 72);
/// # Ok::<(), qgw_core::Error>(())
/// ```
pub fn canonical(kind: CanonicalKind, n: usize) -> Result<AbcParams> {
    if n < 2 {
        return Err(Error::Input("canonical graphs need n >= 2".into()));
    }
    let nf = n as f64;
    let id = CMatrix::identity(n);
    let ones = CMatrix::ones(n);
    let real = |x: f64| Complex64::new(x, 0.0);
    let (a, b, c) = match kind {
        CanonicalKind::Empty => {
            (CMatrix::zeros(n, n), CMatrix::zeros(n, n), CMatrix::zeros(n, n))
        }
        CanonicalKind::Complete => {
            // A = (nJ - I)/n, B = I - J/n, C trivial.
            let a = ones.sub(&id.scale(real(1.0 / nf)));
            let b = id.sub(&ones.scale(real(1.0 / nf)));
            let c = CMatrix::from_diag(&a.diag_vector());
            (a, b, c)
        }
        CanonicalKind::Sym => {
            // A = C = (J + I)/2 - I/n, B = I - J/n.
            let a = ones.add(&id).scale(real(0.5)).sub(&id.scale(real(1.0 / nf)));
            let b = id.sub(&ones.scale(real(1.0 / nf)));
            (a.clone(), b, a)
        }
        CanonicalKind::Asym => {
            // A = (J - I)/2, B trivial, C = (I - J)/2.
            let a = ones.sub(&id).scale(real(0.5));
            let c = id.sub(&ones).scale(real(0.5));
            (a, CMatrix::zeros(n, n), c)
        }
    };
    AbcParams::new(a, b, c)
}

/// Hyperoctahedral parameters: A = aI + a'(J - I), B = aI + b(J - I),
/// C = aI + c(J - I).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypParams {
    pub n: usize,
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub c: f64,
}

pub fn hyp_build(h: &HypParams) -> Result<AbcParams> {
    if h.n < 2 {
        return Err(Error::Input("hyperoctahedral graphs need n >= 2".into()));
    }
    let id = CMatrix::identity(h.n);
    let j_off = CMatrix::ones(h.n).sub(&id);
    let real = |x: f64| Complex64::new(x, 0.0);
    let m = |s: f64, t: f64| id.scale(real(s)).add(&j_off.scale(real(t)));
    AbcParams::new(m(h.a, h.a_prime), m(h.a, h.b), m(h.a, h.c))
}

#[derive(Clone, Debug)]
pub struct HypEntry {
    pub params: HypParams,
    pub abc: AbcParams,
    pub loopless: bool,
}

/// All hyperoctahedral-invariant quantum graphs at dimension n: the four
/// (a, b) options times the four (a', c) options. Exactly half are loopless.
pub fn hyp_enumerate(n: usize) -> Result<Vec<HypEntry>> {
    if n < 2 {
        return Err(Error::Input("hyperoctahedral graphs need n >= 2".into()));
    }
    let nf = n as f64;
    let ab_options = [(0.0, 0.0), (1.0 / nf, 1.0 / nf), (1.0, 0.0), (1.0 - 1.0 / nf, -1.0 / nf)];
    let ac_options = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.5), (0.5, -0.5)];
    let mut out = Vec::with_capacity(16);
    for &(a, b) in &ab_options {
        for &(a_prime, c) in &ac_options {
            let params = HypParams { n, a, a_prime, b, c };
            let abc = hyp_build(&params)?;
            let loopless = (a, b) == (0.0, 0.0) || (a, b) == (1.0 - 1.0 / nf, -1.0 / nf);
            out.push(HypEntry { params, abc, loopless });
        }
    }
    Ok(out)
}

/// Diagonal embedding of a classical graph: A is its adjacency matrix, B
/// and C trivial.
pub fn classical_embedding(g: &ClassicalGraph) -> AbcParams {
    let n = g.n();
    let a = CMatrix::from_fn(n, n, |i, j| {
        if g.has_edge(i, j) { Complex64::ONE } else { Complex64::ZERO }
    });
    AbcParams::new(a, CMatrix::zeros(n, n), CMatrix::zeros(n, n))
        .expect("zero diagonals always match")
}

/// Sampling profile for [`random_abc`].
#[derive(Clone, Copy, Debug)]
pub struct RandomProfile {
    pub classical_edge_prob: f64,
    pub strange_edge_prob: f64,
    pub b_rank: usize,
    pub loopless: bool,
}

impl Default for RandomProfile {
    fn default() -> Self {
        Self { classical_edge_prob: 0.3, strange_edge_prob: 0.3, b_rank: 1, loopless: true }
    }
}

/// Sample an undirected instance: a random strange graph plus a random real
/// symmetric projector of the requested rank (orthogonal to the all-ones
/// vector when loopless). Deterministic per (seed, profile).
pub fn random_abc(n: usize, seed: u64, profile: &RandomProfile) -> Result<AbcParams> {
    if profile.classical_edge_prob + profile.strange_edge_prob > 1.0 + 1e-12 {
        return Err(Error::Input("edge probabilities sum to more than 1".into()));
    }
    let max_rank = if profile.loopless { n.saturating_sub(1) } else { n };
    if profile.b_rank > max_rank {
        return Err(Error::Input(format!(
            "b_rank {} infeasible (max {max_rank} for n = {n}, loopless = {})",
            profile.b_rank, profile.loopless
        )));
    }
    let mut rng = Rng::new(seed);
    let mut sg = StrangeGraph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let u = rng.next_f64();
            if u < profile.classical_edge_prob {
                sg.add_classical_edge(i, j)?;
            } else if u < profile.classical_edge_prob + profile.strange_edge_prob {
                sg.add_strange_edge(i, j, TAU * rng.next_f64())?;
            }
        }
    }
    let b = if profile.b_rank == 0 {
        CMatrix::zeros(n, n)
    } else {
        loop {
            let mut cols = CMatrix::from_fn(n, profile.b_rank, |_, _| {
                Complex64::new(rng.next_gaussian(), 0.0)
            });
            if profile.loopless {
                // Project out the all-ones direction so B 1 = 0.
                for j in 0..profile.b_rank {
                    let mean: Complex64 =
                        (0..n).map(|i| cols[(i, j)]).sum::<Complex64>() / n as f64;
                    for i in 0..n {
                        cols[(i, j)] -= mean;
                    }
                }
            }
            if let Some(q) = orthonormalize_columns(&cols) {
                break q.matmul(&q.transpose());
            }
        }
    };
    from_strange_graph(&sg, Some(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgraph::canonical_projectors;
    use std::f64::consts::PI;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn canonical_complete_parameters_validate() {
        for n in 2..=5 {
            let p = canonical(CanonicalKind::Complete, n).unwrap();
            let r = p.validate(tol());
            assert!(r.quantum_graph && r.undirected && r.loopless, "{:?}", r.reasons);
        }
    }

    #[test]
    fn all_canonicals_loopless_undirected() {
        for kind in [
            CanonicalKind::Empty,
            CanonicalKind::Complete,
            CanonicalKind::Sym,
            CanonicalKind::Asym,
        ] {
            let p = canonical(kind, 4).unwrap();
            let r = p.validate(tol());
            assert!(r.quantum_graph && r.undirected && r.loopless, "{kind:?}: {:?}", r.reasons);
        }
    }

    #[test]
    fn canonical_projectors_match_operator_spaces() {
        for n in 2..=4 {
            for (kind, expected) in [
                (CanonicalKind::Empty, canonical_projectors::empty(n)),
                (CanonicalKind::Complete, canonical_projectors::complete(n)),
                (CanonicalKind::Sym, canonical_projectors::sym(n)),
                (CanonicalKind::Asym, canonical_projectors::asym(n)),
            ] {
                let p = canonical(kind, n).unwrap();
                assert!(
                    p.proj_superop().max_abs_diff(&expected) < 1e-12,
                    "{kind:?} projector mismatch at n = {n}"
                );
            }
        }
    }

    #[test]
    fn invalid_block_detected() {
        let n = 3;
        let mut a = CMatrix::zeros(n, n);
        a[(0, 1)] = Complex64::new(0.3, 0.0);
        a[(1, 0)] = Complex64::new(0.3, 0.0);
        let p = AbcParams::new(a, CMatrix::zeros(n, n), CMatrix::zeros(n, n)).unwrap();
        let r = p.validate(tol());
        assert!(!r.quantum_graph);
        assert!(r.reasons.iter().any(|s| s.contains("block (0,1)")));
        assert!(p.build(tol()).is_err());
    }

    #[test]
    fn diag_mismatch_rejected() {
        let a = CMatrix::identity(2);
        let b = CMatrix::zeros(2, 2);
        let c = CMatrix::zeros(2, 2);
        assert!(matches!(AbcParams::new(a, b, c), Err(Error::Input(_))));
    }

    #[test]
    fn trivial_params_build_empty_graph() {
        let p = AbcParams::new(CMatrix::zeros(3, 3), CMatrix::zeros(3, 3), CMatrix::zeros(3, 3))
            .unwrap();
        let g = p.build(tol()).unwrap();
        assert_eq!(g.dim_s(), 0);
    }

    #[test]
    fn classical_embedding_operator_space() {
        // Path P_3 has 2 edges; its operator space has dimension 2|E|.
        let g = classical_embedding(&ClassicalGraph::path(3)).build(tol()).unwrap();
        assert_eq!(g.dim_s(), 4);
        // The basis spans exactly the matrix units of the edges.
        let proj = classical_embedding(&ClassicalGraph::path(3)).proj_superop();
        for (i, j, expect) in [(0, 1, true), (1, 0, true), (1, 2, true), (0, 2, false)] {
            let e = CMatrix::basis(3, i, j);
            let image = proj.apply(&e).unwrap();
            let keeps = image.max_abs_diff(&e) < 1e-12;
            assert_eq!(keeps, expect, "matrix unit ({i},{j})");
        }
    }

    #[test]
    fn decompose_shapes() {
        let sym = canonical(CanonicalKind::Sym, 3).unwrap();
        let half = Complex64::new(0.5, 0.0);
        for (_, blk) in sym.decompose().blocks {
            for i in 0..2 {
                for j in 0..2 {
                    assert!((blk[(i, j)] - half).norm() < 1e-12);
                }
            }
        }
        let emb = classical_embedding(&ClassicalGraph::cycle(4));
        for ((i, j), blk) in emb.decompose().blocks {
            let expected = if blk[(0, 0)].norm() > 0.5 {
                CMatrix::identity(2)
            } else {
                CMatrix::zeros(2, 2)
            };
            assert!(blk.max_abs_diff(&expected) < 1e-12, "block ({i},{j})");
        }
        let zero = AbcParams::new(CMatrix::zeros(2, 2), CMatrix::zeros(2, 2), CMatrix::zeros(2, 2))
            .unwrap();
        for (_, blk) in zero.decompose().blocks {
            assert!(blk.max_abs() < 1e-15);
        }
    }

    #[test]
    fn projector_acts_blockwise_on_matrix_units() {
        // proj(|i><j|) = A_ij |i><j| + C_ji |j><i| for i != j.
        let p = random_abc(4, 9, &RandomProfile::default()).unwrap();
        let proj = p.proj_superop();
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let image = proj.apply(&CMatrix::basis(4, i, j)).unwrap();
                let expected = CMatrix::basis(4, i, j)
                    .scale(p.a()[(i, j)])
                    .add(&CMatrix::basis(4, j, i).scale(p.c()[(j, i)]));
                assert!(image.max_abs_diff(&expected) < 1e-12, "unit ({i},{j})");
            }
        }
    }

    #[test]
    fn decompose_reassembles_projector() {
        let p = random_abc(4, 11, &RandomProfile::default()).unwrap();
        let d = p.decompose();
        let proj = p.proj_superop();
        // Diagonal coordinates carry B.
        for i in 0..4 {
            for k in 0..4 {
                assert!((proj.get(i, i, k, k) - d.b[(i, k)]).norm() < 1e-12);
            }
        }
        for ((i, j), blk) in &d.blocks {
            assert!((proj.get(*i, *j, *i, *j) - blk[(0, 0)]).norm() < 1e-12);
            assert!((proj.get(*i, *j, *j, *i) - blk[(0, 1)]).norm() < 1e-12);
            assert!((proj.get(*j, *i, *i, *j) - blk[(1, 0)]).norm() < 1e-12);
            assert!((proj.get(*j, *i, *j, *i) - blk[(1, 1)]).norm() < 1e-12);
        }
    }

    #[test]
    fn strange_graphs_of_canonicals() {
        let n = 4;
        let sym = canonical(CanonicalKind::Sym, n).unwrap().to_strange_graph(tol()).unwrap();
        assert_eq!(sym.strange_edges().count(), n * (n - 1) / 2);
        assert!(sym.strange_edges().all(|(_, t)| t.abs() < 1e-9));

        let asym = canonical(CanonicalKind::Asym, n).unwrap().to_strange_graph(tol()).unwrap();
        assert_eq!(asym.strange_edges().count(), n * (n - 1) / 2);
        assert!(asym.strange_edges().all(|(_, t)| (t - PI).abs() < 1e-9));

        let g = ClassicalGraph::cycle(5);
        let emb = classical_embedding(&g).to_strange_graph(tol()).unwrap();
        assert_eq!(emb.strange_edges().count(), 0);
        assert_eq!(emb.underlying(), g);
    }

    #[test]
    fn strange_round_trips() {
        // from . to on a sampled instance reproduces the parameters.
        let p = random_abc(5, 3, &RandomProfile::default()).unwrap();
        let sg = p.to_strange_graph(tol()).unwrap();
        let q = from_strange_graph(&sg, Some(p.b())).unwrap();
        assert!(p.a().max_abs_diff(q.a()) < 1e-12);
        assert!(p.b().max_abs_diff(q.b()) < 1e-12);
        assert!(p.c().max_abs_diff(q.c()) < 1e-12);
        // to . from is the identity on strange graphs.
        let back = q.to_strange_graph(tol()).unwrap();
        assert_eq!(back.classical_edges().count(), sg.classical_edges().count());
        for (((u, v), t), ((u2, v2), t2)) in back.strange_edges().zip(sg.strange_edges()) {
            assert_eq!((u, v), (u2, v2));
            assert!((t - t2).abs() < 1e-9);
        }
        // Complete phase-pi strange graph with trivial B recovers the
        // antisymmetric parameters.
        let asym = from_strange_graph(&StrangeGraph::strange_complete(3, PI).unwrap(), None)
            .unwrap();
        let expected = canonical(CanonicalKind::Asym, 3).unwrap();
        assert!(asym.a().max_abs_diff(expected.a()) < 1e-12);
        assert!(asym.c().max_abs_diff(expected.c()) < 1e-12);
        // Empty strange graph gives the empty graph parameters.
        let empty = from_strange_graph(&StrangeGraph::new(4), None).unwrap();
        assert_eq!(empty.build(tol()).unwrap().dim_s(), 0);
    }

    #[test]
    fn from_strange_graph_rejects_bad_subspace() {
        let sg = StrangeGraph::new(3);
        let not_projector = CMatrix::ones(3);
        assert!(from_strange_graph(&sg, Some(&not_projector)).is_err());
    }

    #[test]
    fn directed_instance_rejected_by_strange_extraction() {
        // A valid directed quantum graph: a rank-1 block with unequal
        // diagonal entries.
        let n = 2;
        let mut a = CMatrix::zeros(n, n);
        a[(0, 1)] = Complex64::new(0.2, 0.0);
        a[(1, 0)] = Complex64::new(0.8, 0.0);
        let mut c = CMatrix::zeros(n, n);
        let mag = (0.2f64 * 0.8).sqrt();
        c[(0, 1)] = Complex64::new(mag, 0.0);
        c[(1, 0)] = Complex64::new(mag, 0.0);
        let p = AbcParams::new(a, CMatrix::zeros(n, n), c).unwrap();
        let r = p.validate(tol());
        assert!(r.quantum_graph && !r.undirected);
        assert!(p.to_strange_graph(tol()).is_err());
        // And it still builds: validation accepts directed quantum graphs.
        assert!(p.build(tol()).is_ok());
    }

    #[test]
    fn hyp_quadruples_reproduce_canonicals() {
        for n in 2..=5 {
            let nf = n as f64;
            let cases = [
                (HypParams { n, a: 0.0, a_prime: 0.0, b: 0.0, c: 0.0 }, CanonicalKind::Empty),
                (
                    HypParams { n, a: 1.0 - 1.0 / nf, a_prime: 1.0, b: -1.0 / nf, c: 0.0 },
                    CanonicalKind::Complete,
                ),
                (
                    HypParams { n, a: 1.0 - 1.0 / nf, a_prime: 0.5, b: -1.0 / nf, c: 0.5 },
                    CanonicalKind::Sym,
                ),
                (HypParams { n, a: 0.0, a_prime: 0.5, b: 0.0, c: -0.5 }, CanonicalKind::Asym),
            ];
            for (h, kind) in cases {
                let built = hyp_build(&h).unwrap();
                let target = canonical(kind, n).unwrap();
                assert!(
                    built.proj_superop().max_abs_diff(&target.proj_superop()) < 1e-9,
                    "{kind:?} at n = {n}"
                );
            }
        }
    }

    #[test]
    fn hyp_enumeration_counts() {
        for n in [3usize, 4] {
            let entries = hyp_enumerate(n).unwrap();
            assert_eq!(entries.len(), 16);
            let mut loopless = 0;
            for e in &entries {
                let r = e.abc.validate(tol());
                assert!(r.quantum_graph, "{:?}: {:?}", e.params, r.reasons);
                assert!(r.undirected);
                assert_eq!(r.loopless, e.loopless, "{:?}", e.params);
                if e.loopless {
                    loopless += 1;
                }
            }
            assert_eq!(loopless, 8);
        }
    }

    #[test]
    fn random_instances_validate() {
        let profiles = [
            RandomProfile::default(),
            RandomProfile { classical_edge_prob: 0.0, strange_edge_prob: 0.8, b_rank: 2, loopless: true },
            RandomProfile { classical_edge_prob: 0.5, strange_edge_prob: 0.0, b_rank: 0, loopless: false },
        ];
        for (pi, profile) in profiles.iter().enumerate() {
            for seed in 0..40 {
                let p = random_abc(5, seed + 1000 * pi as u64, profile).unwrap();
                let r = p.validate(tol());
                assert!(r.quantum_graph && r.undirected, "{:?}", r.reasons);
                assert_eq!(r.loopless, profile.loopless || profile.b_rank == 0);
            }
        }
        // All-zero profile is the empty graph with trivial B.
        let zero = random_abc(
            4,
            0,
            &RandomProfile { classical_edge_prob: 0.0, strange_edge_prob: 0.0, b_rank: 0, loopless: true },
        )
        .unwrap();
        assert_eq!(zero.build(tol()).unwrap().dim_s(), 0);
        // Forced single strange edge at n = 2.
        let forced = random_abc(
            2,
            7,
            &RandomProfile { classical_edge_prob: 0.0, strange_edge_prob: 1.0, b_rank: 0, loopless: true },
        )
        .unwrap();
        let sg = forced.to_strange_graph(tol()).unwrap();
        assert_eq!(sg.strange_edges().count(), 1);
        // Infeasible rank is an input error.
        assert!(random_abc(
            3,
            0,
            &RandomProfile { classical_edge_prob: 0.0, strange_edge_prob: 0.0, b_rank: 3, loopless: true }
        )
        .is_err());
        // Determinism.
        let x = random_abc(5, 42, &RandomProfile::default()).unwrap();
        let y = random_abc(5, 42, &RandomProfile::default()).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn realignment_swaps_first_two_parameters() {
        // (X_{A,B,C})^R = X_{B,A,C} on undirected instances.
        for seed in 0..20 {
            let p = random_abc(4, seed, &RandomProfile::default()).unwrap();
            let swapped = AbcParams::new(p.b().clone(), p.a().clone(), p.c().clone()).unwrap();
            let lhs = p.action_superop().realign();
            let rhs = swapped.action_superop();
            assert!(lhs.max_abs_diff(&rhs) < 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn realignment_of_directed_instances_transposes() {
        // Under this leg convention the realignment of a directed instance
        // is the swapped instance with A and B transposed; the plain swap
        // only holds in the undirected case.
        let n = 2;
        let mut a = CMatrix::zeros(n, n);
        a[(0, 1)] = Complex64::new(0.2, 0.0);
        a[(1, 0)] = Complex64::new(0.8, 0.0);
        let mag = (0.2f64 * 0.8).sqrt();
        let mut c = CMatrix::zeros(n, n);
        c[(0, 1)] = Complex64::new(mag, 0.0);
        c[(1, 0)] = Complex64::new(mag, 0.0);
        let p = AbcParams::new(a, CMatrix::zeros(n, n), c).unwrap();
        assert!(p.validate(tol()).quantum_graph);

        let realigned = p.action_superop().realign();
        let swapped = AbcParams::new(p.b().clone(), p.a().clone(), p.c().clone()).unwrap();
        assert!(realigned.max_abs_diff(&swapped.action_superop()) > 0.1);
        let swapped_t = AbcParams::new(
            p.b().transpose(),
            p.a().transpose(),
            p.c().clone(),
        )
        .unwrap();
        assert!(realigned.max_abs_diff(&swapped_t.action_superop()) < 1e-12);
        // Either way, the realigned object is a projector.
        assert!(is_projector(realigned.matrix(), tol()).unwrap());
    }

    #[test]
    fn undirected_instances_have_real_b() {
        // B Hermitian and symmetric forces B entrywise real.
        for seed in 0..20 {
            let p = random_abc(5, seed, &RandomProfile::default()).unwrap();
            let r = p.validate(tol());
            assert!(r.quantum_graph && r.undirected);
            let max_im = p.b().data().iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            assert!(max_im < 1e-12);
        }
    }

    #[test]
    fn union_of_params_is_union_of_strange_graphs() {
        let p1 = random_abc(3, 1, &RandomProfile::default()).unwrap();
        let p2 = random_abc(2, 2, &RandomProfile::default()).unwrap();
        let u = p1.disjoint_union(&p2);
        let sg_u = u.to_strange_graph(tol()).unwrap();
        let expected = p1
            .to_strange_graph(tol())
            .unwrap()
            .disjoint_union(&p2.to_strange_graph(tol()).unwrap());
        assert_eq!(sg_u, expected);
        assert!(u.validate(tol()).quantum_graph);
    }
}
