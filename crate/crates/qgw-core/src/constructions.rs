//! Constructive witnesses for the parametric families, plus the exact
//! connectedness decision procedure for ABC instances.

use crate::abcgraphs::{from_strange_graph, AbcParams};
use crate::classical::{ClassicalGraph, StrangeGraph};
use crate::error::{Error, Result};
use crate::numlin::{inv_sqrt_psd, CMatrix, Rng, Tolerance};
use crate::witness::{
    check_components, coordinate_projector, isqrt, CliqueWitness, ColouringWitness,
    ComponentWitness, IndependenceWitness,
};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

fn validate_partition(n: usize, parts: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; n];
    if parts.is_empty() {
        return Err(Error::Input("partition has no parts".into()));
    }
    for part in parts {
        if part.is_empty() {
            return Err(Error::Input("partition has an empty part".into()));
        }
        for &v in part {
            if v >= n {
                return Err(Error::Input(format!("vertex {v} out of range for n = {n}")));
            }
            if seen[v] {
                return Err(Error::Input(format!("vertex {v} appears twice")));
            }
            seen[v] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::Input("partition does not cover every vertex".into()));
    }
    Ok(())
}

/// Coordinate component witness from a vertex partition.
pub fn components_from_classical(n: usize, parts: &[Vec<usize>]) -> Result<ComponentWitness> {
    validate_partition(n, parts)?;
    Ok(ComponentWitness {
        projectors: parts.iter().map(|p| coordinate_projector(n, p)).collect(),
    })
}

/// Coordinate colouring witness from colour classes.
pub fn colouring_from_classical(n: usize, classes: &[Vec<usize>]) -> Result<ColouringWitness> {
    validate_partition(n, classes)?;
    Ok(ColouringWitness {
        projectors: classes.iter().map(|p| coordinate_projector(n, p)).collect(),
    })
}

/// Coordinate independent-set witness from a vertex subset.
pub fn independent_from_classical(n: usize, subset: &[usize]) -> Result<IndependenceWitness> {
    if subset.is_empty() {
        return Err(Error::Input("independent set must be nonempty".into()));
    }
    let mut seen = vec![false; n];
    for &v in subset {
        if v >= n {
            return Err(Error::Input(format!("vertex {v} out of range for n = {n}")));
        }
        if seen[v] {
            return Err(Error::Input(format!("vertex {v} appears twice")));
        }
        seen[v] = true;
    }
    Ok(IndependenceWitness { projector: coordinate_projector(n, subset) })
}

fn rank1_projector(v: &[Complex64]) -> CMatrix {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let scaled: Vec<Complex64> = v.iter().map(|z| z / norm).collect();
    CMatrix::outer(&scaled, &scaled)
}

/// The conjugate pair splitting the antisymmetric graph at n = 2:
/// projectors onto (|1> + i|2>)/sqrt 2 and (|1> - i|2>)/sqrt 2.
pub fn gasym_n2_components() -> ComponentWitness {
    let plus = [Complex64::ONE, Complex64::I];
    let minus = [Complex64::ONE, -Complex64::I];
    ComponentWitness { projectors: vec![rank1_projector(&plus), rank1_projector(&minus)] }
}

/// Zero-padded block lift of per-summand component witnesses onto their
/// disjoint union.
pub fn lift_union_components(
    witnesses: &[ComponentWitness],
    dims: &[usize],
) -> Result<ComponentWitness> {
    if witnesses.len() != dims.len() {
        return Err(Error::Input("one witness per summand required".into()));
    }
    let n: usize = dims.iter().sum();
    let mut projectors = Vec::new();
    let mut offset = 0;
    for (w, &d) in witnesses.iter().zip(dims) {
        for p in &w.projectors {
            if p.rows() != d {
                return Err(Error::Input(format!(
                    "witness projector is {}x{}, summand has dimension {d}",
                    p.rows(),
                    p.cols()
                )));
            }
            projectors.push(p.embed(n, offset, offset));
        }
        offset += d;
    }
    Ok(ComponentWitness { projectors })
}

/// The disjoint union of n/2 strange edges with phase pi: its strange graph
/// has n/2 components while the quantum graph splits into n.
///
/// ```
/// use qgw_core::constructions::{strange_pi_matching, strange_pi_matching_witness};
/// use qgw_core::witness::check_components;
/// use qgw_core::Tolerance;
///
/// let tol = Tolerance::default();
/// let params = strange_pi_matching(4)?;
/// assert_eq!(params.to_strange_graph(tol)?.components().len(), 2);
/// let graph = params.build(tol)?;
/// let witness = strange_pi_matching_witness(4)?; // 4 conjugate-pair parts
/// assert!(check_components(&graph, &witness, tol)?);
/// # Ok::<(), qgw_core::Error>(())
/// ```
pub fn strange_pi_matching(n: usize) -> Result<AbcParams> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Input(format!("matching needs even n, got {n}")));
    }
    let mut sg = StrangeGraph::new(n);
    for i in 0..n / 2 {
        sg.add_strange_edge(2 * i, 2 * i + 1, PI)?;
    }
    from_strange_graph(&sg, None)
}

/// The lifted witness certifying n components for [`strange_pi_matching`]:
/// each pi-edge contributes its conjugate pair.
pub fn strange_pi_matching_witness(n: usize) -> Result<ComponentWitness> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Input(format!("matching needs even n, got {n}")));
    }
    let per_edge: Vec<ComponentWitness> = (0..n / 2).map(|_| gasym_n2_components()).collect();
    lift_union_components(&per_edge, &vec![2; n / 2])
}

#[derive(Clone, Debug)]
pub enum Connectivity {
    Connected { provenance: String },
    Disconnected { witness: ComponentWitness, provenance: String },
    Unknown,
}

/// Split the n = 2 single-strange-edge graph with phase `theta`: any unit
/// vector psi = (a, b) with (a/b)^2 = e^{i theta} makes (P, P_perp) a
/// component witness for the trivial-subspace instance.
pub fn strange_edge_n2_components(theta: f64) -> ComponentWitness {
    let a = Complex64::from_polar(1.0, theta / 2.0);
    let b = Complex64::ONE;
    let psi = [a, b];
    let phi = [-b.conj(), a.conj()];
    ComponentWitness { projectors: vec![rank1_projector(&psi), rank1_projector(&phi)] }
}

/// Exact connectedness of an undirected ABC instance.
///
/// Dispatch: a disconnected strange graph forces disconnection; a connected
/// strange graph transfers its connectedness whenever it has a classical
/// edge or n >= 3; the n = 2 pure-strange case with trivial subspace is
/// split explicitly; the remaining n = 2 cases fall back to a randomized
/// probe and otherwise stay unknown.
pub fn is_connected_abc(p: &AbcParams, tol: Tolerance) -> Result<Connectivity> {
    let report = p.validate(tol);
    if !report.undirected {
        return Err(Error::Input("connectedness dispatch requires an undirected instance".into()));
    }
    let n = p.n();
    let sg = p.to_strange_graph(tol)?;
    let comps = sg.components();
    if comps.len() > 1 {
        return Ok(Connectivity::Disconnected {
            witness: components_from_classical(n, &comps)?,
            provenance: format!(
                "strange graph splits into {} parts; components transfer upward",
                comps.len()
            ),
        });
    }
    if n == 1 {
        return Ok(Connectivity::Connected { provenance: "single vertex".into() });
    }
    if sg.has_classical_edge() {
        return Ok(Connectivity::Connected {
            provenance: "strange graph is connected and has a classical edge".into(),
        });
    }
    if n >= 3 {
        return Ok(Connectivity::Connected {
            provenance: "strange graph is connected and n >= 3".into(),
        });
    }
    // n = 2, single strange edge.
    let theta = sg.strange_edges().next().map(|(_, t)| t).unwrap_or(0.0);
    if p.b().max_abs() <= tol.eps {
        let witness = strange_edge_n2_components(theta);
        let graph = p.build(tol)?;
        if !check_components(&graph, &witness, tol)? {
            return Err(Error::Internal(
                "phase-equation witness failed the component checker".into(),
            ));
        }
        return Ok(Connectivity::Disconnected {
            witness,
            provenance: format!("n = 2 strange edge with phase {theta:.4}, explicit split"),
        });
    }
    // Nontrivial subspace at n = 2: probe random rank-1 splits.
    let graph = p.build(tol)?;
    let mut rng = Rng::new(0x5eed);
    for _ in 0..200 {
        let v: Vec<Complex64> = (0..2).map(|_| rng.next_complex_gaussian()).collect();
        let p1 = rank1_projector(&v);
        let p2 = CMatrix::identity(2).sub(&p1);
        let w = ComponentWitness { projectors: vec![p1, p2] };
        if check_components(&graph, &w, tol)? {
            return Ok(Connectivity::Disconnected {
                witness: w,
                provenance: "randomized rank-1 split".into(),
            });
        }
    }
    Ok(Connectivity::Unknown)
}

/// Rank-1 projectors onto the discrete Fourier basis. All have uniform
/// coordinate magnitudes, so they colour any loopless pure-subspace graph
/// with n classes.
pub fn fourier_colouring(n: usize) -> ColouringWitness {
    let projectors = (0..n)
        .map(|s| {
            let col: Vec<Complex64> = (0..n)
                .map(|t| Complex64::from_polar(1.0, TAU * (s * t % n) as f64 / n as f64))
                .collect();
            rank1_projector(&col)
        })
        .collect();
    ColouringWitness { projectors }
}

/// Informationally complete frame clique for X_{., I - J/n}: the k^2 frame
/// vectors (standard basis, real pair sums, imaginary pair sums) whitened
/// by F^{-1/2}; when k^2 < n the first frame vector is split into scaled
/// copies so the rows still resolve the identity.
pub fn clique_icpovm(n: usize) -> Result<CliqueWitness> {
    let k = isqrt(n);
    if k < 2 {
        return Err(Error::Input(format!("frame clique needs n >= 4, got {n}")));
    }
    let m = k * k;
    let s = 1.0 / 2f64.sqrt();
    let mut frame: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for i in 0..k {
        let mut v = vec![Complex64::ZERO; k];
        v[i] = Complex64::ONE;
        frame.push(v);
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let mut v = vec![Complex64::ZERO; k];
            v[i] = Complex64::new(s, 0.0);
            v[j] = Complex64::new(s, 0.0);
            frame.push(v);
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let mut v = vec![Complex64::ZERO; k];
            v[i] = Complex64::new(s, 0.0);
            v[j] = Complex64::new(0.0, s);
            frame.push(v);
        }
    }
    debug_assert_eq!(frame.len(), m);

    let mut f = CMatrix::zeros(k, k);
    for w in &frame {
        f = f.add(&CMatrix::outer(w, w));
    }
    let whiten = inv_sqrt_psd(&f, Tolerance::default())?;
    let whitened: Vec<Vec<Complex64>> = frame
        .iter()
        .map(|w| {
            (0..k)
                .map(|i| (0..k).map(|j| whiten[(i, j)] * w[j]).sum())
                .collect()
        })
        .collect();

    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    if m < n {
        let copies = n - m + 1;
        let scale = Complex64::new(1.0 / (copies as f64).sqrt(), 0.0);
        for _ in 0..copies {
            rows.push(whitened[0].iter().map(|z| z * scale).collect());
        }
        rows.extend(whitened[1..].iter().cloned());
    } else {
        rows = whitened;
    }
    debug_assert_eq!(rows.len(), n);

    // Row i of V is v_i^H, so V^H V = sum_i v_i v_i^H = I_k.
    let v = CMatrix::from_fn(n, k, |i, j| rows[i][j].conj());
    Ok(CliqueWitness { isometry: v })
}

/// The n/2-clique of the complete bipartite embedding: (1/sqrt 2) [I; I].
pub fn clique_bipartite(n: usize) -> Result<CliqueWitness> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Input(format!("bipartite clique needs even n, got {n}")));
    }
    let k = n / 2;
    let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let v = CMatrix::from_fn(n, k, |i, j| if i % k == j { s } else { Complex64::ZERO });
    Ok(CliqueWitness { isometry: v })
}

/// Deterministic orthonormal basis of the complement of the all-ones
/// vector (Helmert columns): the (n-1)-clique of the complete embedding.
pub fn clique_complete_minus_one(n: usize) -> Result<CliqueWitness> {
    if n < 2 {
        return Err(Error::Input("needs n >= 2".into()));
    }
    let v = CMatrix::from_fn(n, n - 1, |i, j| {
        let jj = j + 1;
        let norm = (jj as f64 * (jj + 1) as f64).sqrt();
        if i < jj {
            Complex64::new(1.0 / norm, 0.0)
        } else if i == jj {
            Complex64::new(-(jj as f64) / norm, 0.0)
        } else {
            Complex64::ZERO
        }
    });
    Ok(CliqueWitness { isometry: v })
}

fn validate_clique(a: &ClassicalGraph, clique: &[usize]) -> Result<()> {
    let mut seen = vec![false; a.n()];
    for &v in clique {
        if v >= a.n() {
            return Err(Error::Input(format!("vertex {v} out of range")));
        }
        if seen[v] {
            return Err(Error::Input(format!("vertex {v} repeated in clique")));
        }
        seen[v] = true;
    }
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            if !a.has_edge(u, v) {
                return Err(Error::Input(format!("({u},{v}) is not an edge; not a clique")));
            }
        }
    }
    Ok(())
}

/// The (k-1)-clique of X_{A,.} carried by a classical k-clique of A:
/// compose the coordinate inclusion of the clique with the complete
/// embedding's (k-1)-clique.
pub fn clique_from_classical(a: &ClassicalGraph, clique: &[usize]) -> Result<CliqueWitness> {
    validate_clique(a, clique)?;
    let k = clique.len();
    if k < 2 {
        return Err(Error::Input("classical clique of size >= 2 required".into()));
    }
    let n = a.n();
    let mut w = CMatrix::zeros(n, k);
    for (s, &c) in clique.iter().enumerate() {
        w[(c, s)] = Complex64::ONE;
    }
    let inner = clique_complete_minus_one(k)?;
    Ok(CliqueWitness { isometry: w.matmul(&inner.isometry) })
}

/// Parameters of the reflexive variant X_{A + diag(1 - 1/n), I - J/n},
/// whose loop-completed operator space contains every diagonal matrix unit.
pub fn reflexive_params(a: &ClassicalGraph) -> AbcParams {
    let n = a.n();
    let nf = n as f64;
    let shift = Complex64::new(1.0 - 1.0 / nf, 0.0);
    let a_mat = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            shift
        } else if a.has_edge(i, j) {
            Complex64::ONE
        } else {
            Complex64::ZERO
        }
    });
    let b = CMatrix::identity(n).sub(&CMatrix::ones(n).scale(Complex64::new(1.0 / nf, 0.0)));
    let c = CMatrix::from_diag(&a_mat.diag_vector());
    AbcParams::new(a_mat, b, c).expect("diagonals match by construction")
}

/// The full-size coordinate clique on the reflexive variant: V|s> = |c_s>.
pub fn clique_reflexive_variant(a: &ClassicalGraph, clique: &[usize]) -> Result<CliqueWitness> {
    validate_clique(a, clique)?;
    if clique.is_empty() {
        return Err(Error::Input("clique must be nonempty".into()));
    }
    let n = a.n();
    let mut v = CMatrix::zeros(n, clique.len());
    for (s, &c) in clique.iter().enumerate() {
        v[(c, s)] = Complex64::ONE;
    }
    Ok(CliqueWitness { isometry: v })
}

/// The ceil(n/2)-clique shared by the symmetric and antisymmetric graphs:
/// paired columns (e_j + i e_{j+k})/sqrt 2, plus a lone real column for odd
/// n, so the image meets its conjugate in dimension <= 1.
pub fn clique_symasym(n: usize) -> Result<CliqueWitness> {
    if n < 2 {
        return Err(Error::Input("needs n >= 2".into()));
    }
    let k = n.div_ceil(2);
    let s = 1.0 / 2f64.sqrt();
    let v = if n.is_multiple_of(2) {
        CMatrix::from_fn(n, k, |i, j| {
            if i == j {
                Complex64::new(s, 0.0)
            } else if i == j + k {
                Complex64::new(0.0, s)
            } else {
                Complex64::ZERO
            }
        })
    } else {
        CMatrix::from_fn(n, k, |i, j| {
            if j == k - 1 {
                if i == n - 1 { Complex64::ONE } else { Complex64::ZERO }
            } else if i == j {
                Complex64::new(s, 0.0)
            } else if i == j + (k - 1) {
                Complex64::new(0.0, s)
            } else {
                Complex64::ZERO
            }
        })
    };
    Ok(CliqueWitness { isometry: v })
}
