//! Exact combinatorics on classical graphs and strange graphs: connected
//! components, chromatic, independence, and clique numbers by exhaustive
//! search at small n.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Budget for the exhaustive solvers.
pub const MAX_EXACT_N: usize = 20;

/// Loopless undirected classical graph on vertex set {0, .., n-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalGraph {
    n: usize,
    adj: Vec<bool>,
}

impl ClassicalGraph {
    pub fn empty(n: usize) -> Self {
        Self { n, adj: vec![false; n * n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    g.adj[i * n + j] = true;
                }
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n).unwrap();
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n.saturating_sub(1) {
            g.add_edge(i, i + 1).unwrap();
        }
        g
    }

    /// Complete bipartite graph K_{a,b}, first class {0..a}.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for i in 0..a {
            for j in a..a + b {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Input(format!("edge ({u},{v}) out of range for n={}", self.n)));
        }
        if u == v {
            return Err(Error::Input(format!("loop at vertex {u} not allowed")));
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.has_edge(u, v)).count()
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v {
                    g.adj[u * self.n + v] = !self.adj[u * self.n + v];
                }
            }
        }
        g
    }

    /// Connected components as sorted vertex lists, ordered by minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        for (u, v) in self.edges() {
            uf.union(u, v);
        }
        uf.groups()
    }

    /// Degeneracy ordering (repeatedly remove a minimum-degree vertex),
    /// ties broken by vertex index for determinism.
    fn degeneracy_order(&self) -> Vec<usize> {
        let mut deg: Vec<usize> = (0..self.n).map(|u| self.degree(u)).collect();
        let mut removed = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let u = (0..self.n)
                .filter(|&u| !removed[u])
                .min_by_key(|&u| (deg[u], u))
                .unwrap();
            removed[u] = true;
            order.push(u);
            for v in 0..self.n {
                if !removed[v] && self.has_edge(u, v) {
                    deg[v] -= 1;
                }
            }
        }
        order.reverse();
        order
    }

    fn check_budget(&self) -> Result<()> {
        if self.n > MAX_EXACT_N {
            return Err(Error::Budget(format!(
                "exact solvers are limited to n <= {MAX_EXACT_N}, got n = {}",
                self.n
            )));
        }
        Ok(())
    }

    fn colourable_with(&self, order: &[usize], k: usize) -> bool {
        fn rec(
            g: &ClassicalGraph,
            order: &[usize],
            k: usize,
            used: usize,
            colour: &mut [usize],
            pos: usize,
        ) -> bool {
            if pos == order.len() {
                return true;
            }
            let u = order[pos];
            // Only one previously-unused colour needs to be tried.
            for c in 0..k.min(used + 1) {
                let clash = (0..g.n).any(|v| g.has_edge(u, v) && colour[v] == c);
                if !clash {
                    colour[u] = c;
                    if rec(g, order, k, used.max(c + 1), colour, pos + 1) {
                        return true;
                    }
                    colour[u] = usize::MAX;
                }
            }
            false
        }
        let mut colour = vec![usize::MAX; self.n];
        rec(self, order, k, 0, &mut colour, 0)
    }

    /// Exact chromatic number by iterative deepening over colour counts.
    pub fn chromatic_number(&self) -> Result<usize> {
        self.check_budget()?;
        if self.n == 0 {
            return Ok(0);
        }
        let order = self.degeneracy_order();
        let lower = self.clique_number()?;
        for k in lower..=self.n {
            if self.colourable_with(&order, k) {
                return Ok(k);
            }
        }
        Ok(self.n)
    }

    /// Greedy colouring along the degeneracy ordering; used by callers that
    /// need a concrete (not necessarily optimal) proper colouring.
    pub fn proper_colouring(&self, k: usize) -> Option<Vec<Vec<usize>>> {
        let order = self.degeneracy_order();
        fn rec(
            g: &ClassicalGraph,
            order: &[usize],
            k: usize,
            used: usize,
            colour: &mut [usize],
            pos: usize,
        ) -> bool {
            if pos == order.len() {
                return true;
            }
            let u = order[pos];
            for c in 0..k.min(used + 1) {
                let clash = (0..g.n).any(|v| g.has_edge(u, v) && colour[v] == c);
                if !clash {
                    colour[u] = c;
                    if rec(g, order, k, used.max(c + 1), colour, pos + 1) {
                        return true;
                    }
                    colour[u] = usize::MAX;
                }
            }
            false
        }
        let mut colour = vec![usize::MAX; self.n];
        if !rec(self, &order, k, 0, &mut colour, 0) {
            return None;
        }
        let classes_used = colour.iter().copied().max().map_or(0, |c| c + 1);
        let mut classes = vec![Vec::new(); classes_used];
        for (v, &c) in colour.iter().enumerate() {
            classes[c].push(v);
        }
        classes.retain(|c| !c.is_empty());
        Some(classes)
    }

    /// Exact maximum independent set by branch and bound over the
    /// degeneracy ordering.
    pub fn max_independent_set(&self) -> Result<Vec<usize>> {
        self.check_budget()?;
        let order = self.degeneracy_order();
        let mut best: Vec<usize> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        fn rec(
            g: &ClassicalGraph,
            order: &[usize],
            pos: usize,
            current: &mut Vec<usize>,
            best: &mut Vec<usize>,
        ) {
            if current.len() + (order.len() - pos) <= best.len() {
                return;
            }
            if pos == order.len() {
                if current.len() > best.len() {
                    *best = current.clone();
                }
                return;
            }
            let u = order[pos];
            if current.iter().all(|&v| !g.has_edge(u, v)) {
                current.push(u);
                rec(g, order, pos + 1, current, best);
                current.pop();
            }
            rec(g, order, pos + 1, current, best);
        }
        rec(self, &order, 0, &mut current, &mut best);
        best.sort_unstable();
        Ok(best)
    }

    pub fn independence_number(&self) -> Result<usize> {
        Ok(self.max_independent_set()?.len())
    }

    /// Exact maximum clique: maximum independent set of the complement.
    pub fn max_clique(&self) -> Result<Vec<usize>> {
        self.complement().max_independent_set()
    }

    pub fn clique_number(&self) -> Result<usize> {
        Ok(self.max_clique()?.len())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = self.find(x);
            map.entry(r).or_default().push(x);
        }
        map.into_values().collect()
    }
}

/// A classical graph annotated with two kinds of edges: plain classical
/// edges and "strange" edges carrying a phase in [0, 2 pi). The edge sets
/// are disjoint and loops are excluded. Its combinatorial parameters are
/// those of the underlying graph; phases are inert annotations there.
#[derive(Clone, Debug, PartialEq)]
pub struct StrangeGraph {
    n: usize,
    classical_edges: BTreeSet<(usize, usize)>,
    strange_edges: BTreeMap<(usize, usize), f64>,
}

impl StrangeGraph {
    pub fn new(n: usize) -> Self {
        Self { n, classical_edges: BTreeSet::new(), strange_edges: BTreeMap::new() }
    }

    fn norm_pair(&self, u: usize, v: usize) -> Result<(usize, usize)> {
        if u >= self.n || v >= self.n {
            return Err(Error::Input(format!("edge ({u},{v}) out of range for n={}", self.n)));
        }
        if u == v {
            return Err(Error::Input(format!("loop at vertex {u} not allowed")));
        }
        Ok((u.min(v), u.max(v)))
    }

    pub fn add_classical_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let key = self.norm_pair(u, v)?;
        if self.strange_edges.contains_key(&key) {
            return Err(Error::Input(format!("edge {key:?} is already strange")));
        }
        self.classical_edges.insert(key);
        Ok(())
    }

    pub fn add_strange_edge(&mut self, u: usize, v: usize, theta: f64) -> Result<()> {
        let key = self.norm_pair(u, v)?;
        if self.classical_edges.contains(&key) {
            return Err(Error::Input(format!("edge {key:?} is already classical")));
        }
        if !theta.is_finite() || !(0.0..std::f64::consts::TAU).contains(&theta) {
            return Err(Error::Input(format!("phase {theta} outside [0, 2pi)")));
        }
        self.strange_edges.insert(key, theta);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classical_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.classical_edges.iter().copied()
    }

    pub fn strange_edges(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.strange_edges.iter().map(|(&k, &v)| (k, v))
    }

    pub fn has_classical_edge(&self) -> bool {
        !self.classical_edges.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.classical_edges.len() + self.strange_edges.len()
    }

    /// Forget the phases: the underlying classical graph.
    pub fn underlying(&self) -> ClassicalGraph {
        let mut g = ClassicalGraph::empty(self.n);
        for &(u, v) in &self.classical_edges {
            g.add_edge(u, v).expect("validated at insertion");
        }
        for &(u, v) in self.strange_edges.keys() {
            g.add_edge(u, v).expect("validated at insertion");
        }
        g
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.underlying().components()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex-shifted union.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut out = Self::new(self.n + other.n);
        out.classical_edges = self.classical_edges.clone();
        out.strange_edges = self.strange_edges.clone();
        for &(u, v) in &other.classical_edges {
            out.classical_edges.insert((u + self.n, v + self.n));
        }
        for (&(u, v), &t) in &other.strange_edges {
            out.strange_edges.insert((u + self.n, v + self.n), t);
        }
        out
    }

    /// Complete graph with every pair a strange edge of phase theta.
    pub fn strange_complete(n: usize, theta: f64) -> Result<Self> {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_strange_edge(u, v, theta)?;
            }
        }
        Ok(g)
    }
}
