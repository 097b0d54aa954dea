//! Prime graphs and degree graphs.
//!
//! Both are stored as a dense symmetric bit matrix over the ascending
//! vertex list; the graphs that come out of degree sets have at most a few
//! dozen vertices. All "least"/"first" selections use ascending vertex
//! order.
//!
//! A graph may be *partial*: its edges are a certified lower bound of the
//! true edge set. A triangle found in a partial graph is conclusive, the
//! absence of one is not, so every query other than triangle existence
//! rejects partial graphs.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::Deref;

use serde::Serialize;
use thiserror::Error;

use crate::groupdata::DegreeSet;
use crate::numtheory;

/// Largest graph accepted by [`Graph::is_isomorphic`].
pub const MAX_ISOMORPHISM_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{0} is not defined on a partial graph; use has_triangle_lower_bound")]
    Partial(&'static str),
    #[error("graph has {size} vertices, more than the limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("vertex label {0} is not prime")]
    NotPrime(u128),
    #[error("edge endpoint {0} is not a vertex")]
    UnknownVertex(u128),
    #[error("self-loop at {0}")]
    SelfLoop(u128),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn set_sym(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
        self.bits[j * self.words + i / 64] |= 1 << (i % 64);
    }

    fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Least `k > after` adjacent to both `i` and `j`.
    fn first_common_after(&self, i: usize, j: usize, after: usize) -> Option<usize> {
        let (ri, rj) = (self.row(i), self.row(j));
        let start = after + 1;
        for w in start / 64..self.words {
            let mut word = ri[w] & rj[w];
            if w == start / 64 {
                word &= u64::MAX.checked_shl((start % 64) as u32).unwrap_or(0);
            }
            if word != 0 {
                let k = w * 64 + word.trailing_zeros() as usize;
                return (k < self.n).then_some(k);
            }
        }
        None
    }
}

/// A simple undirected graph on ascending integer labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<u128>,
    adj: BitMatrix,
    partial: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ShapeFlags {
    pub is_cycle: bool,
    pub is_tree: bool,
    pub is_path: bool,
    /// `(m, n)` with `m <= n` when the graph is `K_{m,n}`.
    pub complete_bipartite: Option<(usize, usize)>,
}

/// The two triangle-free five-vertex shapes that occur as prime graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FigureA {
    /// `K_{2,3}`.
    First,
    /// An isolated vertex plus two disjoint edges.
    Second,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    vertices: &'a [u128],
    edges: Vec<[u128; 2]>,
    partial: bool,
}

impl Graph {
    /// Vertices are sorted and deduplicated; every edge endpoint must be a vertex.
    pub fn from_edges(
        vertices: impl IntoIterator<Item = u128>,
        edges: &[(u128, u128)],
        partial: bool,
    ) -> Result<Self, GraphError> {
        let vertices: Vec<u128> = vertices
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut adj = BitMatrix::new(vertices.len());
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let i = vertices
                .binary_search(&u)
                .map_err(|_| GraphError::UnknownVertex(u))?;
            let j = vertices
                .binary_search(&v)
                .map_err(|_| GraphError::UnknownVertex(v))?;
            adj.set_sym(i, j);
        }
        Ok(Graph {
            vertices,
            adj,
            partial,
        })
    }

    pub fn vertices(&self) -> &[u128] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn has_edge(&self, u: u128, v: u128) -> bool {
        match (
            self.vertices.binary_search(&u),
            self.vertices.binary_search(&v),
        ) {
            (Ok(i), Ok(j)) => self.adj.get(i, j),
            _ => false,
        }
    }

    pub fn degree(&self, v: u128) -> Option<usize> {
        self.vertices
            .binary_search(&v)
            .ok()
            .map(|i| self.adj.degree(i))
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edge_list(&self) -> Vec<(u128, u128)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.adj.get(i, j) {
                    out.push((self.vertices[i], self.vertices[j]));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|i| self.adj.degree(i)).sum::<usize>() / 2
    }

    fn triangle_indices(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                if !self.adj.get(i, j) {
                    continue;
                }
                if let Some(k) = self.adj.first_common_after(i, j, j) {
                    return Some((i, j, k));
                }
            }
        }
        None
    }

    /// The lexicographically least triangle. On a partial graph a found
    /// triangle is returned, but "no triangle" is a contract error.
    pub fn find_triangle(&self) -> Result<Option<(u128, u128, u128)>, GraphError> {
        match self.triangle_indices() {
            Some((i, j, k)) => Ok(Some((self.vertices[i], self.vertices[j], self.vertices[k]))),
            None if self.partial => Err(GraphError::Partial("triangle absence")),
            None => Ok(None),
        }
    }

    /// Whether the recorded edges already contain a triangle. Valid on
    /// partial graphs.
    pub fn has_triangle_lower_bound(&self) -> bool {
        self.triangle_indices().is_some()
    }

    fn require_exact(&self, what: &'static str) -> Result<(), GraphError> {
        if self.partial {
            Err(GraphError::Partial(what))
        } else {
            Ok(())
        }
    }

    fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in (0..n).filter(|&j| self.adj.get(i, j)) {
                    if !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Components, each ascending, ordered by least vertex.
    pub fn connected_components(&self) -> Result<Vec<Vec<u128>>, GraphError> {
        self.require_exact("connected_components")?;
        Ok(self
            .component_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.vertices[i]).collect())
            .collect())
    }

    pub fn shape_predicates(&self) -> Result<ShapeFlags, GraphError> {
        self.require_exact("shape_predicates")?;
        let n = self.len();
        if n == 0 {
            return Ok(ShapeFlags::default());
        }
        let m = self.edge_count();
        let connected = self.component_indices().len() == 1;
        let degrees: Vec<usize> = (0..n).map(|i| self.adj.degree(i)).collect();
        let is_cycle = connected && n >= 3 && degrees.iter().all(|&d| d == 2);
        let is_tree = connected && m == n - 1;
        let is_path = is_tree && degrees.iter().all(|&d| d <= 2);
        let complete_bipartite = if connected && n >= 2 {
            self.bipartition()
                .filter(|&(a, b)| a * b == m)
                .map(|(a, b)| (a.min(b), a.max(b)))
        } else {
            None
        };
        Ok(ShapeFlags {
            is_cycle,
            is_tree,
            is_path,
            complete_bipartite,
        })
    }

    /// Part sizes of a 2-colouring of a connected graph.
    fn bipartition(&self) -> Option<(usize, usize)> {
        let n = self.len();
        let mut colour = vec![None; n];
        colour[0] = Some(false);
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            let c = colour[i]?;
            for j in (0..n).filter(|&j| self.adj.get(i, j)) {
                match colour[j] {
                    None => {
                        colour[j] = Some(!c);
                        stack.push(j);
                    }
                    Some(cj) if cj == c => return None,
                    Some(_) => {}
                }
            }
        }
        let left = colour.iter().filter(|c| **c == Some(false)).count();
        Some((left, n - left))
    }

    /// Whether an edge-preserving bijection exists, ignoring labels. Brute
    /// force over vertex permutations with a degree-sequence filter, so
    /// both graphs must have at most [`MAX_ISOMORPHISM_VERTICES`] vertices.
    pub fn is_isomorphic(&self, other: &Graph) -> Result<bool, GraphError> {
        self.require_exact("is_isomorphic")?;
        other.require_exact("is_isomorphic")?;
        for g in [self, other] {
            if g.len() > MAX_ISOMORPHISM_VERTICES {
                return Err(GraphError::TooLarge {
                    size: g.len(),
                    limit: MAX_ISOMORPHISM_VERTICES,
                });
            }
        }
        let n = self.len();
        if n != other.len() || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        let deg_a: Vec<usize> = (0..n).map(|i| self.adj.degree(i)).collect();
        let deg_b: Vec<usize> = (0..n).map(|i| other.adj.degree(i)).collect();
        let (mut sa, mut sb) = (deg_a.clone(), deg_b.clone());
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return Ok(false);
        }
        let mut mapping = vec![usize::MAX; n];
        let mut used = vec![false; n];
        Ok(self.extend_mapping(other, &deg_a, &deg_b, 0, &mut mapping, &mut used))
    }

    fn extend_mapping(
        &self,
        other: &Graph,
        deg_a: &[usize],
        deg_b: &[usize],
        i: usize,
        mapping: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == self.len() {
            return true;
        }
        for j in 0..other.len() {
            if used[j] || deg_a[i] != deg_b[j] {
                continue;
            }
            let consistent = (0..i).all(|k| self.adj.get(i, k) == other.adj.get(j, mapping[k]));
            if !consistent {
                continue;
            }
            mapping[i] = j;
            used[j] = true;
            if self.extend_mapping(other, deg_a, deg_b, i + 1, mapping, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }

    pub fn figure_a_match(&self) -> Result<Option<FigureA>, GraphError> {
        self.require_exact("figure_a_match")?;
        if self.len() != 5 {
            return Ok(None);
        }
        if self.is_isomorphic(&figure_a_first())? {
            Ok(Some(FigureA::First))
        } else if self.is_isomorphic(&figure_a_second())? {
            Ok(Some(FigureA::Second))
        } else {
            Ok(None)
        }
    }

    /// Deterministic DOT rendering.
    pub fn to_dot(&self) -> String {
        if self.is_empty() && !self.partial {
            return "graph G { }\n".to_string();
        }
        let mut out = String::from("graph G {\n");
        if self.partial {
            out.push_str("  // partial: recorded edges are a lower bound\n");
        }
        for v in &self.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edge_list() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// `{"vertices":[...],"edges":[[u,v],...],"partial":bool}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph json")
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            vertices: &self.vertices,
            edges: self.edge_list().into_iter().map(|(u, v)| [u, v]).collect(),
            partial: self.partial,
        }
        .serialize(serializer)
    }
}

/// `K_{2,3}` on labels 1..=5 with parts {1, 2} and {3, 4, 5}.
pub fn figure_a_first() -> Graph {
    let edges: Vec<(u128, u128)> = [1, 2]
        .iter()
        .flat_map(|&a| [3, 4, 5].map(|b| (a, b)))
        .collect();
    Graph::from_edges(1..=5, &edges, false).expect("template")
}

/// Isolated vertex 1 plus edges 2-3 and 4-5.
pub fn figure_a_second() -> Graph {
    Graph::from_edges(1..=5, &[(2, 3), (4, 5)], false).expect("template")
}

/// Prime graph `Delta`: vertices are primes, `u ~ v` iff `uv` divides
/// some degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PrimeGraph(Graph);

impl PrimeGraph {
    pub fn from_degree_set(degrees: &DegreeSet) -> Self {
        let mut vertices = BTreeSet::new();
        let mut edges = Vec::new();
        for &d in degrees.nontrivial() {
            let primes = numtheory::prime_support(d).expect("degrees are positive");
            for (i, &u) in primes.iter().enumerate() {
                for &v in &primes[i + 1..] {
                    edges.push((u, v));
                }
            }
            vertices.extend(primes);
        }
        PrimeGraph(Graph::from_edges(vertices, &edges, false).expect("edges are internal"))
    }

    /// An exact prime graph from an explicit edge list; labels must be prime.
    pub fn from_edges(
        vertices: impl IntoIterator<Item = u128>,
        edges: &[(u128, u128)],
    ) -> Result<Self, GraphError> {
        Self::checked(vertices, edges, false)
    }

    /// A lower-bound prime graph.
    pub fn partial_from_edges(
        vertices: impl IntoIterator<Item = u128>,
        edges: &[(u128, u128)],
    ) -> Result<Self, GraphError> {
        Self::checked(vertices, edges, true)
    }

    fn checked(
        vertices: impl IntoIterator<Item = u128>,
        edges: &[(u128, u128)],
        partial: bool,
    ) -> Result<Self, GraphError> {
        let g = Graph::from_edges(vertices, edges, partial)?;
        if let Some(&bad) = g.vertices().iter().find(|&&v| !numtheory::is_prime(v)) {
            return Err(GraphError::NotPrime(bad));
        }
        Ok(PrimeGraph(g))
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }
}

impl Deref for PrimeGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

/// Degree graph `Gamma`: vertices are the nontrivial degrees, `a ~ b` iff
/// `gcd(a, b) > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreeGraph(Graph);

impl DegreeGraph {
    pub fn from_degree_set(degrees: &DegreeSet) -> Self {
        let vs = degrees.nontrivial();
        let mut edges = Vec::new();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                if numtheory::gcd(a, b) > 1 {
                    edges.push((a, b));
                }
            }
        }
        DegreeGraph(
            Graph::from_edges(vs.iter().copied(), &edges, false).expect("edges are internal"),
        )
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }
}

impl Deref for DegreeGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}
