//! Graph model: finite core + grafted planted trees.
//!
//! An [`AsymptoticTree`] is a finite connected simple core graph together
//! with a graft specification: selected core vertices each receive p ≥ 1
//! copies of the planted Cayley tree T'_q (root degree 1, every other vertex
//! degree q; the root is identified with the graft vertex). Vertices are
//! addressed canonically:
//!
//! * `core:<label>` — a core vertex;
//! * `tree:<label>/<index>/<c1.c2...>` — the tree vertex reached from graft
//!   vertex `<label>` by entering its `<index>`-th planted tree (1-based) and
//!   following children `c1, c2, ...` (each in `0..q-1`); the empty path
//!   (`tree:<label>/<index>/`) is the vertex adjacent to the graft vertex.
//!
//! Degrees in the full graph G: a core vertex keeps its core degree plus its
//! graft count; every tree vertex has degree q.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{Error, Result};

/// A finite, connected, simple, undirected core graph with labelled vertices.
#[derive(Debug, Clone)]
pub struct CoreGraph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl CoreGraph {
    /// Builds and validates a core graph. Edges are unordered label pairs.
    pub fn new(vertices: Vec<String>, edges: &[(String, String)]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyCore);
        }
        let mut index = BTreeMap::new();
        for (i, lab) in vertices.iter().enumerate() {
            if index.insert(lab.clone(), i).is_some() {
                return Err(Error::InvalidAddress(format!("duplicate vertex label '{lab}'")));
            }
        }
        let n = vertices.len();
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeMap::new();
        let mut edge_list = Vec::new();
        for (a, b) in edges {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownVertex(b.clone()))?;
            if ia == ib {
                return Err(Error::LoopEdge(a.clone()));
            }
            let key = (ia.min(ib), ia.max(ib));
            if seen.insert(key, ()).is_some() {
                return Err(Error::DuplicateEdge(a.clone(), b.clone()));
            }
            adj[ia].push(ib);
            adj[ib].push(ia);
            edge_list.push(key);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let g = CoreGraph { labels: vertices, index, adj, edges: edge_list };
        if !g.is_connected() {
            return Err(Error::DisconnectedCore);
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let n = self.labels.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    /// Core degree of vertex `i` (grafts not counted).
    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Unordered edge list as index pairs (ia < ib).
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }
}

/// Which degrees divide the core adjacency in `core_transition_matrix`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeConvention {
    /// Degrees of the bare core graph G^(0) taken standalone.
    Standalone,
    /// Degrees in the full graph G (graft counts added at graft vertices).
    FullGraph,
}

/// Address of a vertex in the full graph G.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexAddress {
    /// A core vertex by label.
    Core(String),
    /// A tree vertex: graft-vertex label, 1-based tree index, child path.
    Tree { graft: String, index: u32, path: Vec<u32> },
}

impl VertexAddress {
    pub fn core(label: impl Into<String>) -> Self {
        VertexAddress::Core(label.into())
    }

    pub fn tree(graft: impl Into<String>, index: u32, path: impl Into<Vec<u32>>) -> Self {
        VertexAddress::Tree { graft: graft.into(), index, path: path.into() }
    }

    /// Distance to the graft vertex (0 for core vertices).
    pub fn depth(&self) -> u64 {
        match self {
            VertexAddress::Core(_) => 0,
            VertexAddress::Tree { path, .. } => 1 + path.len() as u64,
        }
    }

    /// Canonical string form (`core:x`, `tree:x/2/0.1`).
    pub fn canonical(&self) -> String {
        match self {
            VertexAddress::Core(l) => format!("core:{l}"),
            VertexAddress::Tree { graft, index, path } => {
                let mut s = format!("tree:{graft}/{index}/");
                for (k, c) in path.iter().enumerate() {
                    if k > 0 {
                        s.push('.');
                    }
                    s.push_str(&c.to_string());
                }
                s
            }
        }
    }

    /// Parses the canonical form.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidAddress(text.to_string());
        if let Some(rest) = text.strip_prefix("core:") {
            if rest.is_empty() {
                return Err(bad());
            }
            return Ok(VertexAddress::Core(rest.to_string()));
        }
        if let Some(rest) = text.strip_prefix("tree:") {
            let mut parts = rest.splitn(3, '/');
            let graft = parts.next().filter(|s| !s.is_empty()).ok_or_else(bad)?;
            let index: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let path_text = parts.next().ok_or_else(bad)?;
            let mut path = Vec::new();
            if !path_text.is_empty() {
                for piece in path_text.split('.') {
                    path.push(piece.parse().map_err(|_| bad())?);
                }
            }
            return Ok(VertexAddress::Tree { graft: graft.to_string(), index, path });
        }
        Err(bad())
    }
}

impl core::fmt::Display for VertexAddress {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// A finite core with planted Cayley trees grafted on: the full graph G.
#[derive(Debug, Clone)]
pub struct AsymptoticTree {
    core: CoreGraph,
    q: u32,
    /// Graft count per core vertex (0 where nothing is grafted).
    graft_counts: Vec<u32>,
    /// Indices of core vertices with at least one graft, ascending.
    graft_vertices: Vec<usize>,
    /// All-pairs core distances.
    core_dist: Vec<Vec<u32>>,
}

impl AsymptoticTree {
    /// Builds the full graph from a core, graft entries `(label, count)` and
    /// the tree degree q. Requires q ≥ 2 and at least one graft.
    pub fn new(core: CoreGraph, grafts: &[(String, u32)], q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::DegreeTooSmall { q, needed: 2 });
        }
        let mut graft_counts = vec![0u32; core.len()];
        for (label, count) in grafts {
            let i = core.index_of(label).ok_or_else(|| Error::UnknownVertex(label.clone()))?;
            if graft_counts[i] != 0 {
                return Err(Error::DuplicateGraft(label.clone()));
            }
            if *count == 0 {
                return Err(Error::ZeroGraftCount(label.clone()));
            }
            graft_counts[i] = *count;
        }
        let graft_vertices: Vec<usize> =
            (0..core.len()).filter(|&i| graft_counts[i] > 0).collect();
        if graft_vertices.is_empty() {
            return Err(Error::InvalidAddress("graft set is empty".to_string()));
        }
        let core_dist = all_pairs_bfs(&core);
        Ok(AsymptoticTree { core, q, graft_counts, graft_vertices, core_dist })
    }

    pub fn core(&self) -> &CoreGraph {
        &self.core
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// a² = 4(q−1), exactly.
    pub fn a_squared(&self) -> u32 {
        4 * (self.q - 1)
    }

    /// a = 2√(q−1).
    pub fn a(&self) -> f64 {
        crate::exact::f64_sqrt(self.a_squared() as f64)
    }

    /// Band edge a/q of the continuous spectrum.
    pub fn band_edge(&self) -> f64 {
        self.a() / self.q as f64
    }

    /// Graft count at core vertex index `i` (0 if nothing is grafted there).
    pub fn graft_count(&self, i: usize) -> u32 {
        self.graft_counts[i]
    }

    /// Indices of grafted core vertices, ascending.
    pub fn graft_vertices(&self) -> &[usize] {
        &self.graft_vertices
    }

    /// Degree of core vertex `i` in the full graph G.
    pub fn sigma_full(&self, i: usize) -> u32 {
        self.core.degree(i) as u32 + self.graft_counts[i]
    }

    /// Degree of an arbitrary vertex in G.
    pub fn degree(&self, addr: &VertexAddress) -> Result<u32> {
        self.check_address(addr)?;
        Ok(match addr {
            VertexAddress::Core(l) => self.sigma_full(self.core.index_of(l).unwrap()),
            VertexAddress::Tree { .. } => self.q,
        })
    }

    /// Validates an address against this graph.
    pub fn check_address(&self, addr: &VertexAddress) -> Result<()> {
        let bad = || Error::InvalidAddress(addr.canonical());
        match addr {
            VertexAddress::Core(l) => {
                self.core.index_of(l).ok_or_else(bad)?;
            }
            VertexAddress::Tree { graft, index, path } => {
                let i = self.core.index_of(graft).ok_or_else(bad)?;
                let p = self.graft_counts[i];
                if p == 0 || *index == 0 || *index > p {
                    return Err(bad());
                }
                if path.iter().any(|&c| c + 1 >= self.q) {
                    return Err(bad());
                }
                if path.len() > (u32::MAX / 4) as usize {
                    return Err(Error::DepthOverflow);
                }
            }
        }
        Ok(())
    }

    /// Core index of the graft vertex the address hangs from, or the vertex
    /// itself for core addresses.
    pub fn anchor(&self, addr: &VertexAddress) -> usize {
        match addr {
            VertexAddress::Core(l) => self.core.index_of(l).unwrap(),
            VertexAddress::Tree { graft, .. } => self.core.index_of(graft).unwrap(),
        }
    }

    /// Graph distance in G between two addresses.
    pub fn distance(&self, u: &VertexAddress, v: &VertexAddress) -> Result<u64> {
        self.check_address(u)?;
        self.check_address(v)?;
        Ok(match (u, v) {
            (VertexAddress::Core(a), VertexAddress::Core(b)) => {
                let (ia, ib) = (self.core.index_of(a).unwrap(), self.core.index_of(b).unwrap());
                self.core_dist[ia][ib] as u64
            }
            (VertexAddress::Core(_), VertexAddress::Tree { .. }) => {
                let (ia, ib) = (self.anchor(u), self.anchor(v));
                self.core_dist[ia][ib] as u64 + v.depth()
            }
            (VertexAddress::Tree { .. }, VertexAddress::Core(_)) => {
                let (ia, ib) = (self.anchor(u), self.anchor(v));
                self.core_dist[ia][ib] as u64 + u.depth()
            }
            (
                VertexAddress::Tree { graft: ga, index: ia, path: pa },
                VertexAddress::Tree { graft: gb, index: ib, path: pb },
            ) => {
                if ga == gb && ia == ib {
                    // Same planted tree: meet at the deepest common ancestor.
                    let common = pa.iter().zip(pb.iter()).take_while(|(x, y)| x == y).count();
                    (pa.len() - common) as u64 + (pb.len() - common) as u64
                } else {
                    // Different trees: route through the graft vertices.
                    let (ka, kb) = (self.anchor(u), self.anchor(v));
                    u.depth() + self.core_dist[ka][kb] as u64 + v.depth()
                }
            }
        })
    }

    /// Neighbours of an address in G (parent before children for tree
    /// vertices; core neighbours before tree roots for core vertices).
    pub fn neighbors(&self, addr: &VertexAddress) -> Result<Vec<VertexAddress>> {
        self.check_address(addr)?;
        let mut out = Vec::new();
        match addr {
            VertexAddress::Core(l) => {
                let i = self.core.index_of(l).unwrap();
                for &j in self.core.neighbors(i) {
                    out.push(VertexAddress::Core(self.core.label(j).to_string()));
                }
                for t in 1..=self.graft_counts[i] {
                    out.push(VertexAddress::tree(l.clone(), t, Vec::new()));
                }
            }
            VertexAddress::Tree { graft, index, path } => {
                if path.is_empty() {
                    out.push(VertexAddress::Core(graft.clone()));
                } else {
                    let mut parent = path.clone();
                    parent.pop();
                    out.push(VertexAddress::tree(graft.clone(), *index, parent));
                }
                for c in 0..self.q - 1 {
                    let mut child = path.clone();
                    child.push(c);
                    out.push(VertexAddress::tree(graft.clone(), *index, child));
                }
            }
        }
        Ok(out)
    }

    /// Transition matrix of the bare core: entry (u, v) = 1/σ_v when u ~ v in
    /// the core, else 0 (column-stochastic under the standalone convention).
    /// σ is taken per `convention`. Fails for the single-vertex core under
    /// the standalone convention (an isolated vertex has no walk).
    pub fn core_transition_matrix(
        &self,
        convention: DegreeConvention,
    ) -> Result<Vec<Vec<BigRational>>> {
        let n = self.core.len();
        let zero = BigRational::from_integer(BigInt::from(0));
        let mut m = vec![vec![zero; n]; n];
        for v in 0..n {
            let sigma = match convention {
                DegreeConvention::Standalone => self.core.degree(v) as u32,
                DegreeConvention::FullGraph => self.sigma_full(v),
            };
            if sigma == 0 {
                return Err(Error::UndefinedTransitionMatrix);
            }
            let w = BigRational::new(BigInt::from(1), BigInt::from(sigma));
            for &u in self.core.neighbors(v) {
                m[u][v] = w.clone();
            }
        }
        Ok(m)
    }

    /// True when G is isomorphic to the two-sided chain ℤ (q = 2 and every
    /// vertex of G has degree 2). Only this shape is admitted for q = 2
    /// quantum-walk computations.
    pub fn is_chain(&self) -> bool {
        self.q == 2
            && (0..self.core.len()).all(|i| self.sigma_full(i) == 2)
            && self.core_is_path()
    }

    fn core_is_path(&self) -> bool {
        // Connected + every core degree ≤ 2 + acyclic ⇔ path (or one vertex).
        let n = self.core.len();
        self.core.edges().len() == n - 1 && (0..n).all(|i| self.core.degree(i) <= 2)
    }

    /// Restriction of G to the closed ball of given radius around `center`.
    /// Intended for explicit finite computation; the vertex set grows like
    /// (q−1)^radius, so radii beyond ~20/log₂(q−1) are refused.
    pub fn truncated_ball(&self, center: &VertexAddress, radius: u32) -> Result<TruncatedGraph> {
        self.check_address(center)?;
        // Crude size bound before enumerating anything.
        let mut bound: f64 = 1.0;
        let growth = (self.q - 1).max(1) as f64;
        let mut layer = self.degree(center)? as f64;
        for _ in 0..radius {
            bound += layer;
            layer *= growth;
            if bound > 5e6 {
                return Err(Error::DepthOverflow);
            }
        }

        let mut vertices = vec![center.clone()];
        let mut index = BTreeMap::new();
        index.insert(center.clone(), 0usize);
        let mut dist = vec![0u32];
        let mut head = 0;
        while head < vertices.len() {
            let d = dist[head];
            if d == radius {
                head += 1;
                continue;
            }
            let here = vertices[head].clone();
            for nb in self.neighbors(&here)? {
                if !index.contains_key(&nb) {
                    index.insert(nb.clone(), vertices.len());
                    vertices.push(nb);
                    dist.push(d + 1);
                }
            }
            head += 1;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for (i, v) in vertices.iter().enumerate() {
            for nb in self.neighbors(v)? {
                if let Some(&j) = index.get(&nb) {
                    adj[i].push(j);
                }
            }
        }
        let degree_in_g: Vec<u32> =
            vertices.iter().map(|v| self.degree(v).unwrap()).collect();
        Ok(TruncatedGraph { vertices, index, adj, dist, degree_in_g, radius })
    }
}

/// The closed ball of a given radius in G, with degrees remembered from G
/// (so operator iterations on it agree with G for walks that cannot escape).
#[derive(Debug, Clone)]
pub struct TruncatedGraph {
    pub vertices: Vec<VertexAddress>,
    pub index: BTreeMap<VertexAddress, usize>,
    /// Neighbours within the ball, by index.
    pub adj: Vec<Vec<usize>>,
    /// Distance from the centre.
    pub dist: Vec<u32>,
    /// Degree in the *full* graph G (not the ball).
    pub degree_in_g: Vec<u32>,
    pub radius: u32,
}

impl TruncatedGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn all_pairs_bfs(core: &CoreGraph) -> Vec<Vec<u32>> {
    let n = core.len();
    let mut out = vec![vec![0u32; n]; n];
    for s in 0..n {
        let mut dist = vec![u32::MAX; n];
        dist[s] = 0;
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in core.neighbors(v) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        out[s] = dist;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3_with_middle_grafts() -> AsymptoticTree {
        let core = CoreGraph::new(
            vec!["u".into(), "v".into(), "w".into()],
            &[("u".into(), "v".into()), ("v".into(), "w".into())],
        )
        .unwrap();
        AsymptoticTree::new(core, &[("v".into(), 3)], 4).unwrap()
    }

    #[test]
    fn address_round_trip() {
        for text in ["core:a", "tree:v/1/", "tree:v/2/0.1.2", "tree:x/3/0"] {
            let a = VertexAddress::parse(text).unwrap();
            assert_eq!(a.canonical(), text);
        }
        assert!(VertexAddress::parse("tree:v/0").is_err());
        assert!(VertexAddress::parse("core:").is_err());
        assert!(VertexAddress::parse("v").is_err());
    }

    #[test]
    fn rejects_malformed_cores() {
        assert!(matches!(CoreGraph::new(vec![], &[]), Err(Error::EmptyCore)));
        let dup = CoreGraph::new(
            vec!["a".into(), "b".into()],
            &[("a".into(), "b".into()), ("b".into(), "a".into())],
        );
        assert!(matches!(dup, Err(Error::DuplicateEdge(..))));
        let disc = CoreGraph::new(vec!["a".into(), "b".into()], &[]);
        assert!(matches!(disc, Err(Error::DisconnectedCore)));
        let lp = CoreGraph::new(vec!["a".into()], &[("a".into(), "a".into())]);
        assert!(matches!(lp, Err(Error::LoopEdge(..))));
    }

    #[test]
    fn degrees_and_distances() {
        let g = p3_with_middle_grafts();
        let u = VertexAddress::core("u");
        let v = VertexAddress::core("v");
        assert_eq!(g.degree(&u).unwrap(), 1);
        assert_eq!(g.degree(&v).unwrap(), 5);
        let t = VertexAddress::parse("tree:v/2/0.1").unwrap();
        assert_eq!(g.degree(&t).unwrap(), 4);
        assert_eq!(g.distance(&u, &t).unwrap(), 4);
        let s = VertexAddress::parse("tree:v/2/0.2").unwrap();
        assert_eq!(g.distance(&t, &s).unwrap(), 2);
        let r = VertexAddress::parse("tree:v/1/").unwrap();
        assert_eq!(g.distance(&t, &r).unwrap(), 4);
        assert_eq!(g.distance(&t, &t).unwrap(), 0);
    }

    #[test]
    fn ball_of_pure_tree_counts_layers() {
        // Pure T_4: one core vertex with 4 planted ternary trees.
        let core = CoreGraph::new(vec!["o".into()], &[]).unwrap();
        let g = AsymptoticTree::new(core, &[("o".into(), 4)], 4).unwrap();
        let ball = g.truncated_ball(&VertexAddress::core("o"), 2).unwrap();
        // 1 + 4 + 4·3 = 17 vertices.
        assert_eq!(ball.len(), 17);
        let ball3 = g.truncated_ball(&VertexAddress::core("o"), 3).unwrap();
        assert_eq!(ball3.len(), 17 + 36);
    }

    #[test]
    fn chain_detection() {
        let core = CoreGraph::new(vec!["o".into()], &[]).unwrap();
        let chain = AsymptoticTree::new(core, &[("o".into(), 2)], 2).unwrap();
        assert!(chain.is_chain());
        let core2 = CoreGraph::new(
            vec!["a".into(), "b".into()],
            &[("a".into(), "b".into())],
        )
        .unwrap();
        let chain2 =
            AsymptoticTree::new(core2, &[("a".into(), 1), ("b".into(), 1)], 2).unwrap();
        assert!(chain2.is_chain());
        let core3 = CoreGraph::new(vec!["o".into()], &[]).unwrap();
        let half = AsymptoticTree::new(core3, &[("o".into(), 1)], 2).unwrap();
        assert!(!half.is_chain());
    }

    #[test]
    fn transition_matrix_conventions() {
        let g = p3_with_middle_grafts();
        let m = g.core_transition_matrix(DegreeConvention::Standalone).unwrap();
        // Column v (index 1) divides by the core degree 2.
        assert_eq!(m[0][1], BigRational::new(1.into(), 2.into()));
        let mg = g.core_transition_matrix(DegreeConvention::FullGraph).unwrap();
        // Column v divides by σ_v(G) = 2 + 3.
        assert_eq!(mg[0][1], BigRational::new(1.into(), 5.into()));
        // Columns u, w divide by 1 either way.
        assert_eq!(mg[1][0], BigRational::from_integer(1.into()));
    }
}
