//! Vertex-ordered simple graphs and their spanning forests.
//!
//! Vertices are the integers `1..=n` with their natural order. An edge is
//! always stored as an ordered pair `(i, j)` with `i < j`. A [`Forest`]
//! carries its ambient vertex count, so isolated vertices count as
//! singleton components.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An edge `(lo, hi)` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u32; 2]", into = "[u32; 2]")]
pub struct Edge {
    lo: u32,
    hi: u32,
}

impl Edge {
    pub fn new(i: u32, j: u32) -> Result<Self> {
        if i < j {
            Ok(Edge { lo: i, hi: j })
        } else {
            Err(Error::UnorderedEdge(i, j))
        }
    }

    /// Builds the edge joining two distinct vertices given in any order.
    pub fn between(u: u32, v: u32) -> Result<Self> {
        Edge::new(u.min(v), u.max(v))
    }

    pub fn lo(self) -> u32 {
        self.lo
    }

    pub fn hi(self) -> u32 {
        self.hi
    }

    pub fn other(self, v: u32) -> u32 {
        if v == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

impl TryFrom<[u32; 2]> for Edge {
    type Error = Error;

    fn try_from([i, j]: [u32; 2]) -> Result<Self> {
        Edge::new(i, j)
    }
}

impl From<Edge> for [u32; 2] {
    fn from(e: Edge) -> Self {
        [e.lo, e.hi]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// Shorthand used throughout the tests: `e(1, 2)`.
///
/// Panics if `i >= j`.
pub fn e(i: u32, j: u32) -> Edge {
    Edge::new(i, j).expect("edge endpoints must satisfy i < j")
}

fn check_edges<I>(n: u32, edges: I) -> Result<BTreeSet<Edge>>
where
    I: IntoIterator<Item = (u32, u32)>,
{
    let mut set = BTreeSet::new();
    for (i, j) in edges {
        let edge = Edge::new(i, j)?;
        if i == 0 || j > n {
            return Err(Error::VertexOutOfRange { i, j, n });
        }
        if !set.insert(edge) {
            return Err(Error::DuplicateEdge(edge));
        }
    }
    Ok(set)
}

/// A simple graph on `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawEdgeSet", into = "RawEdgeSet")]
pub struct OrderedGraph {
    n: u32,
    edges: BTreeSet<Edge>,
}

impl OrderedGraph {
    pub fn new<I>(n: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        Ok(OrderedGraph { n, edges: check_edges(n, edges)? })
    }

    pub fn from_edges<I>(n: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        OrderedGraph::new(n, edges.into_iter().map(|e| (e.lo, e.hi)))
    }

    pub fn complete(n: u32) -> Self {
        let edges = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| Edge { lo: i, hi: j }))
            .collect();
        OrderedGraph { n, edges }
    }

    pub fn edgeless(n: u32) -> Self {
        OrderedGraph { n, edges: BTreeSet::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        1..=self.n
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && self.edges.contains(&Edge { lo: u.min(v), hi: u.max(v) })
    }

    /// Neighbours `i < j` of `j`, increasing.
    pub fn smaller_neighbors(&self, j: u32) -> Vec<u32> {
        (1..j).filter(|&i| self.edges.contains(&Edge { lo: i, hi: j })).collect()
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        self.vertices().filter(|&u| self.has_edge(u, v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut sets = DisjointSets::new(self.n);
        for e in &self.edges {
            sets.union(e.lo, e.hi);
        }
        sets.count() <= 1
    }

    /// Applies the vertex map `v -> perm[v - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        check_relabeling(self.n, perm)?;
        OrderedGraph::from_edges(
            self.n,
            self.edges
                .iter()
                .map(|e| Edge::between(perm[e.lo as usize - 1], perm[e.hi as usize - 1]))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Every spanning subgraph of this graph, one per subset of the edge set.
    pub fn spanning_subgraphs(&self) -> impl Iterator<Item = OrderedGraph> + '_ {
        let edges: Vec<Edge> = self.edges.iter().copied().collect();
        (0u64..1 << edges.len()).map(move |mask| OrderedGraph {
            n: self.n,
            edges: edges
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect(),
        })
    }
}

pub(crate) fn check_relabeling(n: u32, perm: &[u32]) -> Result<()> {
    if perm.len() != n as usize {
        return Err(Error::BadRelabeling(format!("expected {n} images, got {}", perm.len())));
    }
    let mut seen = vec![false; n as usize + 1];
    for &v in perm {
        if v == 0 || v > n || std::mem::replace(&mut seen[v as usize], true) {
            return Err(Error::BadRelabeling(format!("{perm:?} is not a permutation of 1..={n}")));
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct RawEdgeSet {
    n: u32,
    edges: Vec<[u32; 2]>,
}

impl TryFrom<RawEdgeSet> for OrderedGraph {
    type Error = Error;

    fn try_from(raw: RawEdgeSet) -> Result<Self> {
        OrderedGraph::new(raw.n, raw.edges.into_iter().map(|[i, j]| (i, j)))
    }
}

impl TryFrom<RawEdgeSet> for Forest {
    type Error = Error;

    fn try_from(raw: RawEdgeSet) -> Result<Self> {
        Forest::new(raw.n, raw.edges.into_iter().map(|[i, j]| (i, j)))
    }
}

impl From<Forest> for RawEdgeSet {
    fn from(f: Forest) -> Self {
        RawEdgeSet { n: f.n, edges: f.edges.into_iter().map(Into::into).collect() }
    }
}

impl From<OrderedGraph> for RawEdgeSet {
    fn from(g: OrderedGraph) -> Self {
        RawEdgeSet { n: g.n, edges: g.edges.into_iter().map(Into::into).collect() }
    }
}

/// Union-find over `1..=n` with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
    count: usize,
}

impl DisjointSets {
    pub fn new(n: u32) -> Self {
        DisjointSets {
            parent: (0..=n).collect(),
            size: vec![1; n as usize + 1],
            count: n as usize,
        }
    }

    pub fn find(&mut self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            let grand = self.parent[self.parent[v as usize] as usize];
            self.parent[v as usize] = grand;
            v = grand;
        }
        v
    }

    /// Returns false if `u` and `v` were already in the same set.
    pub fn union(&mut self, u: u32, v: u32) -> bool {
        let (mut a, mut b) = (self.find(u), self.find(v));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        self.count -= 1;
        true
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

/// An acyclic edge set spanning `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawEdgeSet", into = "RawEdgeSet")]
pub struct Forest {
    n: u32,
    edges: BTreeSet<Edge>,
}

impl Forest {
    pub fn new<I>(n: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let edges = check_edges(n, edges)?;
        let mut sets = DisjointSets::new(n);
        for &e in &edges {
            if !sets.union(e.lo, e.hi) {
                return Err(Error::CyclicInput(e));
            }
        }
        Ok(Forest { n, edges })
    }

    pub fn from_edges<I>(n: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        Forest::new(n, edges.into_iter().map(|e| (e.lo, e.hi)))
    }

    pub fn empty(n: u32) -> Self {
        Forest { n, edges: BTreeSet::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn component_count(&self) -> usize {
        self.n as usize - self.edges.len()
    }

    /// `m(F)`: the minimum vertex of every component.
    pub fn component_minima(&self) -> BTreeSet<u32> {
        let mut sets = DisjointSets::new(self.n);
        for e in &self.edges {
            sets.union(e.lo, e.hi);
        }
        let mut seen = BTreeSet::new();
        let mut minima = BTreeSet::new();
        for v in 1..=self.n {
            if seen.insert(sets.find(v)) {
                minima.insert(v);
            }
        }
        minima
    }

    pub fn orient(&self) -> Orientation {
        Orientation::new(self)
    }

    /// True iff labels increase along every root-to-leaf path, i.e. every
    /// non-root vertex is larger than its parent.
    pub fn is_increasing(&self) -> bool {
        self.first_descent().is_none()
    }

    pub fn check_increasing(&self) -> Result<()> {
        match self.first_descent() {
            None => Ok(()),
            Some((vertex, parent)) => Err(Error::NotIncreasing { vertex, parent }),
        }
    }

    fn first_descent(&self) -> Option<(u32, u32)> {
        let o = self.orient();
        (1..=self.n).find_map(|v| o.parent(v).filter(|&p| p > v).map(|p| (v, p)))
    }

    pub fn check_in_graph(&self, g: &OrderedGraph) -> Result<()> {
        if self.n != g.n {
            return Err(Error::SizeMismatch(self.n, g.n));
        }
        match self.edges.iter().find(|e| !g.edges.contains(e)) {
            Some(&e) => Err(Error::NotInGraph(e)),
            None => Ok(()),
        }
    }

    /// `F \ {e}`; always a forest.
    pub fn without(&self, e: Edge) -> Forest {
        let mut edges = self.edges.clone();
        edges.remove(&e);
        Forest { n: self.n, edges }
    }

    /// `F ∪ {e}`, rejected if it closes a circuit.
    pub fn with(&self, e: Edge) -> Result<Forest> {
        Forest::from_edges(self.n, self.edges.iter().copied().chain(std::iter::once(e)))
    }

    /// Vertex set of the component containing `v`.
    pub fn component_of(&self, v: u32) -> BTreeSet<u32> {
        let mut sets = DisjointSets::new(self.n);
        for e in &self.edges {
            sets.union(e.lo, e.hi);
        }
        let root = sets.find(v);
        (1..=self.n).filter(|&u| sets.find(u) == root).collect()
    }
}

/// A forest rooted at its component minima.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    parent: Vec<Option<u32>>,
    children: Vec<Vec<u32>>,
    roots: BTreeSet<u32>,
}

impl Orientation {
    fn new(f: &Forest) -> Self {
        let n = f.n as usize;
        let mut adj = vec![Vec::new(); n + 1];
        for e in &f.edges {
            adj[e.lo as usize].push(e.hi);
            adj[e.hi as usize].push(e.lo);
        }
        let mut parent = vec![None; n + 1];
        let mut children = vec![Vec::new(); n + 1];
        let mut seen = vec![false; n + 1];
        let mut roots = BTreeSet::new();
        // Scanning in increasing order makes each BFS start at a component minimum.
        for r in 1..=f.n {
            if seen[r as usize] {
                continue;
            }
            roots.insert(r);
            seen[r as usize] = true;
            let mut queue = VecDeque::from([r]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        parent[w as usize] = Some(v);
                        children[v as usize].push(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        for c in &mut children {
            c.sort_unstable();
        }
        Orientation { parent, children, roots }
    }

    pub fn n(&self) -> u32 {
        self.parent.len() as u32 - 1
    }

    pub fn roots(&self) -> &BTreeSet<u32> {
        &self.roots
    }

    pub fn parent(&self, v: u32) -> Option<u32> {
        self.parent[v as usize]
    }

    /// `C(v)`, sorted increasing.
    pub fn children(&self, v: u32) -> &[u32] {
        &self.children[v as usize]
    }

    /// `B(v)`: `v` together with all of its descendants.
    pub fn branch(&self, v: u32) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.insert(u);
            stack.extend_from_slice(self.children(u));
        }
        out
    }

    /// Vertices on the path from the root of `v`'s component down to `v`.
    pub fn path_from_root(&self, v: u32) -> Vec<u32> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}
