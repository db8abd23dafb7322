//! Simple undirected graphs with an indexed edge list.
//!
//! Edge order is significant: edge labelings and edge flips refer to edges
//! by their position in [`Graph::edges`]. Endpoints are normalised so that
//! `u < v`, but the list itself is kept in insertion order.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.n, r.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Named graph families with canonical vertex indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Star,
    Cycle,
    Grid,
    Complete,
    RandomConnected,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => Family::Path,
            "star" => Family::Star,
            "cycle" => Family::Cycle,
            "grid" => Family::Grid,
            "complete" => Family::Complete,
            "random_connected" | "random-connected" | "random" => Family::RandomConnected,
            other => return Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
        })
    }
}

impl Graph {
    /// Builds a simple graph; rejects self-loops, duplicate edges and
    /// out-of-range endpoints. Connectivity is not required here.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{a}, {b}}} has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {a}")));
            }
            let key = (a.min(b), a.max(b));
            if index.insert(key, list.len()).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {{{}, {}}}",
                    key.0, key.1
                )));
            }
            list.push(key);
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adjacency,
            index,
        })
    }

    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("path needs n >= 1".into()));
        }
        Graph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// `K_{1,n-1}` with center 0.
    pub fn star(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("star needs n >= 1".into()));
        }
        Graph::new(n, (1..n).map(|i| (0, i)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument("cycle needs n >= 3".into()));
        }
        Graph::new(n, (1..n).map(|i| (i - 1, i)).chain(Some((0, n - 1))))
    }

    /// `side × side` mesh, row-major.
    pub fn grid(side: usize) -> Result<Self> {
        if side == 0 {
            return Err(Error::InvalidArgument("grid needs side >= 1".into()));
        }
        let mut edges = Vec::new();
        for r in 0..side {
            for c in 0..side {
                let v = r * side + c;
                if c + 1 < side {
                    edges.push((v, v + 1));
                }
                if r + 1 < side {
                    edges.push((v, v + side));
                }
            }
        }
        Graph::new(side * side, edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("complete graph needs n >= 1".into()));
        }
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Erdős–Rényi `G(n, p)` resampled until connected.
    pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("random graph needs n >= 1".into()));
        }
        if !(p > 0.0 && p <= 1.0) && n > 1 {
            return Err(Error::InvalidArgument(format!(
                "edge probability {p} not in (0, 1]"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges)?;
            if g.is_connected() {
                return Ok(g);
            }
        }
    }

    /// Default edge density for [`Family::RandomConnected`]: a little above
    /// the connectivity threshold `ln n / n`.
    pub fn default_density(n: usize) -> f64 {
        if n <= 2 {
            1.0
        } else {
            (2.0 * (n as f64).ln() / n as f64).min(1.0)
        }
    }

    /// `n` is the vertex count, except for [`Family::Grid`] where it is the
    /// side length.
    pub fn make_family(family: Family, n: usize, seed: Option<u64>) -> Result<Self> {
        match family {
            Family::Path => Graph::path(n),
            Family::Star => Graph::star(n),
            Family::Cycle => Graph::cycle(n),
            Family::Grid => Graph::grid(n),
            Family::Complete => Graph::complete(n),
            Family::RandomConnected => {
                Graph::random_connected(n, Graph::default_density(n), seed.unwrap_or(0))
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn edges_share_endpoint(&self, e1: usize, e2: usize) -> bool {
        let (a, b) = self.edges[e1];
        let (c, d) = self.edges[e2];
        e1 != e2 && (a == c || a == d || b == c || b == d)
    }

    /// BFS hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() == self.n - 1 && self.is_connected()
    }

    /// A single vertex and a single edge both count as paths.
    pub fn is_path(&self) -> bool {
        if !self.is_tree() {
            return false;
        }
        if self.n == 1 {
            return true;
        }
        let leaves = (0..self.n).filter(|&v| self.degree(v) == 1).count();
        leaves == 2 && (0..self.n).all(|v| self.degree(v) <= 2)
    }

    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.is_connected() && (0..self.n).all(|v| self.degree(v) == 2)
    }

    /// Vertices of a path graph in order, starting at the lower-indexed end.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if !self.is_path() {
            return None;
        }
        let start = (0..self.n).find(|&v| self.degree(v) <= 1)?;
        Some(self.walk_from(start, None))
    }

    /// Vertices of a cycle graph in cyclic order, starting at 0 and heading
    /// to its smaller neighbour.
    pub fn cycle_order(&self) -> Option<Vec<usize>> {
        if !self.is_cycle() {
            return None;
        }
        let next = self.adjacency[0][0];
        let mut order = vec![0];
        order.extend(self.walk_from(next, Some(0)).into_iter().take(self.n - 1));
        Some(order)
    }

    fn walk_from(&self, start: usize, came_from: Option<usize>) -> Vec<usize> {
        let mut order = vec![start];
        let mut prev = came_from;
        let mut cur = start;
        while order.len() < self.n {
            let Some(&next) = self.adjacency[cur].iter().find(|&&w| Some(w) != prev) else {
                break;
            };
            prev = Some(cur);
            cur = next;
            order.push(cur);
        }
        order
    }

    /// Center of a star `K_{1,n-1}` (the lowest-indexed one when several
    /// vertices qualify, as for `n <= 2`).
    pub fn star_center(&self) -> Option<usize> {
        if !self.is_tree() {
            return None;
        }
        (0..self.n).find(|&v| self.degree(v) == self.n - 1)
    }

    /// BFS spanning tree rooted at 0, neighbours visited in index order.
    /// Tree edges are listed in discovery order.
    pub fn spanning_tree(&self) -> Result<Graph> {
        self.require_connected()?;
        let mut seen = vec![false; self.n];
        let mut edges = Vec::with_capacity(self.n.saturating_sub(1));
        let mut queue = VecDeque::new();
        if self.n > 0 {
            seen[0] = true;
            queue.push_back(0);
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    edges.push((u, w));
                    queue.push_back(w);
                }
            }
        }
        Graph::new(self.n, edges)
    }

    /// A spanning tree with a vertex of degree at least three: three edges at
    /// the lowest-indexed vertex of degree ≥ 3, then Kruskal over the
    /// remaining edges in index order.
    pub fn spanning_tree_not_path(&self) -> Result<Graph> {
        self.require_connected()?;
        let Some(hub) = (0..self.n).find(|&v| self.degree(v) >= 3) else {
            return Err(Error::InvalidGraph(
                "every spanning tree of a path or cycle is a path".into(),
            ));
        };
        let mut dsu = DisjointSets::new(self.n);
        let mut edges = Vec::with_capacity(self.n - 1);
        for &w in self.adjacency[hub].iter().take(3) {
            dsu.union(hub, w);
            edges.push((hub.min(w), hub.max(w)));
        }
        for &(u, v) in &self.edges {
            if dsu.union(u, v) {
                edges.push((u, v));
            }
        }
        Graph::new(self.n, edges)
    }

    /// Vertex removal order from repeatedly deleting the lowest-indexed leaf.
    /// Unlike the classic code this runs until every vertex is consumed.
    pub fn prufer_elimination_order(&self) -> Result<Vec<usize>> {
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        let mut degree: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n];
        let mut leaves: BTreeSet<usize> = (0..self.n).filter(|&v| degree[v] <= 1).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(leaf) = leaves.pop_first() {
            removed[leaf] = true;
            order.push(leaf);
            for &w in &self.adjacency[leaf] {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] <= 1 {
                        leaves.insert(w);
                    }
                }
            }
        }
        debug_assert_eq!(order.len(), self.n);
        Ok(order)
    }

    /// Line graph: vertex `i` is `self.edges()[i]`; two are adjacent when the
    /// original edges share an endpoint.
    pub fn line_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for i in 0..self.m() {
            for j in i + 1..self.m() {
                if self.edges_share_endpoint(i, j) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(self.m(), edges).expect("line graph is simple")
    }

    /// A shortest path from `u` to `v` (the unique path in a tree), as a
    /// vertex list including both ends. Ties go to the lowest-indexed parent.
    pub fn shortest_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        parent[v] = v;
        queue.push_back(v);
        while let Some(x) = queue.pop_front() {
            if x == u {
                break;
            }
            for &w in &self.adjacency[x] {
                if parent[w] == usize::MAX {
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        if parent[u] == usize::MAX {
            return None;
        }
        let mut path = vec![u];
        let mut x = u;
        while x != v {
            x = parent[x];
            path.push(x);
        }
        Some(path)
    }

    /// Relabels vertices: vertex `v` becomes `new_index[v]`. Edge order is
    /// preserved.
    pub fn renumbered(&self, new_index: &[usize]) -> Result<Graph> {
        if new_index.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                actual: new_index.len(),
            });
        }
        Graph::new(
            self.n,
            self.edges
                .iter()
                .map(|&(u, v)| (new_index[u], new_index[v])),
        )
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
