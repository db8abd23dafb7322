//! Breadth-first search over the configuration space: the graph whose nodes
//! are all labelings and whose edges are single legal flips.
//!
//! States are packed by their Lehmer-code rank, so a space on `n` positions
//! has exactly `n!` slots. Every public entry point refuses to run when `n!`
//! exceeds the space's capacity ([`DEFAULT_CAPACITY`] unless raised).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{EdgeFlip, EdgeFlipSequence, VertexFlip, VertexFlipSequence};
use crate::perm::Permutation;

/// `10!` states.
pub const DEFAULT_CAPACITY: u128 = 3_628_800;

const UNSEEN: u16 = u16::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlipRule {
    Unrestricted,
    /// A flip is legal only if at least one of the two swapped labels is in
    /// the set.
    Privileged(BTreeSet<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Vertex,
    /// Labels sit on edges; searched as vertex labelings of the line graph.
    Edge,
}

#[derive(Debug, Clone)]
pub struct ConfigurationSpace {
    /// Graph whose vertices carry the labels (the line graph in edge mode).
    positions: Graph,
    rule: FlipRule,
    mode: Mode,
    capacity: u128,
    privileged_mask: Vec<bool>,
    factorials: Vec<u64>,
}

impl ConfigurationSpace {
    pub fn vertex(g: &Graph) -> Self {
        Self::build(g.clone(), Mode::Vertex)
    }

    pub fn edge(g: &Graph) -> Self {
        Self::build(g.line_graph(), Mode::Edge)
    }

    fn build(positions: Graph, mode: Mode) -> Self {
        let n = positions.n();
        let mut factorials = vec![1u64; n + 1];
        for k in 1..=n {
            factorials[k] = factorials[k - 1].saturating_mul(k as u64);
        }
        ConfigurationSpace {
            privileged_mask: vec![true; n],
            positions,
            rule: FlipRule::Unrestricted,
            mode,
            capacity: DEFAULT_CAPACITY,
            factorials,
        }
    }

    pub fn with_privileged(mut self, labels: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = labels.into_iter().collect();
        let n = self.positions.n();
        if set.is_empty() {
            return Err(Error::InvalidArgument(
                "privileged label set is empty".into(),
            ));
        }
        if let Some(&bad) = set.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidArgument(format!(
                "privileged label {bad} outside 0..{n}"
            )));
        }
        self.privileged_mask = (0..n).map(|x| set.contains(&x)).collect();
        self.rule = FlipRule::Privileged(set);
        Ok(self)
    }

    pub fn with_capacity(mut self, capacity: u128) -> Self {
        self.capacity = capacity;
        self
    }

    pub fn rule(&self) -> &FlipRule {
        &self.rule
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of labeled positions (vertices, or edges in edge mode).
    pub fn positions(&self) -> usize {
        self.positions.n()
    }

    pub fn state_count(&self) -> u128 {
        (1..=self.positions.n() as u128).product()
    }

    fn check_capacity(&self) -> Result<()> {
        let states = self.state_count();
        if states > self.capacity {
            Err(Error::CapacityExceeded {
                states,
                limit: self.capacity,
            })
        } else {
            Ok(())
        }
    }

    fn check_state(&self, p: &Permutation) -> Result<()> {
        if p.len() == self.positions.n() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: self.positions.n(),
                actual: p.len(),
            })
        }
    }

    /// Lehmer-code rank; identity ranks 0.
    pub fn rank(&self, labels: &[usize]) -> u64 {
        let n = labels.len();
        let mut r = 0u64;
        for i in 0..n {
            let smaller = labels[i + 1..].iter().filter(|&&x| x < labels[i]).count() as u64;
            r += smaller * self.factorials[n - 1 - i];
        }
        r
    }

    pub fn unrank(&self, mut r: u64, out: &mut Vec<usize>) {
        let n = self.positions.n();
        let mut pool: Vec<usize> = (0..n).collect();
        out.clear();
        for i in 0..n {
            let f = self.factorials[n - 1 - i];
            let k = (r / f) as usize;
            r %= f;
            out.push(pool.remove(k));
        }
    }

    fn legal(&self, labels: &[usize], u: usize, v: usize) -> bool {
        self.privileged_mask[labels[u]] || self.privileged_mask[labels[v]]
    }

    /// Calls `visit(edge_index, neighbour_rank)` for every legal flip out of
    /// `labels`. `labels` is restored before returning.
    fn for_each_neighbor(&self, labels: &mut [usize], mut visit: impl FnMut(usize, u64)) {
        for (e, &(u, v)) in self.positions.edges().iter().enumerate() {
            if !self.legal(labels, u, v) {
                continue;
            }
            labels.swap(u, v);
            visit(e, self.rank(labels));
            labels.swap(u, v);
        }
    }

    fn has_legal_move(&self, labels: &[usize]) -> bool {
        self.positions
            .edges()
            .iter()
            .any(|&(u, v)| self.legal(labels, u, v))
    }

    fn run_bfs(&self, from: &Permutation, stop_at: Option<u64>, track_parents: bool) -> Bfs {
        let size = self.state_count() as usize;
        let mut dist = vec![UNSEEN; size];
        let mut parent = if track_parents {
            vec![UNSEEN; size]
        } else {
            Vec::new()
        };
        let start = self.rank(from.as_slice());
        dist[start as usize] = 0;
        let mut queue = VecDeque::from([start]);
        let mut buf = Vec::with_capacity(self.positions.n());
        while let Some(r) = queue.pop_front() {
            if Some(r) == stop_at {
                break;
            }
            let d = dist[r as usize];
            self.unrank(r, &mut buf);
            self.for_each_neighbor(&mut buf, |e, next| {
                let slot = next as usize;
                if dist[slot] == UNSEEN {
                    dist[slot] = d + 1;
                    if track_parents {
                        parent[slot] = e as u16;
                    }
                    queue.push_back(next);
                }
            });
        }
        Bfs { dist, parent }
    }

    /// Minimum number of legal flips from `from` to `to`; `None` when `to`
    /// is unreachable (only possible under a privileged rule).
    pub fn bfs_distance(&self, from: &Permutation, to: &Permutation) -> Result<Option<usize>> {
        self.check_capacity()?;
        self.check_state(from)?;
        self.check_state(to)?;
        let target = self.rank(to.as_slice());
        let bfs = self.run_bfs(from, Some(target), false);
        Ok(decode(bfs.dist[target as usize]))
    }

    /// A shortest legal flip sequence, as pairs of positions of the searched
    /// graph (vertices, or edge indices in edge mode).
    pub fn shortest_path(
        &self,
        from: &Permutation,
        to: &Permutation,
    ) -> Result<Option<Vec<(usize, usize)>>> {
        self.check_capacity()?;
        self.check_state(from)?;
        self.check_state(to)?;
        let target = self.rank(to.as_slice());
        let bfs = self.run_bfs(from, Some(target), true);
        if bfs.dist[target as usize] == UNSEEN {
            return Ok(None);
        }
        let start = self.rank(from.as_slice());
        let mut labels = to.as_slice().to_vec();
        let mut r = target;
        let mut flips = Vec::new();
        while r != start {
            let (u, v) = self.positions.edge(bfs.parent[r as usize] as usize);
            flips.push((u, v));
            labels.swap(u, v);
            r = self.rank(&labels);
        }
        flips.reverse();
        Ok(Some(flips))
    }

    pub fn shortest_vertex_sequence(
        &self,
        from: &Permutation,
        to: &Permutation,
    ) -> Result<Option<VertexFlipSequence>> {
        if self.mode != Mode::Vertex {
            return Err(Error::InvalidArgument("space is in edge mode".into()));
        }
        Ok(self
            .shortest_path(from, to)?
            .map(|p| p.into_iter().map(|(u, v)| VertexFlip(u, v)).collect()))
    }

    pub fn shortest_edge_sequence(
        &self,
        from: &Permutation,
        to: &Permutation,
    ) -> Result<Option<EdgeFlipSequence>> {
        if self.mode != Mode::Edge {
            return Err(Error::InvalidArgument("space is in vertex mode".into()));
        }
        Ok(self
            .shortest_path(from, to)?
            .map(|p| p.into_iter().map(|(a, b)| EdgeFlip(a, b)).collect()))
    }

    /// Full single-source distance map.
    pub fn distances_from(&self, from: &Permutation) -> Result<DistanceMap> {
        self.check_capacity()?;
        self.check_state(from)?;
        let bfs = self.run_bfs(from, None, false);
        Ok(DistanceMap {
            dist: bfs.dist,
            space: self.clone(),
        })
    }

    /// Whether some walk of exactly `t` legal flips leads from `from` to
    /// `to`. Searches states paired with the parity of the walk length; a
    /// shortest walk of the right parity can then be padded by undoing and
    /// redoing any legal flip at the end.
    pub fn reachable_in_exactly(
        &self,
        from: &Permutation,
        to: &Permutation,
        t: usize,
    ) -> Result<bool> {
        self.check_capacity()?;
        self.check_state(from)?;
        self.check_state(to)?;
        let size = self.state_count() as usize;
        let mut dist = vec![UNSEEN; 2 * size];
        let start = self.rank(from.as_slice()) as usize;
        dist[2 * start] = 0;
        let mut queue = VecDeque::from([(start as u64, 0usize)]);
        let mut buf = Vec::with_capacity(self.positions.n());
        while let Some((r, parity)) = queue.pop_front() {
            let d = dist[2 * r as usize + parity];
            self.unrank(r, &mut buf);
            self.for_each_neighbor(&mut buf, |_, next| {
                let slot = 2 * next as usize + (parity ^ 1);
                if dist[slot] == UNSEEN {
                    dist[slot] = d + 1;
                    queue.push_back((next, parity ^ 1));
                }
            });
        }
        let target = self.rank(to.as_slice()) as usize;
        let Some(d) = decode(dist[2 * target + t % 2]) else {
            return Ok(false);
        };
        Ok(t == d || (t > d && self.has_legal_move(to.as_slice())))
    }

    pub fn component(&self, from: &Permutation, list_cap: usize) -> Result<ComponentSummary> {
        let map = self.distances_from(from)?;
        let mut states = Vec::new();
        let mut buf = Vec::new();
        for (r, &d) in map.dist.iter().enumerate() {
            if states.len() >= list_cap {
                break;
            }
            if d != UNSEEN {
                self.unrank(r as u64, &mut buf);
                states.push(buf.clone());
            }
        }
        Ok(ComponentSummary {
            size: map.reached(),
            total: self.state_count(),
            states,
        })
    }

    /// Largest distance between two labelings. Unrestricted spaces are Cayley
    /// graphs, hence vertex-transitive, so the eccentricity of the identity
    /// is the diameter.
    pub fn diameter(&self) -> Result<usize> {
        if self.rule != FlipRule::Unrestricted {
            return Err(Error::InvalidArgument(
                "diameter is only defined here for unrestricted spaces; use eccentricity".into(),
            ));
        }
        self.eccentricity(&Permutation::identity(self.positions.n()))
    }

    pub fn eccentricity(&self, from: &Permutation) -> Result<usize> {
        Ok(self.distances_from(from)?.eccentricity())
    }

    pub fn distance_distribution(&self, from: &Permutation) -> Result<BTreeMap<usize, usize>> {
        Ok(self.distances_from(from)?.histogram())
    }

    /// Precomputed neighbour ranks for every state, for callers that run
    /// many searches over one space.
    pub fn transition_table(&self) -> Result<TransitionTable> {
        self.check_capacity()?;
        let size = self.state_count() as usize;
        let mut offsets = Vec::with_capacity(size + 1);
        let mut targets = Vec::new();
        let mut buf = Vec::with_capacity(self.positions.n());
        offsets.push(0u32);
        for r in 0..size as u64 {
            self.unrank(r, &mut buf);
            self.for_each_neighbor(&mut buf, |_, next| targets.push(next as u32));
            offsets.push(targets.len() as u32);
        }
        Ok(TransitionTable {
            offsets,
            targets,
            space: self.clone(),
        })
    }
}

struct Bfs {
    dist: Vec<u16>,
    parent: Vec<u16>,
}

fn decode(d: u16) -> Option<usize> {
    (d != UNSEEN).then_some(d as usize)
}

/// Distances from one source to every state of a space.
#[derive(Debug, Clone)]
pub struct DistanceMap {
    dist: Vec<u16>,
    space: ConfigurationSpace,
}

impl DistanceMap {
    pub fn get(&self, to: &Permutation) -> Option<usize> {
        decode(self.dist[self.space.rank(to.as_slice()) as usize])
    }

    pub fn get_rank(&self, rank: u64) -> Option<usize> {
        decode(self.dist[rank as usize])
    }

    pub fn reached(&self) -> usize {
        self.dist.iter().filter(|&&d| d != UNSEEN).count()
    }

    pub fn eccentricity(&self) -> usize {
        self.dist
            .iter()
            .filter(|&&d| d != UNSEEN)
            .max()
            .copied()
            .unwrap_or(0) as usize
    }

    /// Distance → number of states at that distance.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &d in &self.dist {
            if d != UNSEEN {
                *h.entry(d as usize).or_default() += 1;
            }
        }
        h
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    pub size: usize,
    pub total: u128,
    /// Reachable states in rank order, truncated to the requested cap.
    pub states: Vec<Vec<usize>>,
}

/// Compressed adjacency of a configuration space, indexed by state rank.
#[derive(Debug, Clone)]
pub struct TransitionTable {
    offsets: Vec<u32>,
    targets: Vec<u32>,
    space: ConfigurationSpace,
}

impl TransitionTable {
    pub fn space(&self) -> &ConfigurationSpace {
        &self.space
    }

    pub fn state_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, rank: u64) -> &[u32] {
        let r = rank as usize;
        &self.targets[self.offsets[r] as usize..self.offsets[r + 1] as usize]
    }

    pub fn distances_from_rank(&self, start: u64) -> DistanceMap {
        let mut dist = vec![UNSEEN; self.state_count()];
        dist[start as usize] = 0;
        let mut queue = VecDeque::from([start as u32]);
        while let Some(r) = queue.pop_front() {
            let d = dist[r as usize];
            for &next in self.neighbors(r as u64) {
                if dist[next as usize] == UNSEEN {
                    dist[next as usize] = d + 1;
                    queue.push_back(next);
                }
            }
        }
        DistanceMap {
            dist,
            space: self.space.clone(),
        }
    }

    pub fn distances_from(&self, from: &Permutation) -> Result<DistanceMap> {
        self.space.check_state(from)?;
        Ok(self.distances_from_rank(self.space.rank(from.as_slice())))
    }
}
