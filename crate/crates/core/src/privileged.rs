//! Relabeling with privileged labels.
//!
//! A restricted flip may only swap two labels when at least one of them is
//! privileged. On a path the left-to-right order of the non-privileged
//! labels can never change, and on a cycle their cyclic orientation cannot;
//! both give cheap "no" certificates. With at most two non-privileged labels
//! every connected graph on four or more vertices other than a path is
//! solvable, and [`privileged_transform`] builds a witness: rotations on a
//! cycle, and transpositions through a spanning tree that is not a path
//! otherwise.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_path::path_flip_sequence;
use crate::graph::Graph;
use crate::instance::{InstanceFile, Kind, LabelsJson};
use crate::labeling::{
    EdgeFlip, EdgeFlipSequence, EdgeLabeling, Flip, FlipSequence, VertexFlip, VertexFlipSequence,
    VertexLabeling,
};
use crate::oracle::ConfigurationSpace;
use crate::perm::Permutation;
use crate::transform::spanning_tree_transform;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivilegedInstance {
    pub kind: Kind,
    pub graph: Graph,
    /// Vertex labels, or edge labels indexed by edge number.
    pub from: Permutation,
    pub to: Permutation,
    pub privileged: BTreeSet<usize>,
    pub t: Option<usize>,
}

impl PrivilegedInstance {
    pub fn vertex(
        graph: Graph,
        from: VertexLabeling,
        to: VertexLabeling,
        privileged: impl IntoIterator<Item = usize>,
        t: Option<usize>,
    ) -> Result<Self> {
        Self::build(
            Kind::Vertex,
            graph,
            from.as_permutation().clone(),
            to.as_permutation().clone(),
            privileged,
            t,
        )
    }

    pub fn edge(
        graph: Graph,
        from: EdgeLabeling,
        to: EdgeLabeling,
        privileged: impl IntoIterator<Item = usize>,
        t: Option<usize>,
    ) -> Result<Self> {
        Self::build(
            Kind::Edge,
            graph,
            from.as_permutation().clone(),
            to.as_permutation().clone(),
            privileged,
            t,
        )
    }

    fn build(
        kind: Kind,
        graph: Graph,
        from: Permutation,
        to: Permutation,
        privileged: impl IntoIterator<Item = usize>,
        t: Option<usize>,
    ) -> Result<Self> {
        let k = match kind {
            Kind::Vertex => graph.n(),
            Kind::Edge => graph.m(),
        };
        for len in [from.len(), to.len()] {
            if len != k {
                return Err(Error::SizeMismatch {
                    expected: k,
                    actual: len,
                });
            }
        }
        let privileged: BTreeSet<usize> = privileged.into_iter().collect();
        if privileged.is_empty() {
            return Err(Error::InvalidArgument(
                "privileged label set is empty".into(),
            ));
        }
        if let Some(&bad) = privileged.iter().find(|&&x| x >= k) {
            return Err(Error::InvalidArgument(format!(
                "privileged label {bad} outside 0..{k}"
            )));
        }
        Ok(PrivilegedInstance {
            kind,
            graph,
            from,
            to,
            privileged,
            t,
        })
    }

    pub fn from_file(f: &InstanceFile) -> Result<Self> {
        let privileged = f.privileged.clone().ok_or_else(|| {
            Error::InvalidArgument("instance has no privileged label list".into())
        })?;
        let from = Permutation::new(f.from.values().to_vec())?;
        let to = Permutation::new(f.to.values().to_vec())?;
        Self::build(f.kind, f.graph.clone(), from, to, privileged, f.t)
    }

    pub fn to_file(&self) -> InstanceFile {
        let (from, to) = match self.kind {
            Kind::Vertex => (
                LabelsJson::Vertex {
                    labels: self.from.as_slice().to_vec(),
                },
                LabelsJson::Vertex {
                    labels: self.to.as_slice().to_vec(),
                },
            ),
            Kind::Edge => (
                LabelsJson::Edge {
                    edge_labels: self.from.as_slice().to_vec(),
                },
                LabelsJson::Edge {
                    edge_labels: self.to.as_slice().to_vec(),
                },
            ),
        };
        InstanceFile {
            kind: self.kind,
            graph: self.graph.clone(),
            from,
            to,
            t: self.t,
            privileged: Some(self.privileged.iter().copied().collect()),
        }
    }

    /// Number of labels (vertices, or edges for an edge instance).
    pub fn label_count(&self) -> usize {
        self.from.len()
    }

    pub fn is_privileged(&self, label: usize) -> bool {
        self.privileged.contains(&label)
    }

    pub fn non_privileged(&self) -> Vec<usize> {
        (0..self.label_count())
            .filter(|x| !self.privileged.contains(x))
            .collect()
    }

    /// The same question as a vertex instance: edge instances move to the
    /// line graph, where restricted edge flips are restricted vertex flips.
    pub fn as_vertex_instance(&self) -> PrivilegedInstance {
        match self.kind {
            Kind::Vertex => self.clone(),
            Kind::Edge => PrivilegedInstance {
                kind: Kind::Vertex,
                graph: self.graph.line_graph(),
                ..self.clone()
            },
        }
    }

    /// Restricted configuration space of this instance.
    pub fn space(&self) -> Result<ConfigurationSpace> {
        let space = match self.kind {
            Kind::Vertex => ConfigurationSpace::vertex(&self.graph),
            Kind::Edge => ConfigurationSpace::edge(&self.graph),
        };
        space.with_privileged(self.privileged.iter().copied())
    }
}

/// Whether `flip` is a legal restricted move from `current`. The flip must
/// be a structurally valid move of the instance's kind.
pub fn is_valid_restricted_flip<F: Flip>(
    inst: &PrivilegedInstance,
    current: &Permutation,
    flip: F,
) -> Result<bool> {
    let kind = match inst.kind {
        Kind::Vertex => "vertex",
        Kind::Edge => "edge",
    };
    if F::KIND != kind {
        return Err(Error::InvalidArgument(format!(
            "{} flip on a {kind} instance",
            F::KIND
        )));
    }
    if current.len() != inst.label_count() {
        return Err(Error::SizeMismatch {
            expected: inst.label_count(),
            actual: current.len(),
        });
    }
    flip.check(&inst.graph)?;
    let (a, b) = flip.pair();
    Ok(inst.is_privileged(current.image(a)) || inst.is_privileged(current.image(b)))
}

/// Replays `seq` from `inst.from` under the restricted rule and returns the
/// final labels. The first illegal flip is reported by index.
pub fn apply_restricted<F: Flip>(
    inst: &PrivilegedInstance,
    seq: &FlipSequence<F>,
) -> Result<Permutation> {
    let mut cur = inst.from.clone();
    for (index, &f) in seq.flips.iter().enumerate() {
        let ok = is_valid_restricted_flip(inst, &cur, f).map_err(|e| Error::InvalidFlip {
            index,
            reason: e.to_string(),
        })?;
        if !ok {
            return Err(Error::InvalidFlip {
                index,
                reason: "neither label is privileged".into(),
            });
        }
        let (a, b) = f.pair();
        cur.swap_images(a, b);
    }
    Ok(cur)
}

fn non_privileged_along(
    order: &[usize],
    labels: &Permutation,
    inst: &PrivilegedInstance,
) -> Vec<usize> {
    order
        .iter()
        .map(|&v| labels.image(v))
        .filter(|&x| !inst.is_privileged(x))
        .collect()
}

/// Necessary condition on a path: the non-privileged labels appear in the
/// same left-to-right order in `from` and `to`.
pub fn path_order_invariant(inst: &PrivilegedInstance) -> Result<bool> {
    let vi = inst.as_vertex_instance();
    let order = vi
        .graph
        .path_order()
        .ok_or_else(|| Error::InvalidGraph("graph is not a path".into()))?;
    Ok(non_privileged_along(&order, &vi.from, &vi) == non_privileged_along(&order, &vi.to, &vi))
}

/// Necessary condition on a cycle: the cyclic sequence of non-privileged
/// labels in `from` is a rotation of the one in `to`.
pub fn cycle_orientation_invariant(inst: &PrivilegedInstance) -> Result<bool> {
    let vi = inst.as_vertex_instance();
    let order = vi
        .graph
        .cycle_order()
        .ok_or_else(|| Error::InvalidGraph("graph is not a cycle".into()))?;
    let a = non_privileged_along(&order, &vi.from, &vi);
    let b = non_privileged_along(&order, &vi.to, &vi);
    if a.is_empty() {
        return Ok(true);
    }
    let Some(shift) = b.iter().position(|&x| x == a[0]) else {
        return Ok(false);
    };
    Ok((0..a.len()).all(|i| a[i] == b[(i + shift) % b.len()]))
}

/// Labels and flips of a tree-restricted construction in progress.
struct Work<'a> {
    tree: &'a Graph,
    labels: Vec<usize>,
    privileged: Vec<bool>,
    seq: VertexFlipSequence,
}

impl<'a> Work<'a> {
    fn new(tree: &'a Graph, l: &VertexLabeling, privileged: &BTreeSet<usize>) -> Result<Self> {
        if l.len() != tree.n() {
            return Err(Error::SizeMismatch {
                expected: tree.n(),
                actual: l.len(),
            });
        }
        Ok(Work {
            tree,
            labels: l.labels().to_vec(),
            privileged: (0..l.len()).map(|x| privileged.contains(&x)).collect(),
            seq: VertexFlipSequence::default(),
        })
    }

    fn free(&self, v: usize) -> bool {
        self.privileged[self.labels[v]]
    }

    fn path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        if u >= self.tree.n() || v >= self.tree.n() {
            return Err(Error::InvalidArgument(format!(
                "vertex pair ({u}, {v}) outside 0..{}",
                self.tree.n()
            )));
        }
        self.tree.shortest_path(u, v).ok_or(Error::Disconnected)
    }

    fn flip(&mut self, a: usize, b: usize) {
        debug_assert!(
            self.free(a) || self.free(b),
            "illegal restricted flip ({a}, {b})"
        );
        self.labels.swap(a, b);
        self.seq.push(VertexFlip(a, b));
    }

    /// `SW(u, v)`: the label at `u` walks to `v`, then the displaced label
    /// walks back; `2d - 1` flips for `d = dist(u, v)`.
    fn sw(&mut self, u: usize, v: usize) -> Result<()> {
        let p = self.path(u, v)?;
        let blocked = p.iter().filter(|&&x| !self.free(x)).count();
        if blocked >= 2 {
            return Err(Error::InvalidArgument(format!(
                "path from {u} to {v} carries {blocked} non-privileged labels"
            )));
        }
        let d = p.len() - 1;
        for i in 0..d {
            self.flip(p[i], p[i + 1]);
        }
        for i in (0..d.saturating_sub(1)).rev() {
            self.flip(p[i], p[i + 1]);
        }
        Ok(())
    }

    /// Transposes the labels at `u` and `v` with restricted flips, assuming
    /// at most two non-privileged labels and a tree that is not a path.
    fn swap(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Ok(());
        }
        let p = self.path(u, v)?;
        let blocked: Vec<usize> = p.iter().copied().filter(|&x| !self.free(x)).collect();
        if blocked.len() <= 1 {
            return self.sw(u, v);
        }
        let (x, y) = (blocked[0], blocked[1]);
        match (x == u, y == v) {
            (true, true) => self.swap_both_ends(u, v, &p),
            (false, false) => {
                self.sw(u, x)?;
                self.sw(x, v)?;
                self.sw(u, x)
            }
            // One non-privileged label at an end, the other inside: conjugate
            // by a swap with the inner one so both end up at the ends.
            (true, false) => {
                self.swap(y, v)?;
                self.swap(u, y)?;
                self.swap(y, v)
            }
            (false, true) => {
                self.swap(u, x)?;
                self.swap(x, v)?;
                self.swap(u, x)
            }
        }
    }

    /// Both non-privileged labels sit on `u` and `v`: route them through the
    /// ends of a maximal path `P*` and park one on a branch off it.
    fn swap_both_ends(&mut self, u: usize, v: usize, p: &[usize]) -> Result<()> {
        let u_end = farthest_avoiding(self.tree, u, p[1]);
        let v_end = farthest_avoiding(self.tree, v, p[p.len() - 2]);
        let star = self.path(u_end, v_end)?;
        let on_star: BTreeSet<usize> = star.iter().copied().collect();
        let w = star[1..star.len() - 1]
            .iter()
            .copied()
            .filter(|&w| self.tree.degree(w) >= 3)
            .min()
            .ok_or_else(|| Error::InvalidGraph("tree is a path".into()))?;
        let w_prime = self
            .tree
            .neighbors(w)
            .iter()
            .copied()
            .find(|x| !on_star.contains(x))
            .expect("a maximal path leaves no degree-3 vertex without an off-path neighbour");
        self.sw(u, u_end)?;
        self.sw(v, v_end)?;
        self.sw(u_end, w_prime)?;
        self.sw(u_end, v_end)?;
        self.sw(v_end, w_prime)?;
        self.sw(u, u_end)?;
        self.sw(v, v_end)
    }
}

/// Farthest vertex from `start` in the part of the tree not entered through
/// `blocked`; lowest index on ties.
fn farthest_avoiding(tree: &Graph, start: usize, blocked: usize) -> usize {
    let mut dist = vec![usize::MAX; tree.n()];
    dist[start] = 0;
    dist[blocked] = 0;
    let mut queue = VecDeque::from([start]);
    let mut best = start;
    while let Some(x) = queue.pop_front() {
        if dist[x] > dist[best] || (dist[x] == dist[best] && x < best) {
            best = x;
        }
        for &y in tree.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    best
}

/// `SW(u, v)` on a tree: exactly `2·dist(u, v) - 1` restricted flips that
/// transpose the labels at `u` and `v` and restore everything else. At most
/// one label on the `u - v` path may be non-privileged.
pub fn sw_swap(
    tree: &Graph,
    u: usize,
    v: usize,
    l: &VertexLabeling,
    privileged: &BTreeSet<usize>,
) -> Result<VertexFlipSequence> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    let mut w = Work::new(tree, l, privileged)?;
    w.sw(u, v)?;
    Ok(w.seq)
}

/// Restricted flips transposing the labels at `u` and `v` on a tree that is
/// not a path, with at most two non-privileged labels in total.
pub fn tree_swap_sequence(
    tree: &Graph,
    u: usize,
    v: usize,
    l: &VertexLabeling,
    privileged: &BTreeSet<usize>,
) -> Result<VertexFlipSequence> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    if tree.is_path() {
        return Err(Error::InvalidGraph(
            "tree swaps need a tree that is not a path".into(),
        ));
    }
    let mut w = Work::new(tree, l, privileged)?;
    let blocked = w.privileged.iter().filter(|&&p| !p).count();
    if blocked > 2 {
        return Err(Error::InvalidArgument(format!(
            "{blocked} non-privileged labels; at most two supported"
        )));
    }
    w.swap(u, v)?;
    Ok(w.seq)
}

/// A restricted flip sequence taking `inst.from` to `inst.to`, with no
/// minimality claim. Vertex instances only; see [`privileged_witness`] for
/// either kind.
pub fn privileged_transform(inst: &PrivilegedInstance) -> Result<VertexFlipSequence> {
    if inst.kind != Kind::Vertex {
        return Err(Error::InvalidArgument("expected a vertex instance".into()));
    }
    let g = &inst.graph;
    g.require_connected()?;
    let from = VertexLabeling::from_permutation(inst.from.clone());
    let to = VertexLabeling::from_permutation(inst.to.clone());
    let blocked = inst.non_privileged();

    if g.is_path() {
        if !path_order_invariant(inst)? {
            return Err(Error::Unsolvable(
                "non-privileged labels are out of order on a path".into(),
            ));
        }
        // bubble steps only swap inverted pairs, and no two non-privileged
        // labels are inverted
        let order = g.path_order().expect("checked above");
        return Ok(sort_along(&order, &from, &to));
    }
    if blocked.len() <= 1 {
        return spanning_tree_transform(g, &from, &to);
    }
    if blocked.len() > 2 {
        if g.is_cycle() && !cycle_orientation_invariant(inst)? {
            return Err(Error::Unsolvable(
                "non-privileged labels change orientation on a cycle".into(),
            ));
        }
        return Err(Error::InvalidArgument(format!(
            "{} non-privileged labels; constructive witnesses need at most two",
            blocked.len()
        )));
    }
    if g.is_cycle() {
        return Ok(rotate_on_cycle(inst, &from, &to));
    }
    let tree = g.spanning_tree_not_path()?;
    let mut w = Work::new(&tree, &from, &inst.privileged)?;
    for v in 0..g.n() {
        let want = to.label(v);
        if w.labels[v] != want {
            let u = w
                .labels
                .iter()
                .position(|&x| x == want)
                .expect("labels form a permutation");
            w.swap(u, v)?;
        }
    }
    Ok(w.seq)
}

/// Sorts `from` into `to` along a vertex order whose consecutive vertices
/// are adjacent, using only swaps of inverted pairs.
fn sort_along(order: &[usize], from: &VertexLabeling, to: &VertexLabeling) -> VertexFlipSequence {
    let read = |l: &VertexLabeling| {
        VertexLabeling::new(order.iter().map(|&v| l.label(v)).collect())
            .expect("reordering a labeling keeps it a permutation")
    };
    path_flip_sequence(&read(from), &read(to))
        .expect("same length")
        .iter()
        .map(|f| VertexFlip(order[f.0], order[f.1]))
        .collect()
}

/// Two non-privileged labels on a cycle: walk each home around the cycle,
/// then sort the rest along the cycle with one edge removed.
fn rotate_on_cycle(
    inst: &PrivilegedInstance,
    from: &VertexLabeling,
    to: &VertexLabeling,
) -> VertexFlipSequence {
    let order = inst.graph.cycle_order().expect("caller checked the cycle");
    let n = order.len();
    let mut at: Vec<usize> = order.iter().map(|&v| from.label(v)).collect();
    let goal: Vec<usize> = order.iter().map(|&v| to.label(v)).collect();
    let blocked = inst.non_privileged();
    let (x, y) = (blocked[0], blocked[1]);
    let mut seq = VertexFlipSequence::default();
    let mut flip = |at: &mut Vec<usize>, i: usize, j: usize| {
        at.swap(i, j);
        seq.push(VertexFlip(order[i], order[j]));
    };
    let pos = |at: &[usize], label: usize| at.iter().position(|&z| z == label).unwrap();
    // steps from a to b going in direction dir, and whether c lies on the way
    let hits = |a: usize, b: usize, c: usize, forward: bool| {
        let mut k = a;
        while k != b {
            k = if forward {
                (k + 1) % n
            } else {
                (k + n - 1) % n
            };
            if k == c {
                return true;
            }
        }
        false
    };

    let target_x = pos(&goal, x);
    let forward = !hits(pos(&at, x), target_x, pos(&at, y), true)
        || hits(pos(&at, x), target_x, pos(&at, y), false);
    let step = |k: usize| {
        if forward {
            (k + 1) % n
        } else {
            (k + n - 1) % n
        }
    };
    while pos(&at, x) != target_x {
        let k = pos(&at, x);
        let next = step(k);
        if at[next] == y {
            flip(&mut at, next, step(next));
        }
        flip(&mut at, k, next);
    }

    let target_y = pos(&goal, y);
    let forward = !hits(pos(&at, y), target_y, target_x, true);
    while pos(&at, y) != target_y {
        let k = pos(&at, y);
        let next = if forward {
            (k + 1) % n
        } else {
            (k + n - 1) % n
        };
        flip(&mut at, k, next);
    }

    let cur = VertexLabeling::new(
        (0..n)
            .map(|v| at[order.iter().position(|&o| o == v).unwrap()])
            .collect(),
    )
    .expect("rotations keep a permutation");
    seq.extend(sort_along(&order, &cur, to));
    seq
}

/// A witness sequence for either instance kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Vertex(VertexFlipSequence),
    Edge(EdgeFlipSequence),
}

impl Witness {
    pub fn len(&self) -> usize {
        match self {
            Witness::Vertex(s) => s.len(),
            Witness::Edge(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Replays the witness under the restricted rule of `inst`.
    pub fn replay(&self, inst: &PrivilegedInstance) -> Result<Permutation> {
        match self {
            Witness::Vertex(s) => apply_restricted(inst, s),
            Witness::Edge(s) => apply_restricted(inst, s),
        }
    }
}

/// [`privileged_transform`] for either kind; edge instances are solved on
/// the line graph and translated back to edge flips.
pub fn privileged_witness(inst: &PrivilegedInstance) -> Result<Witness> {
    let seq = privileged_transform(&inst.as_vertex_instance())?;
    Ok(match inst.kind {
        Kind::Vertex => Witness::Vertex(seq),
        Kind::Edge => Witness::Edge(seq.iter().map(|f| EdgeFlip(f.0, f.1)).collect()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Theorem,
    Invariant,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Yes(Method),
    No(Method),
    /// No cheap certificate either way; ask the oracle.
    Unknown,
}

/// Solvability without a bound on the number of flips, from structure
/// alone. Edge instances are decided on the line graph.
pub fn solvable(inst: &PrivilegedInstance) -> Result<Decision> {
    if inst.kind == Kind::Edge {
        return edge_privileged_solvable(inst);
    }
    decide(inst)
}

/// Edge-labeled instance, decided as the vertex instance on the line graph.
pub fn edge_privileged_solvable(inst: &PrivilegedInstance) -> Result<Decision> {
    if inst.kind != Kind::Edge {
        return Err(Error::InvalidArgument("expected an edge instance".into()));
    }
    inst.graph.require_connected()?;
    decide(&inst.as_vertex_instance())
}

fn decide(inst: &PrivilegedInstance) -> Result<Decision> {
    let g = &inst.graph;
    g.require_connected()?;
    let blocked = inst.non_privileged().len();
    if blocked <= 1 {
        return Ok(Decision::Yes(Method::Theorem));
    }
    if g.is_path() {
        return Ok(if path_order_invariant(inst)? {
            Decision::Unknown
        } else {
            Decision::No(Method::Invariant)
        });
    }
    if blocked == 2 && g.n() >= 4 {
        return Ok(Decision::Yes(Method::Theorem));
    }
    if g.is_cycle() && blocked >= 3 && !cycle_orientation_invariant(inst)? {
        return Ok(Decision::No(Method::Invariant));
    }
    Ok(Decision::Unknown)
}

/// A settled answer, with a witness sequence for "yes".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub answer: bool,
    pub method: Method,
    pub witness: Option<Witness>,
}

/// Answers the instance: unbounded when `inst.t` is `None`, otherwise
/// whether `t` or fewer restricted flips suffice. Structural answers are
/// used where available and the oracle (limited to `capacity` states)
/// settles the rest. Past capacity a path instance whose order invariant
/// holds is answered by its constructive witness.
pub fn resolve(inst: &PrivilegedInstance, capacity: u128) -> Result<Verdict> {
    let decision = solvable(inst)?;
    if let Decision::No(method) = decision {
        return Ok(Verdict {
            answer: false,
            method,
            witness: None,
        });
    }
    let space = inst.space()?.with_capacity(capacity);
    let in_reach = space.state_count() <= capacity;

    if inst.t.is_none() {
        if let Decision::Yes(method) = decision {
            let witness = privileged_witness(inst).or_else(|_| oracle_witness(inst, &space))?;
            return Ok(Verdict {
                answer: true,
                method,
                witness: Some(witness),
            });
        }
    }
    if in_reach {
        let witness = oracle_witness(inst, &space);
        return match witness {
            Ok(w) if inst.t.is_none_or(|t| w.len() <= t) => Ok(Verdict {
                answer: true,
                method: Method::Oracle,
                witness: Some(w),
            }),
            Ok(_) | Err(Error::Unsolvable(_)) => Ok(Verdict {
                answer: false,
                method: Method::Oracle,
                witness: None,
            }),
            Err(e) => Err(e),
        };
    }
    // past capacity: only a short enough constructive witness settles it
    let method = match decision {
        Decision::Yes(m) => m,
        _ => Method::Invariant,
    };
    if let Ok(w) = privileged_witness(inst) {
        if inst.t.is_none_or(|t| w.len() <= t) {
            return Ok(Verdict {
                answer: true,
                method,
                witness: Some(w),
            });
        }
    }
    Err(Error::CapacityExceeded {
        states: space.state_count(),
        limit: capacity,
    })
}

fn oracle_witness(inst: &PrivilegedInstance, space: &ConfigurationSpace) -> Result<Witness> {
    let path = space
        .shortest_path(&inst.from, &inst.to)?
        .ok_or_else(|| Error::Unsolvable("target not in the reachable component".into()))?;
    Ok(match inst.kind {
        Kind::Vertex => Witness::Vertex(path.into_iter().map(|(a, b)| VertexFlip(a, b)).collect()),
        Kind::Edge => Witness::Edge(path.into_iter().map(|(a, b)| EdgeFlip(a, b)).collect()),
    })
}

/// A sliding-puzzle question as a privileged instance: the `side × side`
/// grid (row-major cells), boards listing the tile on each cell with
/// `side² - 1` as the blank, the blank as the only privileged label, and
/// bound `k`.
pub fn puzzle_instance(
    side: usize,
    b1: &[usize],
    b2: &[usize],
    k: usize,
) -> Result<PrivilegedInstance> {
    if side == 0 {
        return Err(Error::InvalidArgument("board side must be positive".into()));
    }
    let cells = side * side;
    let board = |b: &[usize]| -> Result<VertexLabeling> {
        if b.len() != cells {
            return Err(Error::SizeMismatch {
                expected: cells,
                actual: b.len(),
            });
        }
        VertexLabeling::new(b.to_vec())
    };
    PrivilegedInstance::vertex(
        Graph::grid(side)?,
        board(b1)?,
        board(b2)?,
        [cells - 1],
        Some(k),
    )
}
