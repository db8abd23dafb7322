//! Relabeling arbitrary connected graphs.
//!
//! [`spanning_tree_transform`] is the constructive bound: fix a spanning
//! tree, then settle target vertices in lowest-leaf elimination order, each
//! time routing the wanted label along the residual tree and freezing the
//! settled leaf. Iteration `k` costs at most `n - k - 1` flips, so the total
//! never exceeds `n(n-1)/2`.
//!
//! Exact distances on general graphs (`p_G`) come from the oracle and are
//! only available within its capacity.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{relative_vertex, VertexFlip, VertexFlipSequence, VertexLabeling};
use crate::oracle::ConfigurationSpace;
use crate::perm::Parity;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelMode {
    Vertex,
    Edge,
}

/// Cost of settling one vertex during [`spanning_tree_transform_traced`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SettleStep {
    pub vertex: usize,
    pub flips: usize,
    /// Edges of the residual tree when this vertex was settled.
    pub residual_edges: usize,
}

pub fn spanning_tree_transform(
    g: &Graph,
    l: &VertexLabeling,
    target: &VertexLabeling,
) -> Result<VertexFlipSequence> {
    Ok(spanning_tree_transform_traced(g, l, target)?.0)
}

pub fn spanning_tree_transform_traced(
    g: &Graph,
    l: &VertexLabeling,
    target: &VertexLabeling,
) -> Result<(VertexFlipSequence, Vec<SettleStep>)> {
    let n = g.n();
    for len in [l.len(), target.len()] {
        if len != n {
            return Err(Error::SizeMismatch {
                expected: n,
                actual: len,
            });
        }
    }
    let tree = g.spanning_tree()?;
    let order = tree.prufer_elimination_order()?;

    let mut labels = l.labels().to_vec();
    let mut position = vec![0; n];
    for (v, &x) in labels.iter().enumerate() {
        position[x] = v;
    }
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut seq = VertexFlipSequence::default();
    let mut steps = Vec::with_capacity(n);

    for &v in &order {
        let holder = position[target.label(v)];
        let route = residual_path(&tree, &alive, holder, v);
        let before = seq.len();
        for hop in route.windows(2) {
            let (a, b) = (hop[0], hop[1]);
            labels.swap(a, b);
            position[labels[a]] = a;
            position[labels[b]] = b;
            seq.push(VertexFlip(a, b));
        }
        steps.push(SettleStep {
            vertex: v,
            flips: seq.len() - before,
            residual_edges: remaining - 1,
        });
        alive[v] = false;
        remaining -= 1;
    }
    debug_assert_eq!(labels, target.labels());
    Ok((seq, steps))
}

/// Unique path from `from` to `to` in the tree restricted to live vertices.
fn residual_path(tree: &Graph, alive: &[bool], from: usize, to: usize) -> Vec<usize> {
    if from == to {
        return vec![from];
    }
    let mut parent = vec![usize::MAX; tree.n()];
    parent[to] = to;
    let mut queue = VecDeque::from([to]);
    while let Some(x) = queue.pop_front() {
        if x == from {
            break;
        }
        for &w in tree.neighbors(x) {
            if alive[w] && parent[w] == usize::MAX {
                parent[w] = x;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![from];
    let mut x = from;
    while x != to {
        x = parent[x];
        path.push(x);
    }
    path
}

/// `n(n-1)/2` flips always suffice for vertex labels, `m(m-1)/2` for edge
/// labels.
pub fn distance_upper_bound(g: &Graph, mode: LabelMode) -> usize {
    let k = match mode {
        LabelMode::Vertex => g.n(),
        LabelMode::Edge => g.m(),
    };
    k * k.saturating_sub(1) / 2
}

/// Exact flip distance on a general graph (`p_G`), by breadth-first search.
pub fn p_g(g: &Graph, l: &VertexLabeling, target: &VertexLabeling) -> Result<usize> {
    p_g_in(&ConfigurationSpace::vertex(g), g, l, target)
}

/// [`p_g`] over a caller-supplied space (for a raised capacity).
pub fn p_g_in(
    space: &ConfigurationSpace,
    g: &Graph,
    l: &VertexLabeling,
    target: &VertexLabeling,
) -> Result<usize> {
    g.require_connected()?;
    space
        .bfs_distance(l.as_permutation(), target.as_permutation())?
        .ok_or(Error::Disconnected)
}

/// Largest `p_G` over all pairs of labelings.
pub fn p_g_diameter(g: &Graph) -> Result<usize> {
    g.require_connected()?;
    ConfigurationSpace::vertex(g).diameter()
}

/// Whether `target` is reachable in exactly `t` flips: `t >= p_G` and `t`
/// has the parity of the relative permutation.
pub fn exact_t_feasible(
    g: &Graph,
    l: &VertexLabeling,
    target: &VertexLabeling,
    t: usize,
) -> Result<bool> {
    exact_t_feasible_in(&ConfigurationSpace::vertex(g), g, l, target, t)
}

pub fn exact_t_feasible_in(
    space: &ConfigurationSpace,
    g: &Graph,
    l: &VertexLabeling,
    target: &VertexLabeling,
    t: usize,
) -> Result<bool> {
    let d = p_g_in(space, g, l, target)?;
    if g.m() == 0 {
        return Ok(t == 0);
    }
    let parity = relative_vertex(l, target)?.parity();
    Ok(t >= d && Parity::of(t) == parity)
}
