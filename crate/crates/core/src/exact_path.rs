//! Closed-form flip distance on the path `P_n`.
//!
//! With vertices `0 - 1 - … - (n-1)` a labeling reads as a sequence, each
//! flip is an adjacent transposition, and the minimum number of flips is the
//! inversion count of the relative permutation. Every flip changes that
//! count by exactly one, so a target is reachable in exactly `t` flips iff
//! `t >= d` and `t ≡ d (mod 2)`.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{relative_vertex, VertexFlip, VertexFlipSequence, VertexLabeling};

/// Minimum number of flips taking `l` to `target` on the canonical path.
pub fn path_distance(l: &VertexLabeling, target: &VertexLabeling) -> Result<usize> {
    Ok(relative_vertex(l, target)?.inversions())
}

/// An optimal flip sequence on the canonical path.
///
/// Works on target ranks: the position holding the largest remaining rank
/// is walked right to the end of the unsorted prefix, then the prefix
/// shrinks. Every flip removes one inversion.
pub fn path_flip_sequence(
    l: &VertexLabeling,
    target: &VertexLabeling,
) -> Result<VertexFlipSequence> {
    let mut ranks = relative_vertex(l, target)?.into_vec();
    let mut seq = VertexFlipSequence::default();
    for top in (1..ranks.len()).rev() {
        let mut i = ranks[..=top]
            .iter()
            .position(|&r| r == top)
            .expect("largest rank lies in the unsorted prefix");
        while i < top {
            ranks.swap(i, i + 1);
            seq.push(VertexFlip(i, i + 1));
            i += 1;
        }
    }
    Ok(seq)
}

/// Whether `target` is reachable from `l` in exactly `t` flips.
pub fn path_exact_t_feasible(
    l: &VertexLabeling,
    target: &VertexLabeling,
    t: usize,
) -> Result<bool> {
    let d = path_distance(l, target)?;
    if l.len() < 2 {
        // no edges, no moves at all
        return Ok(t == 0);
    }
    Ok(t >= d && (t - d).is_multiple_of(2))
}

/// The transposition of positions `i < j` as `2(j - i) - 1` adjacent flips:
/// the label at `j` walks left to `i`, then the label from `i` walks right
/// to `j`.
pub fn transposition_on_path(i: usize, j: usize) -> Result<(usize, VertexFlipSequence)> {
    if i >= j {
        return Err(Error::InvalidArgument(format!(
            "transposition needs i < j, got ({i}, {j})"
        )));
    }
    let mut seq = VertexFlipSequence::default();
    for k in (i..j).rev() {
        seq.push(VertexFlip(k, k + 1));
    }
    for k in i + 1..j {
        seq.push(VertexFlip(k, k + 1));
    }
    Ok((2 * (j - i) - 1, seq))
}

/// Vertex order of `g` along the path, for graphs that are paths but not
/// indexed `0 - 1 - … - (n-1)`.
pub fn path_view(g: &Graph) -> Result<Vec<usize>> {
    g.path_order()
        .ok_or_else(|| Error::InvalidGraph("graph is not a path".into()))
}

fn to_path_coords(order: &[usize], l: &VertexLabeling) -> Result<VertexLabeling> {
    if order.len() != l.len() {
        return Err(Error::SizeMismatch {
            expected: order.len(),
            actual: l.len(),
        });
    }
    VertexLabeling::new(order.iter().map(|&v| l.label(v)).collect())
}

/// [`path_distance`] for any graph that is a path, whatever its indexing.
pub fn path_distance_on(g: &Graph, l: &VertexLabeling, target: &VertexLabeling) -> Result<usize> {
    let order = path_view(g)?;
    path_distance(
        &to_path_coords(&order, l)?,
        &to_path_coords(&order, target)?,
    )
}

/// [`path_flip_sequence`] for any graph that is a path, with flips named by
/// the graph's own vertex indices.
pub fn path_flip_sequence_on(
    g: &Graph,
    l: &VertexLabeling,
    target: &VertexLabeling,
) -> Result<VertexFlipSequence> {
    let order = path_view(g)?;
    let seq = path_flip_sequence(
        &to_path_coords(&order, l)?,
        &to_path_coords(&order, target)?,
    )?;
    Ok(seq
        .iter()
        .map(|f| VertexFlip(order[f.0], order[f.1]))
        .collect())
}
