//! Closed-form flip distance on the star `K_{1,n-1}` with center 0.
//!
//! Every flip exchanges the center label with a leaf label, so a flip is a
//! transposition `(0 i)`. For a labeling `π` (target = identity) the
//! distance is
//!
//! * `|π| + ς(π)` when the center holds its own label (`|π|` moved points,
//!   `ς` nontrivial cycles), and otherwise
//! * `q(π⁰) + 1` when the center's label and the label 0 sit on each other's
//!   home vertices, `q(π⁰) - 1` when they do not,
//!
//! where `π⁰ = π ∘ (0 j)` with `π(j) = 0` puts 0 back on the center.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{relative_vertex, VertexFlip, VertexFlipSequence, VertexLabeling};
use crate::perm::Permutation;

/// The `q` parameter of a star labeling measured against the identity.
pub fn star_q(p: &Permutation) -> usize {
    if p.is_empty() || p.image(0) == 0 {
        return p.support_size() + p.cycle_count();
    }
    let i = p.image(0);
    let j = p
        .as_slice()
        .iter()
        .position(|&x| x == 0)
        .expect("bijection");
    let base = star_q(&p.pi_zero());
    if i == j {
        base + 1
    } else {
        // base >= 3 here: π⁰ moves at least i and j
        base - 1
    }
}

pub fn star_distance(l: &VertexLabeling, target: &VertexLabeling) -> Result<usize> {
    Ok(star_q(&relative_vertex(l, target)?))
}

/// A minimum flip sequence on the star.
///
/// While the center holds some leaf's label, that label is sent home; once
/// the center holds its own label, it is swapped onto the lowest-indexed
/// misplaced leaf. Each step lowers `q` by one.
pub fn star_flip_sequence(
    l: &VertexLabeling,
    target: &VertexLabeling,
) -> Result<VertexFlipSequence> {
    let mut state = relative_vertex(l, target)?.into_vec();
    let mut seq = VertexFlipSequence::default();
    let mut scan = 1;
    loop {
        let c = state[0];
        let leaf = if c != 0 {
            c
        } else {
            while scan < state.len() && state[scan] == scan {
                scan += 1;
            }
            if scan == state.len() {
                break;
            }
            scan
        };
        state.swap(0, leaf);
        seq.push(VertexFlip(0, leaf));
    }
    Ok(seq)
}

/// Whether `target` is reachable from `l` in exactly `t` flips.
pub fn star_exact_t_feasible(
    l: &VertexLabeling,
    target: &VertexLabeling,
    t: usize,
) -> Result<bool> {
    let q = star_distance(l, target)?;
    if l.len() < 2 {
        return Ok(t == 0);
    }
    Ok(t >= q && (t - q).is_multiple_of(2))
}

/// Largest distance between two labelings of the `n`-vertex star:
/// `⌊3(n-1)/2⌋`.
pub fn star_max_distance(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "star diameter needs n >= 2, got {n}"
        )));
    }
    Ok(3 * (n - 1) / 2)
}

/// Vertex order putting the star's center first, for stars not centered at 0.
/// The map is its own inverse.
pub fn star_view(g: &Graph) -> Result<Vec<usize>> {
    let center = g
        .star_center()
        .ok_or_else(|| Error::InvalidGraph("graph is not a star".into()))?;
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.swap(0, center);
    Ok(order)
}

fn to_star_coords(order: &[usize], l: &VertexLabeling) -> Result<VertexLabeling> {
    if order.len() != l.len() {
        return Err(Error::SizeMismatch {
            expected: order.len(),
            actual: l.len(),
        });
    }
    VertexLabeling::new(order.iter().map(|&v| l.label(v)).collect())
}

pub fn star_distance_on(g: &Graph, l: &VertexLabeling, target: &VertexLabeling) -> Result<usize> {
    let order = star_view(g)?;
    star_distance(
        &to_star_coords(&order, l)?,
        &to_star_coords(&order, target)?,
    )
}

pub fn star_flip_sequence_on(
    g: &Graph,
    l: &VertexLabeling,
    target: &VertexLabeling,
) -> Result<VertexFlipSequence> {
    let order = star_view(g)?;
    let seq = star_flip_sequence(
        &to_star_coords(&order, l)?,
        &to_star_coords(&order, target)?,
    )?;
    Ok(seq
        .iter()
        .map(|f| VertexFlip(order[f.0], order[f.1]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{apply_flip, apply_sequence};
    use itertools::Itertools;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn vl(v: &[usize]) -> VertexLabeling {
        VertexLabeling::new(v.to_vec()).unwrap()
    }

    #[test]
    fn q_examples() {
        assert_eq!(star_q(&Permutation::identity(5)), 0);
        assert_eq!(star_q(&perm(&[2, 1, 0])), 1);
        assert_eq!(star_q(&perm(&[0, 2, 3, 1])), 4);
        assert_eq!(star_q(&perm(&[1, 2, 0])), 2);
        assert_eq!(star_q(&perm(&[0, 2, 1])), 3);
    }

    #[test]
    fn distance_examples() {
        let id = VertexLabeling::identity(4);
        assert_eq!(star_distance(&id, &id).unwrap(), 0);
        let worst = (0..4)
            .permutations(4)
            .map(|v| star_distance(&vl(&v), &id).unwrap())
            .max()
            .unwrap();
        assert_eq!(worst, 4);
    }

    #[test]
    fn sequence_examples() {
        let id3 = VertexLabeling::identity(3);
        assert!(star_flip_sequence(&id3, &id3).unwrap().is_empty());
        assert_eq!(
            star_flip_sequence(&vl(&[1, 2, 0]), &id3).unwrap().flips,
            vec![VertexFlip(0, 1), VertexFlip(0, 2)]
        );
        let id4 = VertexLabeling::identity(4);
        let cyc = vl(&[0, 2, 3, 1]);
        let seq = star_flip_sequence(&cyc, &id4).unwrap();
        assert_eq!(
            seq.flips,
            vec![
                VertexFlip(0, 1),
                VertexFlip(0, 2),
                VertexFlip(0, 3),
                VertexFlip(0, 1)
            ]
        );
        let g = Graph::star(4).unwrap();
        assert_eq!(apply_sequence(&g, &cyc, &seq).unwrap(), id4);
    }

    #[test]
    fn exact_t_examples() {
        let id = VertexLabeling::identity(3);
        let two = vl(&[1, 2, 0]);
        assert!(star_exact_t_feasible(&two, &id, 2).unwrap());
        assert!(!star_exact_t_feasible(&two, &id, 3).unwrap());
        assert!(star_exact_t_feasible(&two, &id, 4).unwrap());
        assert!(!star_exact_t_feasible(&id, &id, 1).unwrap());
    }

    #[test]
    fn max_distance_examples() {
        assert_eq!(star_max_distance(4).unwrap(), 4);
        assert_eq!(star_max_distance(7).unwrap(), 9);
        assert_eq!(star_max_distance(2).unwrap(), 1);
        assert!(star_max_distance(1).is_err());
    }

    #[test]
    fn every_flip_moves_q_by_one_exhaustive_to_six() {
        for n in 2..=6 {
            let g = Graph::star(n).unwrap();
            for v in (0..n).permutations(n) {
                let l = vl(&v);
                let q = star_q(l.as_permutation());
                for leaf in 1..n {
                    let next = apply_flip(&g, &l, VertexFlip(0, leaf)).unwrap();
                    assert_eq!(
                        star_q(next.as_permutation()).abs_diff(q),
                        1,
                        "{v:?} leaf {leaf}"
                    );
                }
            }
        }
    }

    #[test]
    fn every_flip_moves_q_by_one_random_to_nine() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..2000 {
            let n = rng.gen_range(7..=9);
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(&mut rng);
            let l = vl(&v);
            let leaf = rng.gen_range(1..n);
            let g = Graph::star(n).unwrap();
            let next = apply_flip(&g, &l, VertexFlip(0, leaf)).unwrap();
            assert_eq!(
                star_q(next.as_permutation()).abs_diff(star_q(l.as_permutation())),
                1
            );
        }
    }

    #[test]
    fn diameter_matches_formula_exhaustive_to_eight() {
        for n in 2..=8 {
            let max = (0..n)
                .permutations(n)
                .map(|v| star_q(&perm(&v)))
                .max()
                .unwrap();
            assert_eq!(max, star_max_distance(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn off_center_star() {
        let g = Graph::new(4, [(2, 0), (2, 1), (2, 3)]).unwrap();
        let l = vl(&[3, 0, 1, 2]);
        let target = VertexLabeling::identity(4);
        let seq = star_flip_sequence_on(&g, &l, &target).unwrap();
        assert_eq!(seq.len(), star_distance_on(&g, &l, &target).unwrap());
        assert_eq!(apply_sequence(&g, &l, &seq).unwrap(), target);
    }
}
