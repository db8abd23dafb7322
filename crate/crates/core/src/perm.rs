//! Permutations of `{0, …, n-1}` and the handful of invariants the distance
//! formulas are built from: cycle structure, support, inversions and parity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{0, …, n-1}` stored as its image table: `map[i]` is the
/// image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    map: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n {
                return Err(Error::invalid_perm(n, format!("value {x} out of range")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::invalid_perm(n, format!("value {x} repeated")));
            }
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// The transposition exchanging `i` and `j` (identity when `i == j`).
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::InvalidArgument(format!(
                "transposition ({i}, {j}) outside 0..{n}"
            )));
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, j);
        Ok(Permutation { map })
    }

    /// Builds a permutation from disjoint cycles; each cycle sends every
    /// element to its successor.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n || std::mem::replace(&mut used[x], true) {
                    return Err(Error::invalid_perm(n, format!("bad cycle element {x}")));
                }
                map[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.map
    }

    /// Exchanges the images of `a` and `b`, i.e. replaces `self` by
    /// `self ∘ (a b)`.
    pub(crate) fn swap_images(&mut self, a: usize, b: usize) {
        self.map.swap(a, b);
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { map: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(Permutation {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    pub fn fixed_points(&self) -> usize {
        self.map
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x)
            .count()
    }

    /// Number of moved elements, `|π|`.
    pub fn support_size(&self) -> usize {
        self.len() - self.fixed_points()
    }

    /// Number of nontrivial disjoint cycles.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        for start in 0..self.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.map[x];
            }
        }
        count
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let mut seen = vec![false; self.len()];
        let mut cycles = Vec::new();
        // scanning starts in increasing order, so every cycle begins at its
        // minimum and the list comes out sorted
        for start in 0..self.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.map[x];
            }
            cycles.push(cycle);
        }
        CycleDecomposition { cycles }
    }

    /// Inversion count `|{(i, j) : i < j, map[i] > map[j]}|` by merge sort.
    pub fn inversions(&self) -> usize {
        fn sort_count(v: &mut [usize], buf: &mut Vec<usize>) -> usize {
            let n = v.len();
            if n < 2 {
                return 0;
            }
            let mid = n / 2;
            let mut count = sort_count(&mut v[..mid], buf) + sort_count(&mut v[mid..], buf);
            buf.clear();
            let (mut i, mut j) = (0, mid);
            while i < mid && j < n {
                if v[i] <= v[j] {
                    buf.push(v[i]);
                    i += 1;
                } else {
                    count += mid - i;
                    buf.push(v[j]);
                    j += 1;
                }
            }
            buf.extend_from_slice(&v[i..mid]);
            buf.extend_from_slice(&v[j..n]);
            v.copy_from_slice(buf);
            count
        }
        let mut v = self.map.clone();
        let mut buf = Vec::with_capacity(v.len());
        sort_count(&mut v, &mut buf)
    }

    pub fn parity(&self) -> Parity {
        // n - (number of cycles including fixed points) has the same parity
        // as the inversion count and avoids the sort
        let all_cycles = self.cycle_count() + self.fixed_points();
        Parity::of(self.len() - all_cycles)
    }

    /// Normalisation fixing 0: `π` itself when `π(0) = 0`, otherwise
    /// `π ∘ (0 j)` where `π(j) = 0`.
    pub fn pi_zero(&self) -> Self {
        if self.is_empty() || self.map[0] == 0 {
            return self.clone();
        }
        let j = self.map.iter().position(|&x| x == 0).expect("bijection");
        let mut map = self.map.clone();
        map.swap(0, j);
        Permutation { map }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.map)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycle_decomposition();
        if cycles.cycles.is_empty() {
            return write!(f, "()");
        }
        for c in &cycles.cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(map: Vec<usize>) -> Result<Self> {
        Permutation::new(map)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.map
    }
}

/// Nontrivial disjoint cycles in canonical form: each cycle starts at its
/// smallest element and cycles are ordered by that element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn support_size(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn recompose(&self, n: usize) -> Result<Permutation> {
        Permutation::from_cycles(n, &self.cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn brute_inversions(p: &Permutation) -> usize {
        let s = p.as_slice();
        let mut count = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[i] > s[j] {
                    count += 1;
                }
            }
        }
        count
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (0..n).permutations(n).map(|v| perm(&v)).collect()
    }

    fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_n)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
        let p: Permutation = serde_json::from_str("[2,0,1]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,0,1]");
    }

    #[test]
    fn cycle_decomposition_examples() {
        let id = Permutation::identity(5);
        let d = id.cycle_decomposition();
        assert!(d.cycles.is_empty());
        assert_eq!((d.support_size(), d.cycle_count()), (0, 0));

        let d = perm(&[0, 2, 3, 1]).cycle_decomposition();
        assert_eq!(d.cycles, vec![vec![1, 2, 3]]);
        assert_eq!((d.support_size(), d.cycle_count()), (3, 1));

        let d = perm(&[1, 0, 3, 2]).cycle_decomposition();
        assert_eq!(d.cycles, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!((d.support_size(), d.cycle_count()), (4, 2));
    }

    #[test]
    fn cycle_round_trip_exhaustive_to_eight() {
        for n in 0..=8 {
            for p in all_perms(n) {
                let d = p.cycle_decomposition();
                assert_eq!(d.recompose(n).unwrap(), p);
                assert_eq!(d.support_size(), p.support_size());
                assert_eq!(d.cycle_count(), p.cycle_count());
                assert_eq!(p.support_size() + p.fixed_points(), n);
                assert!(d.cycles.iter().all(|c| c.len() >= 2));
                assert!(d.cycles.iter().all(|c| c[0] == *c.iter().min().unwrap()));
                assert!(d.cycles.windows(2).all(|w| w[0][0] < w[1][0]));
            }
        }
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(perm(&[0, 1, 2, 3]).inversions(), 0);
        assert_eq!(perm(&[3, 2, 1, 0]).inversions(), 6);
        assert_eq!(perm(&[2, 0, 1]).inversions(), 2);
        assert_eq!(brute_inversions(&perm(&[2, 0, 1])), 2);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Permutation::identity(4).parity(), Parity::Even);
        assert_eq!(perm(&[0, 2, 1, 3]).parity(), Parity::Odd);
        assert_eq!(perm(&[1, 2, 0]).parity(), Parity::Even);
    }

    #[test]
    fn pi_zero_examples() {
        assert_eq!(Permutation::identity(3).pi_zero(), Permutation::identity(3));
        assert_eq!(perm(&[2, 1, 0]).pi_zero(), Permutation::identity(3));
        assert_eq!(perm(&[1, 2, 0]).pi_zero(), perm(&[0, 2, 1]));
    }

    #[test]
    fn compose_examples() {
        let p = perm(&[2, 0, 3, 1]);
        assert_eq!(p.compose(&Permutation::identity(4)).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert_eq!(
            perm(&[1, 0, 2]).compose(&perm(&[0, 2, 1])).unwrap(),
            perm(&[1, 2, 0])
        );
        assert!(matches!(
            p.compose(&Permutation::identity(3)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn inversions_match_brute_force_exhaustively() {
        for n in 0..=7 {
            for p in all_perms(n) {
                assert_eq!(p.inversions(), brute_inversions(&p));
                assert_eq!(p.parity(), Parity::of(brute_inversions(&p)));
            }
        }
    }

    proptest! {
        #[test]
        fn zero_inversions_iff_identity(p in arb_perm(40)) {
            prop_assert_eq!(p.inversions() == 0, p.is_identity());
            prop_assert!(p.inversions() <= p.len() * (p.len() - 1) / 2);
        }

        #[test]
        fn adjacent_transposition_moves_inversions_by_one(p in arb_perm(40), k in 0usize..39) {
            prop_assume!(p.len() >= 2);
            let k = k % (p.len() - 1);
            let a = Permutation::transposition(p.len(), k, k + 1).unwrap();
            let q = p.compose(&a).unwrap();
            prop_assert_eq!(p.inversions().abs_diff(q.inversions()), 1);
        }

        #[test]
        fn parity_is_a_homomorphism(p in arb_perm(30), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut v: Vec<usize> = (0..p.len()).collect();
            v.shuffle(&mut rng);
            let q = Permutation::new(v).unwrap();
            let pq = p.compose(&q).unwrap();
            prop_assert_eq!(pq.parity(), p.parity().combine(q.parity()));
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }

        #[test]
        fn pi_zero_fixes_zero(p in arb_perm(20)) {
            prop_assert_eq!(p.pi_zero().image(0), 0);
        }
    }
}
