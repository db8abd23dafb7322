//! Vertex and edge labelings, single flips, and flip sequences.

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;

macro_rules! labeling_type {
    ($name:ident, $field:literal) => {
        #[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub struct $name {
            #[serde(rename = $field)]
            labels: Permutation,
        }

        impl $name {
            pub fn new(labels: Vec<usize>) -> Result<Self> {
                Ok($name {
                    labels: Permutation::new(labels)?,
                })
            }

            pub fn identity(n: usize) -> Self {
                $name {
                    labels: Permutation::identity(n),
                }
            }

            pub fn from_permutation(labels: Permutation) -> Self {
                $name { labels }
            }

            pub fn len(&self) -> usize {
                self.labels.len()
            }

            pub fn is_empty(&self) -> bool {
                self.labels.is_empty()
            }

            /// Label held at position `i`.
            pub fn label(&self, i: usize) -> usize {
                self.labels.image(i)
            }

            pub fn labels(&self) -> &[usize] {
                self.labels.as_slice()
            }

            pub fn as_permutation(&self) -> &Permutation {
                &self.labels
            }

            /// Position currently holding `label`.
            pub fn position_of(&self, label: usize) -> usize {
                self.labels
                    .as_slice()
                    .iter()
                    .position(|&x| x == label)
                    .expect("labels form a bijection")
            }

            pub(crate) fn swap_positions(&mut self, a: usize, b: usize) {
                self.labels.swap_images(a, b);
            }
        }
    };
}

labeling_type!(VertexLabeling, "labels");
labeling_type!(EdgeLabeling, "edge_labels");

/// Swap of the labels on the two endpoints of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexFlip(pub usize, pub usize);

/// Swap of the labels on two edges (by index) that share an endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeFlip(pub usize, pub usize);

impl VertexFlip {
    pub fn new(u: usize, v: usize) -> Self {
        VertexFlip(u, v)
    }

    pub fn ends(self) -> (usize, usize) {
        (self.0, self.1)
    }
}

impl EdgeFlip {
    pub fn new(e1: usize, e2: usize) -> Self {
        EdgeFlip(e1, e2)
    }

    pub fn ends(self) -> (usize, usize) {
        (self.0, self.1)
    }
}

/// Shared behaviour of the two flip kinds.
pub trait Flip: Copy + std::fmt::Debug + PartialEq + Eq {
    type Labeling: Clone;
    const KIND: &'static str;

    fn from_pair(a: usize, b: usize) -> Self;
    fn pair(self) -> (usize, usize);
    fn check(self, g: &Graph) -> Result<()>;
    fn apply_unchecked(self, l: &mut Self::Labeling);
    fn labeling_len(g: &Graph) -> usize;
    fn len_of(l: &Self::Labeling) -> usize;
}

impl Flip for VertexFlip {
    type Labeling = VertexLabeling;
    const KIND: &'static str = "vertex";

    fn from_pair(a: usize, b: usize) -> Self {
        VertexFlip(a, b)
    }

    fn pair(self) -> (usize, usize) {
        (self.0, self.1)
    }

    fn check(self, g: &Graph) -> Result<()> {
        if self.0 < g.n() && self.1 < g.n() && g.has_edge(self.0, self.1) {
            Ok(())
        } else {
            Err(Error::NotAnEdge {
                u: self.0,
                v: self.1,
            })
        }
    }

    fn apply_unchecked(self, l: &mut VertexLabeling) {
        l.swap_positions(self.0, self.1);
    }

    fn labeling_len(g: &Graph) -> usize {
        g.n()
    }

    fn len_of(l: &VertexLabeling) -> usize {
        l.len()
    }
}

impl Flip for EdgeFlip {
    type Labeling = EdgeLabeling;
    const KIND: &'static str = "edge";

    fn from_pair(a: usize, b: usize) -> Self {
        EdgeFlip(a, b)
    }

    fn pair(self) -> (usize, usize) {
        (self.0, self.1)
    }

    fn check(self, g: &Graph) -> Result<()> {
        if self.0 < g.m() && self.1 < g.m() && g.edges_share_endpoint(self.0, self.1) {
            Ok(())
        } else {
            Err(Error::EdgesNotAdjacent {
                e1: self.0,
                e2: self.1,
            })
        }
    }

    fn apply_unchecked(self, l: &mut EdgeLabeling) {
        l.swap_positions(self.0, self.1);
    }

    fn labeling_len(g: &Graph) -> usize {
        g.m()
    }

    fn len_of(l: &EdgeLabeling) -> usize {
        l.len()
    }
}

/// An ordered list of flips; its length is the number of mutations used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipSequence<F> {
    pub flips: Vec<F>,
}

pub type VertexFlipSequence = FlipSequence<VertexFlip>;
pub type EdgeFlipSequence = FlipSequence<EdgeFlip>;

impl<F> Default for FlipSequence<F> {
    fn default() -> Self {
        FlipSequence { flips: Vec::new() }
    }
}

impl<F: Flip> FlipSequence<F> {
    pub fn new(flips: Vec<F>) -> Self {
        FlipSequence { flips }
    }

    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    pub fn push(&mut self, f: F) {
        self.flips.push(f);
    }

    pub fn extend(&mut self, other: FlipSequence<F>) {
        self.flips.extend(other.flips);
    }

    pub fn reversed(&self) -> Self {
        FlipSequence {
            flips: self.flips.iter().rev().copied().collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &F> {
        self.flips.iter()
    }
}

impl<F: Flip> FromIterator<F> for FlipSequence<F> {
    fn from_iter<I: IntoIterator<Item = F>>(iter: I) -> Self {
        FlipSequence {
            flips: iter.into_iter().collect(),
        }
    }
}

impl<F: Flip> Serialize for FlipSequence<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self
            .flips
            .iter()
            .map(|f| {
                let (a, b) = f.pair();
                [a, b]
            })
            .collect();
        let is_edge = F::KIND == "edge";
        let mut st = s.serialize_struct("FlipSequence", if is_edge { 2 } else { 1 })?;
        st.serialize_field("flips", &pairs)?;
        if is_edge {
            st.serialize_field("kind", F::KIND)?;
        }
        st.end()
    }
}

impl<'de, F: Flip> Deserialize<'de> for FlipSequence<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            flips: Vec<[usize; 2]>,
            #[serde(default)]
            kind: Option<String>,
        }
        let r = Repr::deserialize(d)?;
        let kind = r.kind.as_deref().unwrap_or("vertex");
        if kind != F::KIND {
            return Err(de::Error::custom(format!(
                "expected a {} flip sequence, found kind {kind:?}",
                F::KIND
            )));
        }
        Ok(FlipSequence {
            flips: r
                .flips
                .into_iter()
                .map(|[a, b]| F::from_pair(a, b))
                .collect(),
        })
    }
}

fn check_len<F: Flip>(g: &Graph, l: &F::Labeling) -> Result<()> {
    let expected = F::labeling_len(g);
    let actual = F::len_of(l);
    if expected == actual {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected, actual })
    }
}

/// Applies one flip, rejecting flips that are not legal moves on `g`.
pub fn apply_flip<F: Flip>(g: &Graph, l: &F::Labeling, f: F) -> Result<F::Labeling> {
    check_len::<F>(g, l)?;
    f.check(g)?;
    let mut out = l.clone();
    f.apply_unchecked(&mut out);
    Ok(out)
}

/// Left-to-right fold of [`apply_flip`]; the first bad flip is reported by
/// its index in the sequence.
pub fn apply_sequence<F: Flip>(
    g: &Graph,
    l: &F::Labeling,
    seq: &FlipSequence<F>,
) -> Result<F::Labeling> {
    check_len::<F>(g, l)?;
    let mut out = l.clone();
    for (index, &f) in seq.flips.iter().enumerate() {
        f.check(g).map_err(|e| Error::InvalidFlip {
            index,
            reason: e.to_string(),
        })?;
        f.apply_unchecked(&mut out);
    }
    Ok(out)
}

/// The labeling `l` rewritten in label coordinates where `target` reads as
/// the identity: position `v` holds `target⁻¹(l(v))`. Distances are
/// invariant under this renaming, and `target ∘ result = l`.
pub fn relative_permutation(l: &Permutation, target: &Permutation) -> Result<Permutation> {
    target.inverse().compose(l)
}

pub fn relative_vertex(l: &VertexLabeling, target: &VertexLabeling) -> Result<Permutation> {
    relative_permutation(l.as_permutation(), target.as_permutation())
}
