//! JSON instance files shared by the reduction and privileged-label tools.
//!
//! ```json
//! {"kind": "vertex", "graph": {"n": 3, "edges": [[0,1],[1,2]]},
//!  "from": {"labels": [2,1,0]}, "to": {"labels": [0,1,2]}, "t": 3}
//! ```
//!
//! Edge instances use `"kind": "edge"` and `{"edge_labels": [...]}`. A
//! `"privileged"` label list turns the file into a privileged instance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{EdgeLabeling, VertexLabeling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Vertex,
    Edge,
}

/// A labeling as it appears in a file: either wrapped object form or a bare
/// array.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelsJson {
    Vertex { labels: Vec<usize> },
    Edge { edge_labels: Vec<usize> },
    Bare(Vec<usize>),
}

impl LabelsJson {
    pub fn values(&self) -> &[usize] {
        match self {
            LabelsJson::Vertex { labels } => labels,
            LabelsJson::Edge { edge_labels } => edge_labels,
            LabelsJson::Bare(v) => v,
        }
    }

    pub fn vertex(&self) -> Result<VertexLabeling> {
        VertexLabeling::new(self.values().to_vec())
    }

    pub fn edge(&self) -> Result<EdgeLabeling> {
        EdgeLabeling::new(self.values().to_vec())
    }
}

impl From<&VertexLabeling> for LabelsJson {
    fn from(l: &VertexLabeling) -> Self {
        LabelsJson::Vertex {
            labels: l.labels().to_vec(),
        }
    }
}

impl From<&EdgeLabeling> for LabelsJson {
    fn from(l: &EdgeLabeling) -> Self {
        LabelsJson::Edge {
            edge_labels: l.labels().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: Kind,
    pub graph: Graph,
    pub from: LabelsJson,
    pub to: LabelsJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub privileged: Option<Vec<usize>>,
}

impl InstanceFile {
    pub fn bound(&self) -> Result<usize> {
        self.t
            .ok_or_else(|| Error::InvalidArgument("instance has no bound t".into()))
    }
}
