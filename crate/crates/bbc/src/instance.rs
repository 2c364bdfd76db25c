//! Backbone instances: a host graph, a spanning subgraph of demanding
//! edges, and the required colour gap.

use crate::graph::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("backbone edge {{{0}, {1}}} is not a host edge")]
    BackboneNotInHost(usize, usize),
    #[error("gap parameter q must be at least 1")]
    ZeroGap,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Host graph `G` together with a backbone edge set `E(H) ⊆ E(G)` and the
/// gap `q`. The backbone is a spanning subgraph: it has the same vertex
/// set as the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackboneInstance {
    pub host: Graph,
    backbone: Vec<(usize, usize)>,
    backbone_adj: Vec<Vec<usize>>,
    pub q: u32,
}

impl BackboneInstance {
    pub fn new(
        host: Graph,
        backbone: Vec<(usize, usize)>,
        q: u32,
    ) -> Result<Self, InstanceError> {
        if q == 0 {
            return Err(InstanceError::ZeroGap);
        }
        let mut canon: Vec<(usize, usize)> =
            backbone.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        canon.sort_unstable();
        canon.dedup();
        let mut adj = vec![Vec::new(); host.vertex_count() + 1];
        for &(u, v) in &canon {
            if !host.has_edge(u, v) {
                return Err(InstanceError::BackboneNotInHost(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in adj.iter_mut() {
            row.sort_unstable();
        }
        Ok(BackboneInstance {
            host,
            backbone: canon,
            backbone_adj: adj,
            q,
        })
    }

    pub fn backbone_edges(&self) -> &[(usize, usize)] {
        &self.backbone
    }

    pub fn backbone_neighbours(&self, v: usize) -> &[usize] {
        &self.backbone_adj[v]
    }

    pub fn backbone_degree(&self, v: usize) -> usize {
        self.backbone_adj[v].len()
    }

    pub fn backbone_is_edgeless(&self) -> bool {
        self.backbone.is_empty()
    }

    /// The backbone as a standalone graph on the same vertex set.
    pub fn backbone_graph(&self) -> Graph {
        Graph::from_edges(self.host.vertex_count(), self.backbone.iter().copied())
            .expect("backbone edges come from a valid graph")
    }
}
