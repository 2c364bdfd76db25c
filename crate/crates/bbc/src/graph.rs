//! Undirected simple graphs over dense 1-based vertex ids.

use std::collections::HashMap;
use thiserror::Error;

/// Vertices are the integers `1..=n`. Edges are unordered pairs stored
/// canonically as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
}

/// Outcome of the bipartiteness test: a two-sided partition, or an odd
/// cycle as a witness. Isolated vertices and one side of each connected
/// piece land on side `a` (so an edgeless graph has everything in `a`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartiteness {
    Bipartite { a: Vec<usize>, b: Vec<usize> },
    OddCycle(Vec<usize>),
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n + 1],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange(w, n));
                }
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        for w in canon.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n + 1];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in adj.iter_mut() {
            row.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: canon,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        1..=self.n
    }

    /// Canonical edge list, sorted, each pair as `(min, max)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Induced subgraph on `verts` plus the mapping from new ids (1-based)
    /// back to the original ids.
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut to_original = Vec::with_capacity(verts.len() + 1);
        to_original.push(0); // slot for the unused id 0
        let mut sorted = verts.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut to_new: HashMap<usize, usize> = HashMap::new();
        for (i, &v) in sorted.iter().enumerate() {
            to_new.insert(v, i + 1);
            to_original.push(v);
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if let (Some(&nu), Some(&nv)) = (to_new.get(&u), to_new.get(&v)) {
                edges.push((nu, nv));
            }
        }
        let g = Graph::from_edges(sorted.len(), edges).expect("induced edges are valid");
        (g, to_original)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut comps = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        // acyclic iff every component has |E| = |V| - 1
        let comps = self.connected_components();
        let singles: usize = comps.len();
        self.edge_count() + singles == self.n
    }

    /// BFS 2-colouring. On failure the witness is an odd cycle listed in
    /// cyclic order.
    pub fn is_bipartite(&self) -> Bipartiteness {
        let mut side = vec![u8::MAX; self.n + 1];
        let mut parent = vec![0usize; self.n + 1];
        for s in 1..=self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            parent[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        parent[w] = u;
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return Bipartiteness::OddCycle(odd_cycle_witness(&parent, u, w));
                    }
                }
            }
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        for v in 1..=self.n {
            if side[v] == 1 {
                b.push(v);
            } else {
                a.push(v);
            }
        }
        Bipartiteness::Bipartite { a, b }
    }

    /// A graph contains a 4-cycle as a subgraph exactly when some vertex
    /// pair has two common neighbours. Returns such a cycle `[u, w1, v, w2]`
    /// (edges u-w1, w1-v, v-w2, w2-u), or `None` if C4-free.
    pub fn c4_witness(&self) -> Option<[usize; 4]> {
        let mut first: HashMap<(usize, usize), usize> = HashMap::new();
        for w in 1..=self.n {
            let nb = &self.adj[w];
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    let key = (nb[i], nb[j]);
                    if let Some(&w0) = first.get(&key) {
                        return Some([key.0, w0, key.1, w]);
                    }
                    first.insert(key, w);
                }
            }
        }
        None
    }

    pub fn is_c4_free(&self) -> bool {
        self.c4_witness().is_none()
    }
}

fn odd_cycle_witness(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    // Walk both BFS ancestries up to the lowest common ancestor.
    let mut anc_u = vec![u];
    let mut x = u;
    while parent[x] != 0 {
        x = parent[x];
        anc_u.push(x);
    }
    let mut path_w = vec![w];
    let mut y = w;
    loop {
        if let Some(pos) = anc_u.iter().position(|&z| z == y) {
            // cycle: u .. lca (along anc_u), then back down to w
            let mut cycle: Vec<usize> = anc_u[..=pos].to_vec();
            cycle.extend(path_w[..path_w.len() - 1].iter().rev());
            return cycle;
        }
        y = parent[y];
        path_w.push(y);
    }
}
