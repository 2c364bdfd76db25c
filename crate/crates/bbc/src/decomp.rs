//! Clique trees, clique paths for the restricted interval class, smooth
//! tree decompositions, and the validity checkers that gate them.

use crate::chordal::{maximal_cliques, mcs_ordering, PeoError};
use crate::graph::Graph;
use std::collections::HashSet;
use std::fmt::Write as _;
use thiserror::Error;

/// A tree whose nodes are the maximal cliques of a chordal graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTree {
    pub bags: Vec<Vec<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
}

/// An ordered clique path plus the same bags padded to uniform size with
/// synthetic vertices (fresh ids above the host's range, one bag each).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliquePath {
    pub bags: Vec<Vec<usize>>,
    pub padded_bags: Vec<Vec<usize>>,
    pub synthetic: Vec<usize>,
    pub omega: usize,
}

/// Rooted decomposition with all bags of equal size and adjacent bags
/// exchanging exactly one vertex. `enter[i]`/`leave[i]` are the swapped
/// pair relative to the parent bag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothTreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
    pub enter: Vec<Option<usize>>,
    pub leave: Vec<Option<usize>>,
    /// Node indices in preorder; the root comes first.
    pub preorder: Vec<usize>,
    pub omega: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("graph is not chordal: {0}")]
    NotChordal(PeoError),
    #[error("graph is not connected")]
    NotConnected,
    #[error("decomposition invalid: {0}")]
    Invalid(TdViolation),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TdViolation {
    #[error("tree edges do not form a tree")]
    NotATree,
    #[error("vertex {0} appears in no bag")]
    VertexMissing(usize),
    #[error("edge {{{0}, {1}}} is inside no bag")]
    EdgeUncovered(usize, usize),
    #[error("bags containing vertex {0} are not connected in the tree")]
    SubtreeBroken(usize),
    #[error("bag {bag} has {size} vertices, expected {expected}")]
    BagSizeWrong {
        bag: usize,
        size: usize,
        expected: usize,
    },
    #[error("bags {parent} and {child} do not exchange exactly one vertex")]
    SwapNotSingle { parent: usize, child: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathRejection {
    #[error("graph is not chordal: {0}")]
    NotChordal(PeoError),
    #[error("graph is not connected")]
    NotConnected,
    #[error("vertex {0} lies in {1} maximal cliques (more than 2)")]
    VertexInManyCliques(usize, usize),
    #[error("clique intersection graph is not a path")]
    IntersectionNotAPath,
    #[error("path decomposition validation failed: {0}")]
    ValidationFailed(TdViolation),
}

/// Checks the three tree-decomposition conditions plus tree-ness of the
/// node edges: every vertex in a bag, every edge inside a bag, and each
/// vertex's bags connected in the tree.
pub fn validate_tree_decomposition(
    g: &Graph,
    bags: &[Vec<usize>],
    tree_edges: &[(usize, usize)],
) -> Result<(), TdViolation> {
    let t = bags.len();
    if t == 0 {
        return if g.vertex_count() == 0 {
            Ok(())
        } else {
            Err(TdViolation::VertexMissing(1))
        };
    }
    if tree_edges.len() + 1 != t {
        return Err(TdViolation::NotATree);
    }
    let mut nbr = vec![Vec::new(); t];
    for &(a, b) in tree_edges {
        if a >= t || b >= t {
            return Err(TdViolation::NotATree);
        }
        nbr[a].push(b);
        nbr[b].push(a);
    }
    // connectivity (with |edges| = t-1 this implies acyclicity)
    let mut seen = vec![false; t];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &nbr[x] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    if count != t {
        return Err(TdViolation::NotATree);
    }

    let n = g.vertex_count();
    let mut holding: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, bag) in bags.iter().enumerate() {
        for &v in bag {
            if v >= 1 && v <= n {
                holding[v].push(i);
            }
        }
    }
    for v in 1..=n {
        if holding[v].is_empty() {
            return Err(TdViolation::VertexMissing(v));
        }
    }
    for &(u, v) in g.edges() {
        let set: HashSet<usize> = holding[u].iter().copied().collect();
        if !holding[v].iter().any(|i| set.contains(i)) {
            return Err(TdViolation::EdgeUncovered(u, v));
        }
    }
    // subtree condition: BFS within the nodes holding v
    for v in 1..=n {
        let members: HashSet<usize> = holding[v].iter().copied().collect();
        let mut seen: HashSet<usize> = HashSet::new();
        let mut stack = vec![holding[v][0]];
        seen.insert(holding[v][0]);
        while let Some(x) = stack.pop() {
            for &y in &nbr[x] {
                if members.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        if seen.len() != members.len() {
            return Err(TdViolation::SubtreeBroken(v));
        }
    }
    Ok(())
}

/// Maximum-weight spanning tree over clique intersection sizes, validated
/// as a tree decomposition before being returned.
pub fn build_clique_tree(g: &Graph) -> Result<CliqueTree, DecompError> {
    if !g.is_connected() {
        return Err(DecompError::NotConnected);
    }
    let ord = mcs_ordering(g);
    let cliques = maximal_cliques(g, &ord).map_err(DecompError::NotChordal)?;
    let t = cliques.len();
    let sets: Vec<HashSet<usize>> = cliques
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();
    let weight = |i: usize, j: usize| cliques[i].iter().filter(|v| sets[j].contains(v)).count();

    // Prim, maximising intersection size; ties towards smaller node index.
    let mut in_tree = vec![false; t];
    in_tree[0] = true;
    let mut best: Vec<(usize, usize)> = (0..t).map(|j| (weight(0, j), 0)).collect();
    let mut tree_edges = Vec::new();
    for _ in 1..t {
        let mut pick = usize::MAX;
        for j in 0..t {
            if !in_tree[j] && (pick == usize::MAX || best[j].0 > best[pick].0) {
                pick = j;
            }
        }
        debug_assert!(best[pick].0 >= 1, "connected chordal graph");
        in_tree[pick] = true;
        tree_edges.push((best[pick].1.min(pick), best[pick].1.max(pick)));
        for j in 0..t {
            if !in_tree[j] {
                let w = weight(pick, j);
                if w > best[j].0 {
                    best[j] = (w, pick);
                }
            }
        }
    }
    tree_edges.sort_unstable();
    validate_tree_decomposition(g, &cliques, &tree_edges).map_err(DecompError::Invalid)?;
    Ok(CliqueTree {
        bags: cliques,
        tree_edges,
    })
}

/// Clique path for graphs in which every vertex lies in at most two
/// maximal cliques and the clique intersection graph is a path. The bags
/// are returned in path order, padded to uniform size, with the
/// interleaving property that bags two apart are disjoint.
pub fn clique_path_restricted(g: &Graph) -> Result<CliquePath, PathRejection> {
    if !g.is_connected() {
        return Err(PathRejection::NotConnected);
    }
    let ord = mcs_ordering(g);
    let cliques = maximal_cliques(g, &ord).map_err(PathRejection::NotChordal)?;
    let t = cliques.len();

    let n = g.vertex_count();
    let mut membership = vec![0usize; n + 1];
    for c in &cliques {
        for &v in c {
            membership[v] += 1;
        }
    }
    for v in 1..=n {
        if membership[v] > 2 {
            return Err(PathRejection::VertexInManyCliques(v, membership[v]));
        }
    }

    let sets: Vec<HashSet<usize>> = cliques
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();
    let mut nbr = vec![Vec::new(); t];
    for i in 0..t {
        for j in i + 1..t {
            if cliques[i].iter().any(|v| sets[j].contains(v)) {
                nbr[i].push(j);
                nbr[j].push(i);
            }
        }
    }
    // A path has max degree 2, exactly t-1 intersection edges and is
    // connected; anything else is rejected.
    let m: usize = nbr.iter().map(|x| x.len()).sum::<usize>() / 2;
    if t > 1 && (m != t - 1 || nbr.iter().any(|x| x.len() > 2)) {
        return Err(PathRejection::IntersectionNotAPath);
    }
    let mut order = Vec::with_capacity(t);
    if t == 1 {
        order.push(0);
    } else {
        let ends: Vec<usize> = (0..t).filter(|&i| nbr[i].len() == 1).collect();
        if ends.len() != 2 {
            return Err(PathRejection::IntersectionNotAPath);
        }
        // orient so that the lexicographically smaller endpoint bag comes first
        let start = if cliques[ends[0]] <= cliques[ends[1]] {
            ends[0]
        } else {
            ends[1]
        };
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            order.push(cur);
            let next = nbr[cur].iter().copied().find(|&x| x != prev);
            match next {
                Some(nx) => {
                    prev = cur;
                    cur = nx;
                }
                None => break,
            }
            if order.len() > t {
                return Err(PathRejection::IntersectionNotAPath);
            }
        }
        if order.len() != t {
            return Err(PathRejection::IntersectionNotAPath);
        }
    }

    let bags: Vec<Vec<usize>> = order.iter().map(|&i| cliques[i].clone()).collect();
    // full path-decomposition validation plus the skip-one disjointness
    let path_edges: Vec<(usize, usize)> = (1..t).map(|i| (i - 1, i)).collect();
    validate_tree_decomposition(g, &bags, &path_edges).map_err(PathRejection::ValidationFailed)?;
    for i in 1..t.saturating_sub(1) {
        let prev: HashSet<usize> = bags[i - 1].iter().copied().collect();
        if let Some(&v) = bags[i + 1].iter().find(|v| prev.contains(v)) {
            return Err(PathRejection::ValidationFailed(TdViolation::SubtreeBroken(
                v,
            )));
        }
    }

    let omega = bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut synthetic = Vec::new();
    let mut next_id = n + 1;
    let padded_bags: Vec<Vec<usize>> = bags
        .iter()
        .map(|b| {
            let mut p = b.clone();
            while p.len() < omega {
                p.push(next_id);
                synthetic.push(next_id);
                next_id += 1;
            }
            p
        })
        .collect();
    Ok(CliquePath {
        bags,
        padded_bags,
        synthetic,
        omega,
    })
}

impl CliquePath {
    /// The host extended with the synthetic padding vertices, each one
    /// adjacent to everything else in its bag.
    pub fn padded_graph(&self, g: &Graph) -> Graph {
        let max_id = g.vertex_count() + self.synthetic.len();
        let mut edges: HashSet<(usize, usize)> = g.edges().iter().copied().collect();
        let syn: HashSet<usize> = self.synthetic.iter().copied().collect();
        for bag in &self.padded_bags {
            for &s in bag.iter().filter(|v| syn.contains(v)) {
                for &x in bag {
                    if x != s {
                        edges.insert((s.min(x), s.max(x)));
                    }
                }
            }
        }
        Graph::from_edges(max_id, edges).expect("padded edges are valid")
    }
}

/// Smooth decomposition: clique-tree bags padded to uniform size from
/// their parents, with multi-vertex swaps subdivided one exchange at a
/// time.
pub fn smooth_tree_decomposition(g: &Graph) -> Result<SmoothTreeDecomposition, DecompError> {
    let ct = build_clique_tree(g)?;
    let t = ct.bags.len();
    let omega = ct.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let root = (0..t).find(|&i| ct.bags[i].len() == omega).unwrap();

    let mut nbr = vec![Vec::new(); t];
    for &(a, b) in &ct.tree_edges {
        nbr[a].push(b);
        nbr[b].push(a);
    }

    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut enter: Vec<Option<usize>> = Vec::new();
    let mut leave: Vec<Option<usize>> = Vec::new();

    let mut root_bag = ct.bags[root].clone();
    root_bag.sort_unstable();
    bags.push(root_bag);
    parent.push(None);
    enter.push(None);
    leave.push(None);

    // DFS over the clique tree; `at` maps clique-tree nodes to their padded
    // node index in the output.
    let mut stack = vec![(root, usize::MAX, 0usize)]; // (node, ct-parent, out-index of padded parent)
    let mut visited = vec![false; t];
    visited[root] = true;
    while let Some((node, _, out_parent)) = stack.pop() {
        for &child in &nbr[node] {
            if visited[child] {
                continue;
            }
            visited[child] = true;
            let parent_bag = bags[out_parent].clone();
            let child_set: HashSet<usize> = ct.bags[child].iter().copied().collect();
            // pad the child from its (already padded) parent
            let mut padded: Vec<usize> = ct.bags[child].clone();
            let mut fill: Vec<usize> = parent_bag
                .iter()
                .copied()
                .filter(|v| !child_set.contains(v))
                .collect();
            fill.sort_unstable();
            while padded.len() < omega {
                padded.push(fill.remove(0));
            }
            padded.sort_unstable();

            let pset: HashSet<usize> = parent_bag.iter().copied().collect();
            let cset: HashSet<usize> = padded.iter().copied().collect();
            let mut out: Vec<usize> = parent_bag
                .iter()
                .copied()
                .filter(|v| !cset.contains(v))
                .collect();
            let mut inn: Vec<usize> = padded
                .iter()
                .copied()
                .filter(|v| !pset.contains(v))
                .collect();
            out.sort_unstable();
            inn.sort_unstable();
            debug_assert_eq!(out.len(), inn.len());
            debug_assert!(!out.is_empty());

            // subdivide: swap one vertex per step along the chain
            let mut cur = parent_bag;
            let mut prev_idx = out_parent;
            for j in 0..out.len() {
                let pos = cur.iter().position(|&v| v == out[j]).unwrap();
                cur.remove(pos);
                cur.push(inn[j]);
                cur.sort_unstable();
                bags.push(cur.clone());
                parent.push(Some(prev_idx));
                enter.push(Some(inn[j]));
                leave.push(Some(out[j]));
                prev_idx = bags.len() - 1;
            }
            debug_assert_eq!(*bags.last().unwrap(), padded);
            stack.push((child, node, prev_idx));
        }
    }

    let preorder = preorder_of(&parent);
    let std = SmoothTreeDecomposition {
        bags,
        parent,
        enter,
        leave,
        preorder,
        omega,
    };
    validate_smooth_decomposition(g, &std).map_err(DecompError::Invalid)?;
    Ok(std)
}

fn preorder_of(parent: &[Option<usize>]) -> Vec<usize> {
    let t = parent.len();
    let mut children = vec![Vec::new(); t];
    let mut root = 0;
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => children[*p].push(i),
            None => root = i,
        }
    }
    let mut order = Vec::with_capacity(t);
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        order.push(x);
        for &c in children[x].iter().rev() {
            stack.push(c);
        }
    }
    order
}

/// The three smooth-decomposition invariants: a valid tree decomposition,
/// every bag of size exactly omega, adjacent bags exchanging one vertex.
pub fn validate_smooth_decomposition(
    g: &Graph,
    std: &SmoothTreeDecomposition,
) -> Result<(), TdViolation> {
    let edges: Vec<(usize, usize)> = std
        .parent
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|p| (p.min(i), p.max(i))))
        .collect();
    validate_tree_decomposition(g, &std.bags, &edges)?;
    for (i, bag) in std.bags.iter().enumerate() {
        if bag.len() != std.omega {
            return Err(TdViolation::BagSizeWrong {
                bag: i,
                size: bag.len(),
                expected: std.omega,
            });
        }
    }
    for (i, p) in std.parent.iter().enumerate() {
        if let Some(p) = p {
            let pset: HashSet<usize> = std.bags[*p].iter().copied().collect();
            let cset: HashSet<usize> = std.bags[i].iter().copied().collect();
            let gone = std.bags[*p].iter().filter(|v| !cset.contains(v)).count();
            let came = std.bags[i].iter().filter(|v| !pset.contains(v)).count();
            if gone != 1 || came != 1 {
                return Err(TdViolation::SwapNotSingle {
                    parent: *p,
                    child: i,
                });
            }
        }
    }
    Ok(())
}

/// Debug dump, one line per bag: `t <id> <parent|-> : v1 v2 ... vω`.
pub fn dump_decomposition(bags: &[Vec<usize>], parent: &[Option<usize>]) -> String {
    let mut out = String::new();
    for (i, bag) in bags.iter().enumerate() {
        let p = match parent[i] {
            Some(p) => (p + 1).to_string(),
            None => "-".to_string(),
        };
        let verts: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
        writeln!(out, "t {} {} : {}", i + 1, p, verts.join(" ")).unwrap();
    }
    out
}
