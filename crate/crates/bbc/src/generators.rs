//! Seeded, deterministic instance generators and backbone extractors.

use crate::graph::Graph;
use crate::instance::BackboneInstance;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

/// Everything needed to regenerate an instance byte-for-byte. Serialized
/// into a `c generator: ...` comment of generated files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    LowerBound { r: usize },
    RandomChordal { n: usize, omega: usize, seed: u64 },
    IntervalTwoClique { ell: usize, omega: usize, seed: u64 },
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::LowerBound { r } => write!(f, "lower-bound r={r}"),
            GeneratorSpec::RandomChordal { n, omega, seed } => {
                write!(f, "random-chordal n={n} omega={omega} seed={seed}")
            }
            GeneratorSpec::IntervalTwoClique { ell, omega, seed } => {
                write!(f, "interval-two-clique ell={ell} omega={omega} seed={seed}")
            }
        }
    }
}

fn combinations(pool: usize, k: usize) -> Vec<Vec<usize>> {
    // lexicographic k-subsets of 1..=pool
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (1..=k).collect();
    if k == 0 || k > pool {
        return out;
    }
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != pool - (k - 1 - i) {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The chordal family with bipartite backbones that forces spans of at
/// least 5/3 of the clique number: a core complete graph on `3r` vertices
/// plus, for every r-subset X of the core, a fresh complete graph on `2r`
/// vertices joined to X. The backbone keeps exactly the core-to-attachment
/// edges, with gap 2.
pub fn gen_lower_bound_family(r: usize) -> Result<BackboneInstance, GenError> {
    if r < 1 {
        return Err(GenError::BadParameter("r must be at least 1".into()));
    }
    if r > 5 {
        return Err(GenError::BadParameter(
            "r above 5 exceeds the instance-size cap".into(),
        ));
    }
    let omega = 3 * r;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 1..=omega {
        for v in u + 1..=omega {
            edges.push((u, v));
        }
    }
    let mut backbone: Vec<(usize, usize)> = Vec::new();
    let mut next = omega + 1;
    for x in combinations(omega, r) {
        let fresh: Vec<usize> = (next..next + 2 * r).collect();
        next += 2 * r;
        for i in 0..fresh.len() {
            for j in i + 1..fresh.len() {
                edges.push((fresh[i], fresh[j]));
            }
        }
        for &u in &x {
            for &w in &fresh {
                edges.push((u, w));
                backbone.push((u, w));
            }
        }
    }
    let host = Graph::from_edges(next - 1, edges).expect("construction is simple");
    Ok(BackboneInstance::new(host, backbone, 2).expect("backbone edges are host edges"))
}

/// Random connected chordal graph with clique number exactly `omega`:
/// a full-size root bag, then each new vertex is attached to a random
/// clique-subset of a random existing bag, forming a random tree of bags.
pub fn gen_random_chordal(n: usize, omega: usize, seed: u64) -> Result<Graph, GenError> {
    if omega < 2 || omega > n {
        return Err(GenError::BadParameter(format!(
            "need 2 <= omega <= n, got omega={omega}, n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bags: Vec<Vec<usize>> = vec![(1..=omega).collect()];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 1..=omega {
        for v in u + 1..=omega {
            edges.push((u, v));
        }
    }
    for v in omega + 1..=n {
        let parent = &bags[rng.random_range(0..bags.len())];
        let take = rng.random_range(1..=parent.len().min(omega - 1));
        let mut sep = parent.clone();
        sep.shuffle(&mut rng);
        sep.truncate(take);
        sep.sort_unstable();
        for &u in &sep {
            edges.push((u.min(v), u.max(v)));
        }
        let mut bag = sep;
        bag.push(v);
        bags.push(bag);
    }
    let g = Graph::from_edges(n, edges).expect("fresh vertices cannot duplicate edges");
    debug_assert!(crate::chordal::is_chordal(&g));
    debug_assert_eq!(crate::chordal::clique_number(&g).unwrap(), omega);
    Ok(g)
}

/// Interval graph built directly as a clique path: `ell` bags of size
/// `omega`, consecutive overlaps at least 1, and the two overlap sets of
/// each bag disjoint so every vertex lies in at most two maximal cliques.
pub fn gen_random_interval_two_clique(
    ell: usize,
    omega: usize,
    seed: u64,
) -> Result<Graph, GenError> {
    if ell < 1 || omega < 2 {
        return Err(GenError::BadParameter(format!(
            "need ell >= 1 and omega >= 2, got ell={ell}, omega={omega}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut next = 1usize;
    let first: Vec<usize> = (0..omega)
        .map(|_| {
            let v = next;
            next += 1;
            v
        })
        .collect();
    bags.push(first);
    let mut prev_overlap: Vec<usize> = Vec::new(); // overlap of bags[i-1] with bags[i-2]
    for _ in 1..ell {
        let last = bags.last().unwrap().clone();
        let carriable: Vec<usize> = last
            .iter()
            .copied()
            .filter(|v| !prev_overlap.contains(v))
            .collect();
        // overlap >= 1, and strictly below omega so bags stay distinct
        let hi = carriable.len().min(omega - 1);
        let take = rng.random_range(1..=hi);
        let mut overlap = carriable;
        overlap.shuffle(&mut rng);
        overlap.truncate(take);
        overlap.sort_unstable();
        let mut bag = overlap.clone();
        while bag.len() < omega {
            bag.push(next);
            next += 1;
        }
        bags.push(bag);
        prev_overlap = overlap;
    }
    let n = next - 1;
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    for bag in &bags {
        for i in 0..bag.len() {
            for j in i + 1..bag.len() {
                edges.insert((bag[i].min(bag[j]), bag[i].max(bag[j])));
            }
        }
    }
    let g = Graph::from_edges(n, edges).expect("bags index valid vertices");
    Ok(g)
}

/// Maximal spanning forest from a random edge order (a spanning tree per
/// connected component).
pub fn extract_spanning_forest(g: &Graph, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<(usize, usize)> = g.edges().to_vec();
    order.shuffle(&mut rng);
    let mut dsu: Vec<usize> = (0..=g.vertex_count()).collect();
    fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
        if dsu[x] != x {
            let r = find(dsu, dsu[x]);
            dsu[x] = r;
        }
        dsu[x]
    }
    let mut forest = Vec::new();
    for (u, v) in order {
        let (ru, rv) = (find(&mut dsu, u), find(&mut dsu, v));
        if ru != rv {
            dsu[ru] = rv;
            forest.push((u.min(v), u.max(v)));
        }
    }
    forest.sort_unstable();
    forest
}

/// Host edges crossing a random vertex 2-partition: the maximal bipartite
/// sub-backbone of the sampled cut.
pub fn extract_bipartite_backbone(g: &Graph, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side: Vec<bool> = (0..=g.vertex_count()).map(|_| rng.random_bool(0.5)).collect();
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| side[u] != side[v])
        .collect()
}

/// Greedy maximal subset of host edges that stays C4-free as a subgraph:
/// an edge is kept only while no vertex pair reaches two common
/// neighbours.
pub fn extract_c4free_backbone(g: &Graph, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let mut order: Vec<(usize, usize)> = g.edges().to_vec();
    order.shuffle(&mut rng);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut common: HashSet<(usize, usize)> = HashSet::new(); // pairs with exactly one common neighbour
    let mut kept = Vec::new();
    'edges: for (u, v) in order {
        // v becomes a common neighbour of (u, x) for every backbone
        // neighbour x of v, and symmetrically
        for &x in &adj[v] {
            if x != u && common.contains(&(u.min(x), u.max(x))) {
                continue 'edges;
            }
        }
        for &y in &adj[u] {
            if y != v && common.contains(&(v.min(y), v.max(y))) {
                continue 'edges;
            }
        }
        for &x in &adj[v] {
            if x != u {
                common.insert((u.min(x), u.max(x)));
            }
        }
        for &y in &adj[u] {
            if y != v {
                common.insert((v.min(y), v.max(y)));
            }
        }
        adj[u].push(v);
        adj[v].push(u);
        kept.push((u.min(v), u.max(v)));
    }
    kept.sort_unstable();
    kept
}
