//! Chordality machinery: maximum-cardinality search, perfect elimination
//! orderings, maximal cliques, greedy clique-number colourings and
//! transversal independent sets.

use crate::colouring::Colouring;
use crate::graph::Graph;
use thiserror::Error;

/// An elimination ordering: `order[0]` is eliminated first. It is a
/// perfect elimination ordering when every vertex's later neighbours form
/// a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrdering {
    pub order: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeoError {
    #[error("ordering is not a permutation of the vertices")]
    NotPermutation,
    #[error("later neighbours {u} and {w} of vertex {v} are not adjacent")]
    NonCliquePair { v: usize, u: usize, w: usize },
}

/// Maximum-cardinality search. Ties are broken towards the smallest
/// vertex id. The returned ordering is the reversed visit sequence, so
/// that for a chordal graph it passes [`check_peo`] directly.
pub fn mcs_ordering(g: &Graph) -> EliminationOrdering {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n + 1];
    let mut visited = vec![false; n + 1];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = 0usize;
        for v in 1..=n {
            if !visited[v] && (best == 0 || weight[v] > weight[best]) {
                best = v;
            }
        }
        visited[best] = true;
        visit.push(best);
        for &w in g.neighbours(best) {
            if !visited[w] {
                weight[w] += 1;
            }
        }
    }
    visit.reverse();
    EliminationOrdering { order: visit }
}

/// True iff each vertex's later neighbours form a clique. On failure
/// returns a non-adjacent later-neighbour pair as witness.
pub fn check_peo(g: &Graph, ord: &EliminationOrdering) -> Result<(), PeoError> {
    let n = g.vertex_count();
    if ord.order.len() != n {
        return Err(PeoError::NotPermutation);
    }
    let mut pos = vec![usize::MAX; n + 1];
    for (i, &v) in ord.order.iter().enumerate() {
        if v == 0 || v > n || pos[v] != usize::MAX {
            return Err(PeoError::NotPermutation);
        }
        pos[v] = i;
    }
    for &v in &ord.order {
        let later: Vec<usize> = g
            .neighbours(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        for i in 0..later.len() {
            for j in i + 1..later.len() {
                if !g.has_edge(later[i], later[j]) {
                    return Err(PeoError::NonCliquePair {
                        v,
                        u: later[i],
                        w: later[j],
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn is_chordal(g: &Graph) -> bool {
    check_peo(g, &mcs_ordering(g)).is_ok()
}

/// Word-packed vertex sets for the maximality filter below.
fn bitset_rows(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    let words = n / 64 + 1;
    let mut rows = vec![vec![0u64; words]; n + 1];
    for v in 1..=n {
        for &w in g.neighbours(v) {
            rows[v][w / 64] |= 1 << (w % 64);
        }
    }
    rows
}

/// The maximal cliques of a chordal graph, derived from a perfect
/// elimination ordering. Every maximal clique arises as a vertex together
/// with its later neighbours; non-maximal candidates are filtered out by
/// checking for an outside vertex dominating the candidate.
pub fn maximal_cliques(g: &Graph, ord: &EliminationOrdering) -> Result<Vec<Vec<usize>>, PeoError> {
    check_peo(g, ord)?;
    let n = g.vertex_count();
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in ord.order.iter().enumerate() {
        pos[v] = i;
    }
    let rows = bitset_rows(g);
    let words = n / 64 + 1;
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
    for &v in &ord.order {
        let mut cand: Vec<usize> = g
            .neighbours(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        cand.push(v);
        cand.sort_unstable();
        if seen.contains(&cand) {
            continue;
        }
        // common = vertices adjacent to every member of the candidate;
        // members kill themselves (w not in N(w)), so any survivor is an
        // outside dominator and the candidate is not maximal.
        let mut common = vec![u64::MAX; words];
        for &c in &cand {
            for (a, b) in common.iter_mut().zip(&rows[c]) {
                *a &= b;
            }
        }
        common[0] &= !1; // drop the unused id 0
        let extra = n % 64 + 1;
        if extra < 64 {
            common[words - 1] &= (1u64 << extra) - 1;
        }
        if common.iter().all(|&w| w == 0) {
            seen.insert(cand.clone());
            out.push(cand);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Clique number via MCS + maximal cliques. Errors on non-chordal input.
pub fn clique_number(g: &Graph) -> Result<usize, PeoError> {
    let ord = mcs_ordering(g);
    let cliques = maximal_cliques(g, &ord)?;
    Ok(cliques.iter().map(|c| c.len()).max().unwrap_or(0))
}

/// Greedy colouring along the reverse elimination ordering. For a chordal
/// graph this uses exactly as many colours as the largest clique.
pub fn greedy_omega_colouring(g: &Graph, ord: &EliminationOrdering) -> Result<Colouring, PeoError> {
    check_peo(g, ord)?;
    let n = g.vertex_count();
    let mut colours = vec![0u32; n + 1];
    for &v in ord.order.iter().rev() {
        let mut used: Vec<u32> = g
            .neighbours(v)
            .iter()
            .map(|&w| colours[w])
            .filter(|&c| c != 0)
            .collect();
        used.sort_unstable();
        used.dedup();
        let mut c = 1u32;
        for u in used {
            if u == c {
                c += 1;
            } else if u > c {
                break;
            }
        }
        colours[v] = c;
    }
    Ok(Colouring::from_assignment(colours).expect("all vertices coloured"))
}

/// An independent set meeting every maximum clique: the class of the top
/// colour in the greedy clique-number colouring. Removing it drops the
/// clique number by exactly one.
pub fn transversal_independent_set(g: &Graph) -> Result<Vec<usize>, PeoError> {
    let ord = mcs_ordering(g);
    let col = greedy_omega_colouring(g, &ord)?;
    let omega = col.span();
    Ok(col
        .iter()
        .filter(|&(_, c)| c == omega)
        .map(|(v, _)| v)
        .collect())
}
