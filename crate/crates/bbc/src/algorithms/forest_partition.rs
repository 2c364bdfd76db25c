//! Gap-2 colouring for chordal hosts with C4-free backbones: partition
//! the vertices into few induced forests with no backbone edge inside a
//! class, then give class i the colour pair {3i-2, 3i-1}.
//!
//! The partition walks a smooth tree decomposition in preorder. Every
//! class keeps at most two members per bag (so each class has a width-1
//! decomposition and induces a forest) and never contains both ends of a
//! backbone edge. Entering vertices pick greedily; a deadlock triggers a
//! single re-classing repair, then bounded backtracking; if that fails
//! too, a structured error tells the dispatcher to fall back.

use super::{AlgorithmError, AlgorithmReport};
use crate::chordal::{check_peo, clique_number, mcs_ordering, transversal_independent_set};
use crate::colouring::{verify_backbone_colouring, Colouring};
use crate::decomp::{smooth_tree_decomposition, SmoothTreeDecomposition};
use crate::graph::Graph;
use crate::instance::BackboneInstance;
use std::cmp::Reverse;
use std::collections::{HashMap, HashSet};
use std::time::Instant;

const ALG: &str = "c4free";
const DEFAULT_BACKTRACK_BAGS: usize = 8;
const EXPANSION_BUDGET: usize = 200_000;

/// Disjoint classes covering the vertex set, each inducing a forest, with
/// every backbone edge crossing two classes.
#[derive(Clone, Debug)]
pub struct ForestPartition {
    pub classes: Vec<Vec<usize>>,
    pub k: usize,
}

/// A decomposition expressed over the host's own vertex ids.
struct MappedDecomp {
    bags: Vec<Vec<usize>>,
    preorder: Vec<usize>,
    enter: Vec<Option<usize>>,
}

impl MappedDecomp {
    fn from_std(std: &SmoothTreeDecomposition, to_original: Option<&[usize]>) -> Self {
        let map = |v: usize| to_original.map_or(v, |m| m[v]);
        MappedDecomp {
            bags: std
                .bags
                .iter()
                .map(|b| b.iter().map(|&v| map(v)).collect())
                .collect(),
            preorder: std.preorder.clone(),
            enter: std.enter.iter().map(|e| e.map(map)).collect(),
        }
    }
}

struct Walker<'a> {
    bags: &'a [Vec<usize>],
    b_adj: &'a [Vec<usize>],
    bags_of: &'a HashMap<usize, Vec<usize>>,
    k: usize,
    class_of: &'a mut Vec<Option<usize>>,
    backtrack_bags: usize,
}

struct Frame {
    pre_idx: usize,
    node: usize,
    vertex: usize,
    cands: Vec<usize>,
    next: usize,
    repair_done: bool,
    moves: Vec<(usize, usize)>, // (vertex, previous class) undo log
}

impl<'a> Walker<'a> {
    fn count_in_bag(&self, node: usize, class: usize, excluded: &[usize]) -> usize {
        self.bags[node]
            .iter()
            .filter(|&&w| !excluded.contains(&w) && self.class_of[w] == Some(class))
            .count()
    }

    fn candidates(&self, u: usize, node: usize) -> Vec<usize> {
        let mut count = vec![0usize; self.k];
        for &w in &self.bags[node] {
            if w != u {
                if let Some(c) = self.class_of[w] {
                    count[c] += 1;
                }
            }
        }
        let mut blocked = vec![false; self.k];
        for &w in &self.b_adj[u] {
            if let Some(c) = self.class_of[w] {
                blocked[c] = true;
            }
        }
        let mut cands: Vec<usize> = (0..self.k)
            .filter(|&c| count[c] <= 1 && !blocked[c])
            .collect();
        // prefer filling a half-used class, keeping bags near the
        // pairs-plus-few-singles shape
        cands.sort_by_key(|&c| (Reverse(count[c]), c));
        cands
    }

    /// One re-classing move: a bag-mate x vacates its class for u, moving
    /// to some class that stays legal in every bag containing x.
    fn find_repair(&self, u: usize, node: usize) -> Option<(usize, usize, usize)> {
        let mut mates: Vec<usize> = self.bags[node].iter().copied().filter(|&w| w != u).collect();
        mates.sort_unstable();
        for x in mates {
            let cx = match self.class_of[x] {
                Some(c) => c,
                None => continue,
            };
            // u joining cx once x leaves: room in this bag and no other
            // backbone neighbour of u in cx
            if self.count_in_bag(node, cx, &[u, x]) > 1 {
                continue;
            }
            let blocked_by_other = self
                .b_adj[u]
                .iter()
                .any(|&w| w != x && self.class_of[w] == Some(cx));
            if blocked_by_other {
                continue;
            }
            for c2 in 0..self.k {
                if c2 == cx {
                    continue;
                }
                if self
                    .b_adj[x]
                    .iter()
                    .any(|&w| self.class_of[w] == Some(c2))
                {
                    continue;
                }
                let fits_everywhere = self.bags_of[&x]
                    .iter()
                    .all(|&b| self.count_in_bag(b, c2, &[x]) <= 1);
                if fits_everywhere {
                    return Some((x, cx, c2));
                }
            }
        }
        None
    }

    fn walk(&mut self, preorder: &[usize], enter: &[Option<usize>]) -> Result<(), (usize, usize)> {
        let mut frames: Vec<Frame> = Vec::new();
        let mut i = 1usize; // preorder index; root is seeded
        let mut frontier = 1usize;
        let mut expansions = 0usize;
        while i < preorder.len() {
            let node = preorder[i];
            let u = enter[node].expect("non-root bags have an entering vertex");
            debug_assert!(self.class_of[u].is_none());
            let cands = self.candidates(u, node);
            frames.push(Frame {
                pre_idx: i,
                node,
                vertex: u,
                cands,
                next: 0,
                repair_done: false,
                moves: Vec::new(),
            });
            frontier = frontier.max(i);
            'assign: loop {
                let fi = frames.len() - 1;
                if frames[fi].next < frames[fi].cands.len() {
                    let c = frames[fi].cands[frames[fi].next];
                    frames[fi].next += 1;
                    self.class_of[frames[fi].vertex] = Some(c);
                    expansions += 1;
                    if expansions > EXPANSION_BUDGET {
                        return Err((frames[fi].node, frames[fi].vertex));
                    }
                    i = frames[fi].pre_idx + 1;
                    break 'assign;
                }
                if !frames[fi].repair_done {
                    frames[fi].repair_done = true;
                    if let Some((x, cx, c2)) = self.find_repair(frames[fi].vertex, frames[fi].node)
                    {
                        self.class_of[x] = Some(c2);
                        frames[fi].moves.push((x, cx));
                        // consume the vacated class as a synthetic candidate
                        frames[fi].cands.push(cx);
                        continue 'assign;
                    }
                }
                // dead end: revert this frame entirely and step back
                let failed = (frames[fi].node, frames[fi].vertex);
                for (x, prev) in frames[fi].moves.drain(..) {
                    self.class_of[x] = Some(prev);
                }
                self.class_of[frames[fi].vertex] = None;
                frames.pop();
                match frames.last() {
                    None => return Err(failed),
                    Some(prev) => {
                        if frontier - prev.pre_idx > self.backtrack_bags {
                            return Err(failed);
                        }
                        self.class_of[prev.vertex] = None;
                    }
                }
            }
        }
        Ok(())
    }

    /// Root-bag seeding: pair up backbone-non-adjacent vertices greedily
    /// (highest backbone degree first); the leftovers are pairwise
    /// backbone-adjacent, hence at most a triangle for C4-free backbones,
    /// and become singleton classes.
    fn seed_root(&mut self, root_bag: &[usize]) -> Result<(), (usize, usize)> {
        let node_sentinel = usize::MAX;
        let mut verts: Vec<usize> = root_bag.to_vec();
        let bag_set: HashSet<usize> = verts.iter().copied().collect();
        let bdeg = |v: usize| {
            self.b_adj[v]
                .iter()
                .filter(|w| bag_set.contains(w))
                .count()
        };
        verts.sort_by_key(|&v| (Reverse(bdeg(v)), v));
        let mut next_class = 0usize;
        let mut remaining = verts;
        while !remaining.is_empty() {
            if next_class >= self.k {
                return Err((node_sentinel, remaining[0]));
            }
            let u = remaining.remove(0);
            let partner = remaining
                .iter()
                .position(|&w| !self.b_adj[u].contains(&w));
            self.class_of[u] = Some(next_class);
            if let Some(p) = partner {
                let w = remaining.remove(p);
                self.class_of[w] = Some(next_class);
            }
            next_class += 1;
        }
        Ok(())
    }
}

fn run_partition(
    g: &Graph,
    decomps: &[MappedDecomp],
    backbone: &[(usize, usize)],
    k: usize,
    backtrack_bags: usize,
) -> Result<ForestPartition, AlgorithmError> {
    let n = g.vertex_count();
    let mut b_adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &(u, v) in backbone {
        b_adj[u].push(v);
        b_adj[v].push(u);
    }
    let mut class_of: Vec<Option<usize>> = vec![None; n + 1];

    for dec in decomps {
        let mut bags_of: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, bag) in dec.bags.iter().enumerate() {
            for &v in bag {
                bags_of.entry(v).or_default().push(i);
            }
        }
        let mut walker = Walker {
            bags: &dec.bags,
            b_adj: &b_adj,
            bags_of: &bags_of,
            k,
            class_of: &mut class_of,
            backtrack_bags,
        };
        let root = dec.preorder[0];
        walker
            .seed_root(&dec.bags[root])
            .and_then(|_| walker.walk(&dec.preorder, &dec.enter))
            .map_err(|(bag, vertex)| AlgorithmError::PartitionDeadlock { bag, vertex })?;
    }

    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 1..=n {
        let c = class_of[v].ok_or_else(|| AlgorithmError::Internal {
            algorithm: ALG,
            detail: format!("vertex {v} left unassigned by the partition walk"),
        })?;
        classes[c].push(v);
    }

    // independent re-checks: forests, bichromatic backbone edges, bag caps
    for (c, class) in classes.iter().enumerate() {
        if !induces_forest(g, class) {
            return Err(AlgorithmError::Internal {
                algorithm: ALG,
                detail: format!("class {c} does not induce a forest"),
            });
        }
    }
    for &(u, v) in backbone {
        if class_of[u] == class_of[v] {
            return Err(AlgorithmError::Internal {
                algorithm: ALG,
                detail: format!("backbone edge {{{u}, {v}}} inside class {:?}", class_of[u]),
            });
        }
    }
    for dec in decomps {
        for bag in &dec.bags {
            let mut count = vec![0usize; k];
            for &v in bag {
                count[class_of[v].unwrap()] += 1;
            }
            if count.iter().any(|&c| c > 2) {
                return Err(AlgorithmError::Internal {
                    algorithm: ALG,
                    detail: "some class has three members in one bag".into(),
                });
            }
        }
    }
    Ok(ForestPartition { classes, k })
}

fn induces_forest(g: &Graph, verts: &[usize]) -> bool {
    let set: HashSet<usize> = verts.iter().copied().collect();
    let edges = g
        .edges()
        .iter()
        .filter(|(u, v)| set.contains(u) && set.contains(v))
        .count();
    // acyclic iff |E| = |V| - components
    let mut seen: HashSet<usize> = HashSet::new();
    let mut comps = 0usize;
    for &s in verts {
        if seen.contains(&s) {
            continue;
        }
        comps += 1;
        let mut stack = vec![s];
        seen.insert(s);
        while let Some(u) = stack.pop() {
            for &w in g.neighbours(u) {
                if set.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
    }
    edges + comps == verts.len()
}

/// Partitions a connected chordal graph, given its smooth decomposition,
/// into at most `(omega+3)/2` classes, each inducing a forest, with every
/// backbone edge crossing classes. Requires odd omega.
pub fn partition_into_forests(
    g: &Graph,
    std: &SmoothTreeDecomposition,
    backbone: &[(usize, usize)],
) -> Result<ForestPartition, AlgorithmError> {
    if std.omega % 2 == 0 {
        return Err(AlgorithmError::Rejected {
            algorithm: ALG,
            condition: format!("clique number {} must be odd", std.omega),
        });
    }
    let h = Graph::from_edges(g.vertex_count(), backbone.iter().copied()).map_err(|e| {
        AlgorithmError::Rejected {
            algorithm: ALG,
            condition: format!("backbone edges invalid: {e}"),
        }
    })?;
    if let Some(w) = h.c4_witness() {
        return Err(AlgorithmError::Rejected {
            algorithm: ALG,
            condition: format!("backbone contains a 4-cycle through {w:?}"),
        });
    }
    let k = (std.omega + 3) / 2;
    let dec = MappedDecomp::from_std(std, None);
    run_partition(g, &[dec], backbone, k, DEFAULT_BACKTRACK_BAGS)
}

/// The odd-clique-number core: per-component smooth decompositions, one
/// shared set of classes.
fn partition_components(
    g: &Graph,
    backbone: &[(usize, usize)],
    k: usize,
) -> Result<ForestPartition, AlgorithmError> {
    let mut decomps = Vec::new();
    for comp in g.connected_components() {
        let (sub, to_original) = g.induced(&comp);
        let std = smooth_tree_decomposition(&sub).map_err(|e| AlgorithmError::Internal {
            algorithm: ALG,
            detail: format!("smooth decomposition failed on a chordal component: {e}"),
        })?;
        decomps.push(MappedDecomp::from_std(&std, Some(&to_original)));
    }
    run_partition(g, &decomps, backbone, k, DEFAULT_BACKTRACK_BAGS)
}

fn two_colour_classes(
    g: &Graph,
    partition: &ForestPartition,
    colours: &mut [u32],
) -> Result<(), AlgorithmError> {
    for (c, class) in partition.classes.iter().enumerate() {
        let lo = 3 * c as u32 + 1;
        let hi = lo + 1;
        let set: HashSet<usize> = class.iter().copied().collect();
        let mut assigned: HashMap<usize, bool> = HashMap::new();
        for &s in class {
            if assigned.contains_key(&s) {
                continue;
            }
            assigned.insert(s, false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let flip = !assigned[&u];
                for &w in g.neighbours(u) {
                    if set.contains(&w) {
                        match assigned.get(&w) {
                            None => {
                                assigned.insert(w, flip);
                                stack.push(w);
                            }
                            Some(&side) if side == assigned[&u] => {
                                return Err(AlgorithmError::Internal {
                                    algorithm: ALG,
                                    detail: format!("class {c} is not 2-colourable"),
                                });
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        for (&v, &side) in &assigned {
            colours[v] = if side { hi } else { lo };
        }
    }
    Ok(())
}

pub fn colour_forest_partition(
    inst: &BackboneInstance,
) -> Result<(Colouring, AlgorithmReport), AlgorithmError> {
    let start = Instant::now();
    let g = &inst.host;
    let n = g.vertex_count();
    if inst.q != 2 {
        return Err(AlgorithmError::Rejected {
            algorithm: ALG,
            condition: format!("gap parameter must be 2, instance has q={}", inst.q),
        });
    }
    let ord = mcs_ordering(g);
    if let Err(e) = check_peo(g, &ord) {
        return Err(AlgorithmError::Rejected {
            algorithm: ALG,
            condition: format!("host is not chordal ({e})"),
        });
    }
    if let Some(w) = inst.backbone_graph().c4_witness() {
        return Err(AlgorithmError::Rejected {
            algorithm: ALG,
            condition: format!("backbone contains a 4-cycle through {w:?}"),
        });
    }
    if n == 0 {
        let col = Colouring::from_assignment(vec![0]).unwrap();
        return Ok((
            col,
            AlgorithmReport {
                algorithm: ALG,
                n: 0,
                omega: 0,
                span: 0,
                bound: 0,
                certified: true,
                millis: start.elapsed().as_millis(),
            },
        ));
    }
    let omega = clique_number(g).expect("chordality validated");
    let mut colours = vec![0u32; n + 1];
    let bound;
    if omega % 2 == 1 {
        let k = (omega + 3) / 2;
        let partition = partition_components(g, inst.backbone_edges(), k)?;
        two_colour_classes(g, &partition, &mut colours)?;
        bound = (3 * omega as u32 + 7) / 2;
    } else {
        // even clique number: peel a transversal independent set, solve
        // the odd case on the rest, and park the peeled set two colours
        // above everything
        let iset = transversal_independent_set(g).expect("chordality validated");
        let iset_set: HashSet<usize> = iset.iter().copied().collect();
        let rest: Vec<usize> = g.vertices().filter(|v| !iset_set.contains(v)).collect();
        let (sub, to_original) = g.induced(&rest);
        let mut to_new = vec![0usize; n + 1];
        for (new, &old) in to_original.iter().enumerate().skip(1) {
            to_new[old] = new;
        }
        let sub_backbone: Vec<(usize, usize)> = inst
            .backbone_edges()
            .iter()
            .filter(|&&(u, v)| !iset_set.contains(&u) && !iset_set.contains(&v))
            .map(|&(u, v)| (to_new[u], to_new[v]))
            .collect();
        let sub_omega = clique_number(&sub).expect("induced subgraph stays chordal");
        if sub_omega != omega - 1 {
            return Err(AlgorithmError::Internal {
                algorithm: ALG,
                detail: format!(
                    "removing the transversal set left clique number {sub_omega}, expected {}",
                    omega - 1
                ),
            });
        }
        let k = (sub_omega + 3) / 2;
        let partition = partition_components(&sub, &sub_backbone, k)?;
        let mut sub_colours = vec![0u32; sub.vertex_count() + 1];
        two_colour_classes(&sub, &partition, &mut sub_colours)?;
        for v in 1..=sub.vertex_count() {
            colours[to_original[v]] = sub_colours[v];
        }
        let parked = (3 * (omega as u32 - 1) + 7) / 2 + 2;
        for &v in &iset {
            colours[v] = parked;
        }
        bound = (3 * omega as u32 + 8) / 2;
        debug_assert_eq!(parked, bound);
    }

    let col = Colouring::from_assignment(colours).expect("all vertices coloured");
    let report = verify_backbone_colouring(inst, &col).expect("total");
    if !report.valid {
        return Err(AlgorithmError::Internal {
            algorithm: ALG,
            detail: format!("verifier rejected the output: {:?}", report.violations),
        });
    }
    if report.span > bound {
        return Err(AlgorithmError::Internal {
            algorithm: ALG,
            detail: format!("span {} exceeds the bound {bound}", report.span),
        });
    }
    Ok((
        col,
        AlgorithmReport {
            algorithm: ALG,
            n,
            omega,
            span: report.span,
            bound,
            certified: true,
            millis: start.elapsed().as_millis(),
        },
    ))
}
