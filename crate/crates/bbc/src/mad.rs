//! Exact maximum average degree via a flow-based densest-subgraph test,
//! with a subset-enumeration oracle for small graphs. All arithmetic is
//! exact integer-pair rationals.

use crate::graph::Graph;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Exact rational with positive denominator, always reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    num: i64,
    den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Ratio {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Ratio { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse `{0}` as a rational (use n, n/d or a decimal)")]
pub struct RatioParseError(String);

impl FromStr for Ratio {
    type Err = RatioParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RatioParseError(s.to_string());
        if let Some((a, b)) = s.split_once('/') {
            let num: i64 = a.trim().parse().map_err(|_| bad())?;
            let den: i64 = b.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            return Ok(Ratio::new(num, den));
        }
        if let Some((a, b)) = s.split_once('.') {
            let whole: i64 = if a.is_empty() {
                0
            } else {
                a.parse().map_err(|_| bad())?
            };
            if b.is_empty() || b.len() > 9 || !b.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let frac: i64 = b.parse().map_err(|_| bad())?;
            let scale = 10i64.pow(b.len() as u32);
            return Ok(Ratio::new(whole * scale + frac, scale));
        }
        let n: i64 = s.trim().parse().map_err(|_| bad())?;
        Ok(Ratio::from_int(n))
    }
}

/// Exact maximum average degree and a witness subgraph achieving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MadResult {
    pub value: Ratio,
    pub witness: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph too large for the brute-force oracle: {0} > {1} vertices")]
pub struct CapExceeded(pub usize, pub usize);

fn average_degree(g: &Graph, verts: &[usize]) -> Ratio {
    let set: std::collections::HashSet<usize> = verts.iter().copied().collect();
    let e = g
        .edges()
        .iter()
        .filter(|(u, v)| set.contains(u) && set.contains(v))
        .count();
    Ratio::new(2 * e as i64, verts.len() as i64)
}

// ---------------------------------------------------------------------
// Dinic max-flow on small networks
// ---------------------------------------------------------------------

struct Dinic {
    to: Vec<usize>,
    cap: Vec<i64>,
    head: Vec<Vec<usize>>, // arc indices per node
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic {
            to: Vec::new(),
            cap: Vec::new(),
            head: vec![Vec::new(); nodes],
            level: vec![-1; nodes],
            iter: vec![0; nodes],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        let mut q = std::collections::VecDeque::from([s]);
        self.level[s] = 0;
        while let Some(u) = q.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, f: i64) -> i64 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.head[u].len() {
            let e = self.head[u][self.iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.iter.fill(0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    fn source_side(&mut self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Tests whether some subgraph has density strictly above `num/den`
/// (density is |E(S)|/|S|). Returns the maximiser's vertex set if so.
///
/// Network: source -> v with capacity den*deg(v), both arc directions of
/// each edge with capacity den, v -> sink with capacity 2*num. A cut
/// keeping S on the source side costs 2*den*(m - (|E(S)| - g|S|)), so the
/// min cut drops below 2*m*den exactly when the guess is beaten.
fn densest_above(h: &Graph, num: i64, den: i64) -> Option<Vec<usize>> {
    let n = h.vertex_count();
    let m = h.edge_count() as i64;
    let (s, t) = (0, n + 1);
    let mut net = Dinic::new(n + 2);
    for v in 1..=n {
        net.add_edge(s, v, den * h.degree(v) as i64);
        net.add_edge(v, t, 2 * num);
    }
    for &(u, v) in h.edges() {
        net.add_edge(u, v, den);
        net.add_edge(v, u, den);
    }
    let flow = net.max_flow(s, t);
    if flow < 2 * m * den {
        let side = net.source_side(s);
        let verts: Vec<usize> = (1..=n).filter(|&v| side[v]).collect();
        debug_assert!(!verts.is_empty());
        Some(verts)
    } else {
        None
    }
}

/// Exact maximum average degree. Starting from the whole graph, each round
/// runs the flow test against the best density found so far and stops when
/// no subgraph beats it; every achieved density is an exact rational with
/// denominator at most n, so the iteration terminates exactly.
pub fn exact_mad(h: &Graph) -> MadResult {
    let n = h.vertex_count();
    if n == 0 {
        return MadResult {
            value: Ratio::from_int(0),
            witness: Vec::new(),
        };
    }
    if h.edge_count() == 0 {
        return MadResult {
            value: Ratio::from_int(0),
            witness: vec![1],
        };
    }
    let mut witness: Vec<usize> = h.vertices().collect();
    let mut density = Ratio::new(h.edge_count() as i64, n as i64);
    while let Some(better) = densest_above(h, density.num(), density.den()) {
        let d = average_degree(h, &better);
        let cand = Ratio::new(d.num(), 2 * d.den()); // |E|/|S|
        debug_assert!(cand > density);
        density = cand;
        witness = better;
    }
    MadResult {
        value: average_degree(h, &witness),
        witness,
    }
}

/// Oracle: maximises 2|E(S)|/|S| over all non-empty subsets. Capped at 15
/// vertices.
pub fn brute_force_mad(h: &Graph) -> Result<MadResult, CapExceeded> {
    let n = h.vertex_count();
    if n > 15 {
        return Err(CapExceeded(n, 15));
    }
    if n == 0 {
        return Ok(MadResult {
            value: Ratio::from_int(0),
            witness: Vec::new(),
        });
    }
    let mut best = MadResult {
        value: Ratio::new(-1, 1),
        witness: Vec::new(),
    };
    for mask in 1u32..(1 << n) {
        let verts: Vec<usize> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        let av = average_degree(h, &verts);
        if av > best.value {
            best = MadResult {
                value: av,
                witness: verts,
            };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, e).unwrap()
    }

    #[test]
    fn ratio_basics() {
        assert_eq!(Ratio::new(4, 8), Ratio::new(1, 2));
        assert_eq!(Ratio::new(3, -6), Ratio::new(-1, 2));
        assert!(Ratio::new(2, 3) < Ratio::new(3, 4));
        assert_eq!("3/2".parse::<Ratio>().unwrap(), Ratio::new(3, 2));
        assert_eq!("2.5".parse::<Ratio>().unwrap(), Ratio::new(5, 2));
        assert_eq!("7".parse::<Ratio>().unwrap(), Ratio::from_int(7));
        assert!("x".parse::<Ratio>().is_err());
        assert!("1/0".parse::<Ratio>().is_err());
        assert_eq!(Ratio::new(3, 2).to_string(), "3/2");
        assert_eq!(Ratio::from_int(2).to_string(), "2");
    }

    #[test]
    fn mad_of_k4() {
        let r = exact_mad(&complete(4));
        assert_eq!(r.value, Ratio::from_int(3));
        assert_eq!(r.witness, vec![1, 2, 3, 4]);
    }

    #[test]
    fn mad_of_p4_matches_subset_oracle() {
        let p4 = Graph::from_edges(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let exact = exact_mad(&p4);
        let brute = brute_force_mad(&p4).unwrap();
        assert_eq!(exact.value, Ratio::new(3, 2));
        assert_eq!(exact.value, brute.value);
        // witness re-check: its average degree equals the value
        assert_eq!(average_degree(&p4, &exact.witness), exact.value);
    }

    #[test]
    fn mad_classics() {
        let c4 = Graph::from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert_eq!(exact_mad(&c4).value, Ratio::from_int(2));
        assert_eq!(brute_force_mad(&c4).unwrap().value, Ratio::from_int(2));

        let star = Graph::from_edges(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(exact_mad(&star).value, Ratio::new(3, 2));

        // K4 minus one edge: the whole graph, 2*5/4
        let k4e = Graph::from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
        assert_eq!(brute_force_mad(&k4e).unwrap().value, Ratio::new(5, 2));
        assert_eq!(exact_mad(&k4e).value, Ratio::new(5, 2));
    }

    #[test]
    fn trees_stay_below_two() {
        use crate::generators::{extract_spanning_forest, gen_random_chordal};
        for seed in 0..10u64 {
            let g = gen_random_chordal(40, 5, seed).unwrap();
            let forest = extract_spanning_forest(&g, seed);
            let f = Graph::from_edges(40, forest.iter().copied()).unwrap();
            let r = exact_mad(&f);
            assert!(r.value < Ratio::from_int(2), "forest Mad {} >= 2", r.value);
        }
    }

    #[test]
    fn exact_matches_oracle_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.random_range(1..=10);
            let mut edges = Vec::new();
            for u in 1..=n {
                for v in u + 1..=n {
                    if rng.random_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let a = exact_mad(&g);
            let b = brute_force_mad(&g).unwrap();
            assert_eq!(a.value, b.value, "graph {g:?}");
            assert_eq!(average_degree(&g, &a.witness), a.value);
        }
    }

    #[test]
    fn oracle_cap() {
        assert!(brute_force_mad(&Graph::new(16)).is_err());
    }

    #[test]
    fn edgeless_graph() {
        let r = exact_mad(&Graph::new(3));
        assert_eq!(r.value, Ratio::from_int(0));
        assert_eq!(r.witness, vec![1]);
    }
}
