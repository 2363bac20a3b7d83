use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{GroundSubset, MAX_ELEMENTS};

use super::{general_construction, ConstructionParams, SetSystem};

/// Simple undirected graph on `0..m` with positive integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    m: usize,
    /// `(i, j, gamma)` with `i < j`, sorted.
    edges: Vec<(usize, usize, usize)>,
}

impl WeightedGraph {
    pub fn new(m: usize, edges: Vec<(usize, usize, usize)>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (a, b, w) in edges {
            if a >= m || b >= m {
                return Err(Error::Format(format!("edge ({a},{b}) outside {m} vertices")));
            }
            if a == b {
                return Err(Error::Format(format!("self loop at {a}")));
            }
            if w == 0 {
                return Err(Error::Format(format!("edge ({a},{b}) has weight 0")));
            }
            out.push((a.min(b), a.max(b), w));
        }
        out.sort();
        for w in out.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::Format(format!("duplicate edge ({},{})", w[0].0, w[0].1)));
            }
        }
        Ok(WeightedGraph { m, edges: out })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn gamma(&self, i: usize, j: usize) -> usize {
        let (a, b) = (i.min(j), i.max(j));
        self.edges.iter().find(|e| e.0 == a && e.1 == b).map_or(0, |e| e.2)
    }

    /// Sum of the weights of edges at `v`.
    pub fn vertex_weight(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v || e.1 == v).map(|e| e.2).sum()
    }

    pub fn weight_sum(&self) -> usize {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Total weight of edges with both ends in the vertex mask.
    pub fn induced_weight(&self, verts: u64) -> usize {
        self.edges.iter().filter(|e| verts >> e.0 & 1 == 1 && verts >> e.1 & 1 == 1).map(|e| e.2).sum()
    }

    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        for &(a, b, _) in &self.edges {
            for c in b + 1..self.m {
                if self.gamma(a, c) > 0 && self.gamma(b, c) > 0 {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.m {
            let _ = writeln!(s, "  v{v} [label=\"{v}\"];");
        }
        for &(a, b, w) in &self.edges {
            let _ = writeln!(s, "  v{a} -- v{b} [label=\"{w}\"];");
        }
        s.push_str("}\n");
        s
    }
}

fn check_graph(g: &WeightedGraph, k: usize, r: usize, delta: usize) -> Result<()> {
    if !(0 < r && r < k) {
        return Err(Error::Domain(format!("need 0 < r < k, got r = {r}, k = {k}")));
    }
    if delta < 2 {
        return Err(Error::Domain(format!("need delta >= 2, got {delta}")));
    }
    if g.m() == 0 {
        return Err(Error::construction("(ii)", "graph has no vertices"));
    }
    if let Some((a, b, c)) = g.find_triangle() {
        return Err(Error::construction("(i)", format!("triangle {a},{b},{c}")));
    }
    if k + g.weight_sum() > r * g.m() {
        return Err(Error::construction("(ii)", format!("k = {k} exceeds r*m - sum gamma = {}", r * g.m() - g.weight_sum().min(r * g.m()))));
    }
    for v in 0..g.m() {
        if g.vertex_weight(v) >= r {
            return Err(Error::construction("(iii)", format!("vertex {v} has incident weight {} >= r = {r}", g.vertex_weight(v))));
        }
    }
    Ok(())
}

/// Set system of the graph construction. Vertices are processed in order;
/// `F_j` takes, for each earlier neighbour `i`, `gamma(i,j)` of the lowest
/// elements of `F_i` not yet shared, then fresh elements up to
/// `r + delta - 1`.
pub fn graph_set_system(g: &WeightedGraph, k: usize, r: usize, delta: usize) -> Result<SetSystem> {
    check_graph(g, k, r, delta)?;
    let size = r + delta - 1;
    let n = size * g.m() - g.weight_sum();
    if n > MAX_ELEMENTS {
        return Err(Error::GroundSetTooLarge { n, max: MAX_ELEMENTS });
    }
    let mut flats: Vec<Vec<usize>> = Vec::with_capacity(g.m());
    let mut shared = vec![false; n];
    let mut next = 0usize;
    for j in 0..g.m() {
        let mut f = Vec::with_capacity(size);
        for i in 0..j {
            let w = g.gamma(i, j);
            if w == 0 {
                continue;
            }
            let take: Vec<usize> = flats[i].iter().copied().filter(|&e| !shared[e]).take(w).collect();
            debug_assert_eq!(take.len(), w);
            for &e in &take {
                shared[e] = true;
            }
            f.extend(take);
        }
        while f.len() < size {
            f.push(next);
            next += 1;
        }
        f.sort_unstable();
        flats.push(f);
    }
    debug_assert_eq!(next, n);
    let flats = flats
        .into_iter()
        .map(|f| GroundSubset::from_elements(n, f).map(|s| (s, r)))
        .collect::<Result<Vec<_>>>()?;
    SetSystem::new(n, k, flats)
}

pub fn graph_construction(g: &WeightedGraph, k: usize, r: usize, delta: usize) -> Result<Matroid> {
    general_construction(&graph_set_system(g, k, r, delta)?)
}

/// `n` and `d` from the graph: `d = n - k + 1 - (delta-1) * max{|I| : r|I| -
/// gamma(I) < k}`.
pub fn graph_parameters(g: &WeightedGraph, k: usize, r: usize, delta: usize) -> Result<ConstructionParams> {
    check_graph(g, k, r, delta)?;
    let m = g.m();
    if m > 63 {
        return Err(Error::capacity("graph vertices", 63));
    }
    let n = (r + delta - 1) * m - g.weight_sum();
    // r|I| - gamma(I) grows with I, so extend only while below k.
    let mut best = 0usize;
    let mut stack: Vec<(u64, usize, usize)> = vec![(0, 0, 0)];
    while let Some((mask, size, next)) = stack.pop() {
        best = best.max(size);
        for v in next..m {
            let nm = mask | 1 << v;
            if r * (size + 1) < k + g.induced_weight(nm) {
                stack.push((nm, size + 1, v + 1));
            }
        }
    }
    Ok(ConstructionParams { n, k, d: n + 1 - k - (delta - 1) * best, r, delta })
}
