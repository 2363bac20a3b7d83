//! The layered digraph realizing a set-system matroid as a gammoid:
//! sources `E`, a middle layer `H`, and `k` sinks joined to all of `H`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::{general_construction, SetSystem};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{full_mask, GroundSubset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiddleKind {
    /// node for an element lying in two or more flats
    Shared { element: usize },
    /// one of the extra nodes owned by a single flat
    Flat { flat: usize, copy: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleNode {
    pub kind: MiddleKind,
    /// indices of the flats this node stands for
    pub label: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammoidGraph {
    n: usize,
    k: usize,
    source_labels: Vec<Vec<usize>>,
    middle: Vec<MiddleNode>,
    /// arcs from each source into `middle`
    adj: Vec<Vec<usize>>,
}

impl GammoidGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn middle(&self) -> &[MiddleNode] {
        &self.middle
    }

    pub fn source_labels(&self) -> &[Vec<usize>] {
        &self.source_labels
    }

    pub fn arcs(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum()
    }

    /// Maximum matching from the sources in `x` into the middle layer.
    /// Returns its size and the middle-to-source assignment.
    fn matching(&self, x: u128) -> (usize, Vec<Option<usize>>) {
        let mut owner: Vec<Option<usize>> = vec![None; self.middle.len()];
        let mut size = 0;
        for e in GroundSubset::raw(self.n, x).iter() {
            let mut seen = vec![false; self.middle.len()];
            if self.augment(e, &mut seen, &mut owner) {
                size += 1;
            }
        }
        (size, owner)
    }

    fn augment(&self, e: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &u in &self.adj[e] {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            if owner[u].is_none() || self.augment(owner[u].unwrap(), seen, owner) {
                owner[u] = Some(e);
                return true;
            }
        }
        false
    }

    /// Size of a largest linked set inside `x`: the matching number capped
    /// by the number of sinks.
    pub fn rank_bits(&self, x: u128) -> usize {
        self.matching(x).0.min(self.k)
    }

    pub fn rank(&self, x: &GroundSubset) -> usize {
        self.rank_bits(x.bits())
    }

    pub fn is_independent(&self, x: &GroundSubset) -> bool {
        x.len() <= self.k && self.matching(x.bits()).0 == x.len()
    }

    /// A set `A` inside `x` with fewer middle-layer neighbours than elements,
    /// whenever `x` has no complete matching.
    pub fn hall_deficiency(&self, x: &GroundSubset) -> Option<GroundSubset> {
        let (size, owner) = self.matching(x.bits());
        if size == x.len() {
            return None;
        }
        let matched: u128 = owner.iter().flatten().fold(0u128, |b, &e| b | 1u128 << e);
        let mut in_a = 0u128;
        let mut queue: VecDeque<usize> = x.iter().filter(|&e| matched >> e & 1 == 0).collect();
        for &e in &queue {
            in_a |= 1u128 << e;
        }
        while let Some(e) = queue.pop_front() {
            for &u in &self.adj[e] {
                if let Some(f) = owner[u] {
                    if in_a >> f & 1 == 0 {
                        in_a |= 1u128 << f;
                        queue.push_back(f);
                    }
                }
            }
        }
        Some(GroundSubset::raw(self.n, in_a))
    }

    /// Middle-layer neighbours of `a`.
    pub fn neighbourhood(&self, a: &GroundSubset) -> Vec<usize> {
        let mut v: Vec<usize> = a.iter().flat_map(|e| self.adj[e].iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Maximum number of vertex-disjoint paths from `x` to the sinks,
    /// by augmenting paths on the split-vertex network.
    pub fn linkage_rank(&self, x: &GroundSubset) -> usize {
        let h = self.middle.len();
        // nodes: 0 source, 1 sink, then in/out copies of sources, middle, sinks
        let src_in = |e: usize| 2 + 2 * e;
        let mid_in = |u: usize| 2 + 2 * self.n + 2 * u;
        let sink_in = |t: usize| 2 + 2 * self.n + 2 * h + 2 * t;
        let total = 2 + 2 * (self.n + h + self.k);
        let mut cap: Vec<Vec<(usize, i32)>> = vec![Vec::new(); total];
        let add = |cap: &mut Vec<Vec<(usize, i32)>>, a: usize, b: usize| {
            cap[a].push((b, 1));
            cap[b].push((a, 0));
        };
        for e in x.iter() {
            add(&mut cap, 0, src_in(e));
            add(&mut cap, src_in(e), src_in(e) + 1);
            for &u in &self.adj[e] {
                add(&mut cap, src_in(e) + 1, mid_in(u));
            }
        }
        for u in 0..h {
            add(&mut cap, mid_in(u), mid_in(u) + 1);
            for t in 0..self.k {
                add(&mut cap, mid_in(u) + 1, sink_in(t));
            }
        }
        for t in 0..self.k {
            add(&mut cap, sink_in(t), sink_in(t) + 1);
            add(&mut cap, sink_in(t) + 1, 1);
        }
        let mut flow = 0;
        loop {
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; total];
            let mut queue = VecDeque::from([0usize]);
            let mut reached = false;
            while let Some(v) = queue.pop_front() {
                if v == 1 {
                    reached = true;
                    break;
                }
                for (i, &(w, c)) in cap[v].iter().enumerate() {
                    if c > 0 && w != 0 && prev[w].is_none() {
                        prev[w] = Some((v, i));
                        queue.push_back(w);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut v = 1;
            while v != 0 {
                let (p, i) = prev[v].unwrap();
                cap[p][i].1 -= 1;
                let back = cap[v].iter().position(|&(w, _)| w == p).unwrap();
                cap[v][back].1 += 1;
                v = p;
            }
            flow += 1;
        }
        flow
    }

    /// Directed three-layer drawing.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph gammoid {\n  rankdir=TB;\n");
        s.push_str("  { rank=same;");
        for e in 0..self.n {
            let _ = write!(s, " s{e};");
        }
        s.push_str(" }\n  { rank=same;");
        for u in 0..self.middle.len() {
            let _ = write!(s, " h{u};");
        }
        s.push_str(" }\n  { rank=same;");
        for t in 0..self.k {
            let _ = write!(s, " t{t};");
        }
        s.push_str(" }\n");
        for (e, lab) in self.source_labels.iter().enumerate() {
            let _ = writeln!(s, "  s{e} [label=\"{e} {:?}\"];", lab);
        }
        for (u, node) in self.middle.iter().enumerate() {
            let name = match node.kind {
                MiddleKind::Shared { element } => format!("u{element}"),
                MiddleKind::Flat { flat, copy } => format!("v{flat}.{copy}"),
            };
            let _ = writeln!(s, "  h{u} [label=\"{name} {:?}\", shape=box];", node.label);
        }
        for t in 0..self.k {
            let _ = writeln!(s, "  t{t} [shape=doublecircle];");
        }
        for (e, a) in self.adj.iter().enumerate() {
            for &u in a {
                let _ = writeln!(s, "  s{e} -> h{u};");
            }
        }
        for u in 0..self.middle.len() {
            for t in 0..self.k {
                let _ = writeln!(s, "  h{u} -> t{t};");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Builds the layered graph for a set system satisfying the construction
/// hypotheses.
pub fn build_graph(sys: &SetSystem) -> Result<GammoidGraph> {
    sys.check_conditions()?;
    layered_graph(sys)
}

/// The same graph without checking the hypotheses first; callers compare
/// the result against a known matroid.
pub(crate) fn layered_graph(sys: &SetSystem) -> Result<GammoidGraph> {
    let n = sys.n();
    let flats = sys.flats();
    let source_labels: Vec<Vec<usize>> =
        (0..n).map(|e| (0..flats.len()).filter(|&i| flats[i].set.contains(e)).collect()).collect();
    let mut middle = Vec::new();
    for (e, lab) in source_labels.iter().enumerate() {
        if lab.len() >= 2 {
            middle.push(MiddleNode { kind: MiddleKind::Shared { element: e }, label: lab.clone() });
        }
    }
    for (i, f) in flats.iter().enumerate() {
        let used = middle.iter().filter(|u| u.label.contains(&i)).count();
        if used > f.rank {
            return Err(Error::construction(
                "(iv)",
                format!("flat {i} has {used} shared elements but rank {}", f.rank),
            ));
        }
        for copy in 0..f.rank - used {
            middle.push(MiddleNode { kind: MiddleKind::Flat { flat: i, copy }, label: vec![i] });
        }
    }
    let adj: Vec<Vec<usize>> = source_labels
        .iter()
        .map(|lab| {
            (0..middle.len()).filter(|&u| lab.iter().all(|i| middle[u].label.contains(i))).collect()
        })
        .collect();
    if let Some(e) = adj.iter().position(|a| a.is_empty()) {
        return Err(Error::construction("(ii)", format!("element {e} has no arc into the middle layer")));
    }
    Ok(GammoidGraph { n, k: sys.k(), source_labels, middle, adj })
}

pub fn gammoid_matroid(g: GammoidGraph) -> Matroid {
    Matroid::from_gammoid(g)
}

/// Largest ground set compared on every subset by [`equivalence_check`].
pub const EQUIVALENCE_EXHAUSTIVE_MAX_N: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub exhaustive: bool,
    pub subsets_checked: usize,
    pub mismatch: Option<GroundSubset>,
}

impl EquivalenceReport {
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares gammoid ranks with the general construction: every subset when
/// `n <= 14`, otherwise all subsets of 14-element windows over consecutive
/// flats plus `samples` random subsets.
pub fn equivalence_check(sys: &SetSystem, samples: usize, seed: u64) -> Result<EquivalenceReport> {
    let g = build_graph(sys)?;
    let m = general_construction(sys)?;
    let n = sys.n();
    let mut checked = 0usize;
    let mut test = |x: u128| -> Option<GroundSubset> {
        checked += 1;
        (g.rank_bits(x) != m.rank_bits(x)).then(|| GroundSubset::raw(n, x))
    };
    if n <= EQUIVALENCE_EXHAUSTIVE_MAX_N {
        for x in 0..1u128 << n {
            if let Some(bad) = test(x) {
                return Ok(EquivalenceReport { exhaustive: true, subsets_checked: checked, mismatch: Some(bad) });
            }
        }
        return Ok(EquivalenceReport { exhaustive: true, subsets_checked: checked, mismatch: None });
    }
    let flats = sys.flats();
    for start in 0..flats.len() {
        let mut window: Vec<usize> = Vec::new();
        for f in flats[start..].iter().chain(flats[..start].iter()) {
            for e in f.set.iter() {
                if !window.contains(&e) && window.len() < EQUIVALENCE_EXHAUSTIVE_MAX_N {
                    window.push(e);
                }
            }
        }
        let carrier = GroundSubset::from_elements(n, window)?;
        for x in carrier.subsets() {
            if let Some(bad) = test(x.bits()) {
                return Ok(EquivalenceReport { exhaustive: false, subsets_checked: checked, mismatch: Some(bad) });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = rng.gen::<u128>() & full_mask(n);
        if let Some(bad) = test(x) {
            return Ok(EquivalenceReport { exhaustive: false, subsets_checked: checked, mismatch: Some(bad) });
        }
    }
    Ok(EquivalenceReport { exhaustive: false, subsets_checked: checked, mismatch: None })
}
