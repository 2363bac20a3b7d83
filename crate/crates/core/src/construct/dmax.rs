use std::fmt;

use crate::error::{Error, Result};
use crate::lrc::{ceil_div, min_distance, singleton_bound};
use crate::matroid::Matroid;
use crate::subset::{GroundSubset, MAX_ELEMENTS};

use super::{general_construction, graph_construction, SetSystem, WeightedGraph};

/// The quantities `h = ceil(k/r)`, `a = hr - k`, `M = ceil(n/(r+delta-1))`
/// and `b = M(r+delta-1) - n` for a feasible parameter tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThmParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub delta: usize,
    pub h: usize,
    pub a: usize,
    pub blocks: usize,
    pub b: usize,
}

impl ThmParams {
    pub fn new(n: usize, k: usize, r: usize, delta: usize) -> Result<Self> {
        if r == 0 || r > k {
            return Err(Error::Domain(format!("need 0 < r <= k, got r = {r}, k = {k}")));
        }
        if delta < 2 {
            return Err(Error::Domain(format!("need delta >= 2, got {delta}")));
        }
        let h = ceil_div(k, r);
        if k + h * (delta - 1) > n {
            return Err(Error::Domain(format!("infeasible: k = {k} > n - ceil(k/r)(delta-1) = {}", n as i64 - (h * (delta - 1)) as i64)));
        }
        let l = r + delta - 1;
        let blocks = ceil_div(n, l);
        Ok(ThmParams { n, k, r, delta, h, a: h * r - k, blocks, b: blocks * l - n })
    }

    pub fn block_size(&self) -> usize {
        self.r + self.delta - 1
    }

    pub fn bound(&self) -> usize {
        singleton_bound(self.n, self.k, self.r, self.delta) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    REqK,
    I,
    IiiYes,
    IiiNo,
    IvYes,
    VYes,
    NonexistI,
    Unknown,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::REqK => "r_eq_k",
            CaseTag::I => "i",
            CaseTag::IiiYes => "iii_yes",
            CaseTag::IiiNo => "iii_no",
            CaseTag::IvYes => "iv_yes",
            CaseTag::VYes => "v_yes",
            CaseTag::NonexistI => "nonexist_i",
            CaseTag::Unknown => "unknown",
        }
    }

    /// `Some(true)` when a matroid meeting the bound exists, `Some(false)`
    /// when none does, `None` when undecided.
    pub fn perfect(&self) -> Option<bool> {
        match self {
            CaseTag::REqK | CaseTag::I | CaseTag::IiiYes | CaseTag::IvYes | CaseTag::VYes => Some(true),
            CaseTag::IiiNo | CaseTag::NonexistI => Some(false),
            CaseTag::Unknown => None,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which construction produced `d_lower`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerBoundSource {
    /// the witness meets the bound
    Perfect,
    /// disjoint blocks with one double-length block (needs `b >= r`)
    DoubleBlock,
    /// disjoint blocks with one short block of rank `r - b` (needs `b < r`)
    ShortBlock,
}

impl LowerBoundSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            LowerBoundSource::Perfect => "perfect",
            LowerBoundSource::DoubleBlock => "double_block",
            LowerBoundSource::ShortBlock => "short_block",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DmaxVerdict {
    pub params: ThmParams,
    pub case: CaseTag,
    pub bound: usize,
    pub d_upper: usize,
    pub d_lower: usize,
    pub lower_source: LowerBoundSource,
    pub witness: Matroid,
    pub witness_d: usize,
}

impl DmaxVerdict {
    pub fn perfect(&self) -> Option<bool> {
        self.case.perfect()
    }
}

fn blocks_system(n: usize, k: usize, blocks: &[(usize, usize)]) -> Result<SetSystem> {
    if n > MAX_ELEMENTS {
        return Err(Error::GroundSetTooLarge { n, max: MAX_ELEMENTS });
    }
    let mut next = 0;
    let mut flats = Vec::with_capacity(blocks.len());
    for &(size, rank) in blocks {
        flats.push((GroundSubset::from_elements(n, next..next + size)?, rank));
        next += size;
    }
    debug_assert_eq!(next, n);
    SetSystem::new(n, k, flats)
}

fn need(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::NotApplicable(what.to_string()))
    }
}

/// `M-1` full blocks and one block of size `r+delta-1-b`, rank `r-b`.
pub fn gen_blocks_case_i(n: usize, k: usize, r: usize, delta: usize) -> Result<Matroid> {
    let p = ThmParams::new(n, k, r, delta)?;
    need(r < k, "needs r < k")?;
    need(p.a >= p.b, "needs a >= b")?;
    let l = p.block_size();
    let mut blocks = vec![(l, r); p.blocks - 1];
    blocks.push((l - p.b, r - p.b));
    general_construction(&blocks_system(n, k, &blocks)?)
}

/// `M-2` full blocks and one block of size `2(r+delta-1)-b` and rank `r`.
pub fn gen_blocks_case_ii(n: usize, k: usize, r: usize, delta: usize) -> Result<Matroid> {
    let p = ThmParams::new(n, k, r, delta)?;
    need(r < k, "needs r < k")?;
    need(p.b > p.a && p.b >= r, "needs b > a and b >= r")?;
    need(p.blocks >= 2, "needs at least two blocks")?;
    let l = p.block_size();
    let mut blocks = vec![(l, r); p.blocks - 2];
    blocks.push((2 * l - p.b, r));
    general_construction(&blocks_system(n, k, &blocks)?)
}

/// `M-1` full blocks and one block of size `r+delta-1-b` and rank `r-b`;
/// gives `d >= n-k+1-ceil(k/r)(delta-1)` whenever `b < r`.
pub fn gen_blocks_almost_tight(n: usize, k: usize, r: usize, delta: usize) -> Result<Matroid> {
    let p = ThmParams::new(n, k, r, delta)?;
    need(r < k, "needs r < k")?;
    need(p.b < r, "needs b < r")?;
    let l = p.block_size();
    let mut blocks = vec![(l, r); p.blocks - 1];
    blocks.push((l - p.b, r - p.b));
    general_construction(&blocks_system(n, k, &blocks)?)
}

/// Vertex-disjoint unit-weight paths padded with isolated vertices.
pub fn paths_graph_case_iii(n: usize, k: usize, r: usize, delta: usize) -> Result<WeightedGraph> {
    let p = ThmParams::new(n, k, r, delta)?;
    let (h, a, b) = (p.h, p.a, p.b);
    need(r < k && b > a && a + 1 < h, "needs b > a and a < ceil(k/r) - 1")?;
    need(h / 2 <= a, "needs floor(ceil(k/r)/2) <= a")?;
    let t = a / (h - 1 - a);
    need(t * p.blocks >= t * (h - 1) + (b - a) * (t + 1), "block count requirement fails")?;
    let s = (h - 1) / (h - 1 - a);
    let u = h - 1 - a + ceil_div(b - a, s - 1);
    let x = h - 1 - s * (h - 1 - a);
    let mut lens = Vec::with_capacity(u);
    for i in 1..=u {
        let len = if i <= x {
            s + 1
        } else if i < u || (b - a) % (s - 1) == 0 {
            s
        } else {
            b - a - (b - a) / (s - 1) * (s - 1) + 1
        };
        lens.push(len);
    }
    let total: usize = lens.iter().sum();
    need(total <= p.blocks, "paths need more vertices than blocks")?;
    let mut edges = Vec::new();
    let mut v = 0;
    for len in lens {
        for j in 0..len - 1 {
            edges.push((v + j, v + j + 1, 1));
        }
        v += len;
    }
    WeightedGraph::new(p.blocks, edges)
}

pub fn gen_paths_case_iii(n: usize, k: usize, r: usize, delta: usize) -> Result<Matroid> {
    graph_construction(&paths_graph_case_iii(n, k, r, delta)?, k, r, delta)
}

/// Copies of the theta graph `B` (t paths of u edges between two hubs) with
/// weight `s`, a prefix `B'(x)` of one more copy, and isolated vertices up to
/// `m`; the weights sum to `b_sum`.
pub fn theta_graph(k: usize, r: usize, delta: usize, b_sum: usize, m: usize) -> Result<WeightedGraph> {
    need(0 < r && r < k && delta >= 2, "needs 0 < r < k and delta >= 2")?;
    let h = ceil_div(k, r);
    let a = h * r - k;
    need(h >= 3 && a + 1 >= h, "needs ceil(k/r) >= 3 and a >= ceil(k/r) - 1")?;
    let s = a / (h - 1);
    let t = (r - 1) / s;
    let u = (h + 2) / 2;
    let stu = s * t * u;
    let copies = b_sum / stu;
    let rest = b_sum - copies * stu;
    let x = ceil_div(rest, s);
    let y = if rest == 0 { 0 } else { x - x / u + 1 + (x / u).min(1) };
    need(m >= copies * (t * (u - 1) + 2) + y, "too few vertices for the theta graphs")?;
    let mut edges = Vec::new();
    let mut next = 0usize;
    // Edges of one copy in the order p -> q along path 1, then path 2, ...
    let mut emit = |limit: usize, edges: &mut Vec<(usize, usize, usize)>| {
        let p = next;
        next += 1;
        let mut q: Option<usize> = None;
        let mut count = 0;
        'paths: for _ in 0..t {
            let mut prev = p;
            for j in 1..=u {
                if count == limit {
                    break 'paths;
                }
                let v = if j == u {
                    *q.get_or_insert_with(|| {
                        next += 1;
                        next - 1
                    })
                } else {
                    next += 1;
                    next - 1
                };
                edges.push((prev, v, s));
                count += 1;
                prev = v;
            }
        }
    };
    for _ in 0..copies {
        emit(t * u, &mut edges);
    }
    if x > 0 {
        emit(x, &mut edges);
        if !b_sum.is_multiple_of(s) {
            let last = edges.len() - 1;
            edges[last].2 = b_sum - b_sum / s * s;
        }
    }
    debug_assert!(next <= m);
    WeightedGraph::new(m, edges)
}

/// Theta-graph witness on the fewest vertices `m >= ceil(n/(r+delta-1))`
/// whose weight sum `m(r+delta-1) - n` exceeds `a`.
pub fn gen_theta_case_iv(n: usize, k: usize, r: usize, delta: usize) -> Result<Matroid> {
    let p = ThmParams::new(n, k, r, delta)?;
    need(r < k && p.h >= 3 && p.a + 1 >= p.h, "needs ceil(k/r) >= 3 and a >= ceil(k/r) - 1")?;
    let l = p.block_size();
    let mut m = p.blocks;
    while m * l - n <= p.a {
        m += 1;
    }
    let g = theta_graph(k, r, delta, m * l - n, m)?;
    graph_construction(&g, k, r, delta)
}

/// A path whose edges carry weight `g` except a remainder on the last edge.
pub fn path_graph_case_v(n: usize, k: usize, r: usize, delta: usize) -> Result<WeightedGraph> {
    let p = ThmParams::new(n, k, r, delta)?;
    need(r < k && p.h == 2 && p.b > p.a && p.a >= 1, "needs ceil(k/r) = 2 and b > a >= 1")?;
    let g = if 2 * p.a < r { p.a } else { (r - 1) / 2 };
    need(g >= 1, "edge weight would be zero")?;
    let len = ceil_div(p.b, g);
    need(p.blocks > len, "block count requirement fails")?;
    let mut edges: Vec<(usize, usize, usize)> = (0..len).map(|i| (i, i + 1, g)).collect();
    if p.b % g != 0 {
        edges[len - 1].2 = p.b - p.b / g * g;
    }
    WeightedGraph::new(p.blocks, edges)
}

pub fn gen_path_case_v(n: usize, k: usize, r: usize, delta: usize) -> Result<Matroid> {
    graph_construction(&path_graph_case_v(n, k, r, delta)?, k, r, delta)
}

/// Decides whether a matroid meeting the Singleton-type bound exists and
/// returns bounds on the largest `d` with a measured witness.
pub fn dmax_decide(n: usize, k: usize, r: usize, delta: usize) -> Result<DmaxVerdict> {
    let p = ThmParams::new(n, k, r, delta)?;
    if n > MAX_ELEMENTS {
        return Err(Error::GroundSetTooLarge { n, max: MAX_ELEMENTS });
    }
    let bound = p.bound();
    let (h, a, b) = (p.h, p.a, p.b);
    let case = if r == k {
        CaseTag::REqK
    } else if a >= b {
        CaseTag::I
    } else if a + 1 < h {
        if h / 2 > a {
            CaseTag::NonexistI
        } else {
            let t = a / (h - 1 - a);
            if t * p.blocks >= t * (h - 1) + (b - a) * (t + 1) {
                CaseTag::IiiYes
            } else {
                CaseTag::IiiNo
            }
        }
    } else if h >= 3 {
        let s = a / (h - 1);
        let t = (r - 1) / s;
        let u = (h + 2) / 2;
        let stu = s * t * u;
        let rest = b - b / stu * stu;
        let x = ceil_div(rest, s);
        let y = if rest == 0 { 0 } else { x - x / u + 1 + (x / u).min(1) };
        if p.blocks >= b / stu * (t * (u - 1) + 2) + y {
            CaseTag::IvYes
        } else {
            CaseTag::Unknown
        }
    } else {
        let g = if 2 * a < r { a } else { (r - 1) / 2 };
        if g >= 1 && p.blocks > ceil_div(b, g) {
            CaseTag::VYes
        } else {
            CaseTag::Unknown
        }
    };
    let (witness, source) = match case {
        CaseTag::REqK => (Matroid::uniform(n, k)?, LowerBoundSource::Perfect),
        CaseTag::I => (gen_blocks_case_i(n, k, r, delta)?, LowerBoundSource::Perfect),
        CaseTag::IiiYes => (gen_paths_case_iii(n, k, r, delta)?, LowerBoundSource::Perfect),
        CaseTag::IvYes => (gen_theta_case_iv(n, k, r, delta)?, LowerBoundSource::Perfect),
        CaseTag::VYes => (gen_path_case_v(n, k, r, delta)?, LowerBoundSource::Perfect),
        CaseTag::IiiNo | CaseTag::NonexistI | CaseTag::Unknown => {
            if b >= r {
                (gen_blocks_case_ii(n, k, r, delta)?, LowerBoundSource::DoubleBlock)
            } else {
                (gen_blocks_almost_tight(n, k, r, delta)?, LowerBoundSource::ShortBlock)
            }
        }
    };
    let witness_d = min_distance(&witness)?;
    let d_upper = if case.perfect() == Some(false) { bound - 1 } else { bound };
    Ok(DmaxVerdict { params: p, case, bound, d_upper, d_lower: witness_d, lower_source: source, witness, witness_d })
}
