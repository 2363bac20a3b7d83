//! Exhaustive search for set systems with the combinatorial structure that
//! any matroid meeting the Singleton-type bound must have.

use crate::error::{Error, Result};
use crate::lrc::ceil_div;
use crate::subset::GroundSubset;

pub const SEARCH_MAX_N: usize = 20;
pub const SEARCH_NODE_BUDGET: usize = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<GroundSubset>),
    NoneExists { nodes: usize },
}

struct Search {
    n: usize,
    delta: usize,
    h: usize,
    a: usize,
    r: usize,
    l: usize,
    max_sets: usize,
    sets: Vec<u32>,
    /// union of every subset of `sets`, indexed by mask
    unions: Vec<u32>,
    nodes: usize,
}

impl Search {
    fn pop(x: u32) -> usize {
        x.count_ones() as usize
    }

    /// Checks every condition involving `new` against the sets already placed.
    fn admissible(&self, new: u32) -> bool {
        let m = self.sets.len();
        let nsize = Self::pop(new);
        for (mask, &u) in self.unions.iter().enumerate() {
            let size = mask.count_ones() as usize;
            let with_new = u | new;
            let count = size + 1;
            let def = (count * self.l) as i64 - Self::pop(with_new) as i64;
            let allowed = self.a as i64 + count.saturating_sub(self.h) as i64 * self.r as i64;
            if def > allowed {
                return false;
            }
            if size < self.h && Self::pop(new & u) + self.delta > nsize {
                return false;
            }
            if count < self.h {
                for j in 0..m {
                    if mask >> j & 1 == 0 {
                        let f = self.sets[j];
                        if Self::pop(f & with_new) + self.delta > Self::pop(f) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn push(&mut self, set: u32) {
        self.sets.push(set);
        let len = self.unions.len();
        for i in 0..len {
            let u = self.unions[i] | set;
            self.unions.push(u);
        }
    }

    fn pop_set(&mut self) {
        self.sets.pop();
        let len = self.unions.len() / 2;
        self.unions.truncate(len);
    }

    fn run(&mut self, used: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > SEARCH_NODE_BUDGET {
            return Err(Error::capacity("set-system search nodes", SEARCH_NODE_BUDGET));
        }
        if used == self.n {
            return Ok(self.sets.len() >= self.h);
        }
        if self.sets.len() >= self.max_sets {
            return Ok(false);
        }
        // Elements with identical membership are interchangeable, so only the
        // number taken from each class matters; take the lowest ones.
        let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
        for e in 0..used {
            let pattern = self.sets.iter().enumerate().fold(0u64, |p, (i, s)| if s >> e & 1 == 1 { p | 1 << i } else { p });
            match classes.iter_mut().find(|c| c.0 == pattern) {
                Some(c) => c.1.push(e),
                None => classes.push((pattern, vec![e])),
            }
        }
        let mut counts = vec![0usize; classes.len()];
        self.choose(&classes, &mut counts, 0, 0, used)
    }

    fn choose(&mut self, classes: &[(u64, Vec<usize>)], counts: &mut Vec<usize>, idx: usize, taken: usize, used: usize) -> Result<bool> {
        if idx == classes.len() {
            let mut old = 0u32;
            for (c, &cnt) in classes.iter().zip(counts.iter()) {
                for &e in &c.1[..cnt] {
                    old |= 1 << e;
                }
            }
            let max_new = (self.l - taken).min(self.n - used);
            for fresh in (1..=max_new).rev() {
                let new = old | (((1u32 << fresh) - 1) << used);
                if !self.admissible(new) {
                    continue;
                }
                self.push(new);
                let found = self.run(used + fresh)?;
                if found {
                    return Ok(true);
                }
                self.pop_set();
            }
            return Ok(false);
        }
        let (pattern, members) = &classes[idx];
        // Taking all of a set's private elements would leave it covered by the others.
        let private = pattern.count_ones() == 1;
        let mut max = members.len().min(self.l - 1 - taken);
        if private && max == members.len() {
            max -= 1;
        }
        for c in (0..=max).rev() {
            counts[idx] = c;
            if self.choose(classes, counts, idx + 1, taken + c, used)? {
                return Ok(true);
            }
        }
        counts[idx] = 0;
        Ok(false)
    }
}

/// Looks for sets `F_1..F_m` covering `{0..n-1}`, each with a private
/// element and at most `r+delta-1` elements, such that
/// `|F_j & F_I| <= |F_j| - delta` whenever `|I| < ceil(k/r)` and `j` is not
/// in `I`, and `|F_I| - |I|(delta-1) >= k` whenever `|I| >= ceil(k/r)`.
/// Every matroid meeting the bound yields such a system, so `NoneExists`
/// certifies that no such matroid exists.
pub fn search_perfect_set_system(n: usize, k: usize, r: usize, delta: usize) -> Result<SearchOutcome> {
    if n > SEARCH_MAX_N {
        return Err(Error::capacity("set-system search ground set", SEARCH_MAX_N));
    }
    if r == 0 || r >= k || delta < 2 {
        return Err(Error::Domain("needs 0 < r < k and delta >= 2".into()));
    }
    let h = ceil_div(k, r);
    if k + h * (delta - 1) > n {
        return Err(Error::Domain("infeasible parameters".into()));
    }
    let mut s = Search {
        n,
        delta,
        h,
        a: h * r - k,
        r,
        l: r + delta - 1,
        max_sets: (n - k) / (delta - 1),
        sets: Vec::new(),
        unions: vec![0],
        nodes: 0,
    };
    if s.run(0)? {
        let sets = s.sets.iter().map(|&b| GroundSubset::from_bits(n, b as u128)).collect::<Result<Vec<_>>>()?;
        Ok(SearchOutcome::Found(sets))
    } else {
        Ok(SearchOutcome::NoneExists { nodes: s.nodes })
    }
}
