//! Matroid constructions from set systems and weighted graphs, the
//! existence decision for perfect matroids, and witness generators.

mod dmax;
mod graph;
mod search;

pub use dmax::{
    dmax_decide, gen_blocks_almost_tight, gen_blocks_case_i, gen_blocks_case_ii, gen_path_case_v,
    gen_paths_case_iii, gen_theta_case_iv, path_graph_case_v, paths_graph_case_iii, theta_graph, CaseTag,
    DmaxVerdict, LowerBoundSource, ThmParams,
};
pub use graph::{graph_construction, graph_parameters, graph_set_system, WeightedGraph};
pub use search::{search_perfect_set_system, SearchOutcome};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{full_mask, GroundSubset, MAX_ELEMENTS};
use crate::zlattice::CyclicFlatLattice;

/// Upper limit on the number of unions enumerated for one lattice.
pub const MAX_LATTICE_MEMBERS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flat {
    pub set: GroundSubset,
    pub rank: usize,
}

impl Flat {
    pub fn nullity(&self) -> usize {
        self.set.len() - self.rank
    }
}

/// Subsets `F_1..F_m` of `{0..n-1}` with target ranks, plus a global rank `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    n: usize,
    k: usize,
    flats: Vec<Flat>,
}

/// Parameters `(n, k, d, r, delta)` predicted by a construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub delta: usize,
}

impl SetSystem {
    pub fn new(n: usize, k: usize, flats: Vec<(GroundSubset, usize)>) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge { n, max: MAX_ELEMENTS });
        }
        let mut out = Vec::with_capacity(flats.len());
        for (set, rank) in flats {
            let extra = set.bits() & !full_mask(n);
            if extra != 0 {
                return Err(Error::OutOfRange { element: extra.trailing_zeros() as usize, n });
            }
            if rank > set.len() {
                return Err(Error::Format(format!("flat {set} has rank {rank} above its size")));
            }
            out.push(Flat { set: GroundSubset::raw(n, set.bits()), rank });
        }
        Ok(SetSystem { n, k, flats: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn m(&self) -> usize {
        self.flats.len()
    }

    fn union_bits(&self, idx: impl Iterator<Item = usize>) -> u128 {
        idx.fold(0u128, |b, i| b | self.flats[i].set.bits())
    }

    /// Checks the four hypotheses of the general construction; the error
    /// names the failing condition with a witness.
    pub fn check_conditions(&self) -> Result<()> {
        if self.flats.is_empty() {
            return Err(Error::construction("(ii)", "no flats"));
        }
        for (i, f) in self.flats.iter().enumerate() {
            if f.rank == 0 || f.rank >= f.set.len() {
                return Err(Error::construction(
                    "(i)",
                    format!("flat {i} = {} has rank {} and size {}", f.set, f.rank, f.set.len()),
                ));
            }
        }
        let all = self.union_bits(0..self.m());
        if all != full_mask(self.n) {
            let missing = (full_mask(self.n) & !all).trailing_zeros();
            return Err(Error::construction("(ii)", format!("element {missing} is in no flat")));
        }
        let slack: i64 = self.flats.iter().map(|f| f.rank as i64 - f.set.len() as i64).sum();
        if self.k as i64 > self.n as i64 + slack {
            return Err(Error::construction("(iii)", format!("k = {} exceeds {}", self.k, self.n as i64 + slack)));
        }
        // (iv) is monotone in I, so I = all other flats is the binding case.
        for j in 0..self.m() {
            let others = self.union_bits((0..self.m()).filter(|&i| i != j));
            let overlap = (others & self.flats[j].set.bits()).count_ones() as usize;
            if overlap >= self.flats[j].rank {
                return Err(Error::construction(
                    "(iv)",
                    format!("flat {j} = {} meets the other flats in {overlap} elements, rank {}", self.flats[j].set, self.flats[j].rank),
                ));
            }
        }
        if self.k == 0 {
            return Err(Error::construction("(iii)", "k must be positive"));
        }
        Ok(())
    }

    /// Index sets `J` (as bit masks over flats) with `|F_J| - sum eta < k`,
    /// together with `F_J` and that value.
    fn small_unions(&self) -> Result<Vec<(u64, u128, usize, usize)>> {
        let m = self.m();
        if m > 63 {
            return Err(Error::capacity("number of flats", 63));
        }
        let mut out = Vec::new();
        // (index mask, union, value, nullity sum)
        let mut stack: Vec<(u64, u128, usize, usize, usize)> = vec![(0, 0, 0, 0, 0)];
        while let Some((mask, union, value, eta, next)) = stack.pop() {
            out.push((mask, union, value, eta));
            if out.len() > MAX_LATTICE_MEMBERS {
                return Err(Error::capacity("cyclic flats in construction", MAX_LATTICE_MEMBERS));
            }
            for j in next..m {
                let f = &self.flats[j];
                let u = union | f.set.bits();
                let e = eta + f.nullity();
                let v = u.count_ones() as usize - e;
                if v < self.k {
                    stack.push((mask | 1 << j, u, v, e, j + 1));
                }
            }
        }
        Ok(out)
    }

    /// The lattice `Z_{<k}` plus the whole ground set at rank `k`.
    pub fn construction_lattice(&self) -> Result<CyclicFlatLattice> {
        self.check_conditions()?;
        let mut members: Vec<(GroundSubset, usize)> =
            self.small_unions()?.into_iter().map(|(_, u, v, _)| (GroundSubset::raw(self.n, u), v)).collect();
        members.push((GroundSubset::raw(self.n, full_mask(self.n)), self.k));
        CyclicFlatLattice::new(self.n, members)
    }

    /// Parameters read off the set system without building the matroid.
    pub fn predicted_parameters(&self) -> Result<ConstructionParams> {
        self.check_conditions()?;
        let max_eta = self.small_unions()?.into_iter().map(|(_, _, _, e)| e).max().unwrap_or(0);
        Ok(ConstructionParams {
            n: self.n,
            k: self.k,
            d: self.n + 1 - self.k - max_eta,
            r: self.flats.iter().map(|f| f.rank).max().unwrap_or(0),
            delta: 1 + self.flats.iter().map(|f| f.nullity()).min().unwrap_or(0),
        })
    }

    /// Rank of `X` straight from the independence criterion
    /// `|X & F_I| <= rho(F_I)` for all `I`, with `|X| <= k`.
    pub fn is_independent_by_unions(&self, x: u128) -> Result<bool> {
        if x.count_ones() as usize > self.k {
            return Ok(false);
        }
        for (_, u, v, _) in self.small_unions()? {
            if (x & u).count_ones() as usize > v {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The matroid whose cyclic flats are the unions of small rank together with
/// the ground set.
pub fn general_construction(sys: &SetSystem) -> Result<Matroid> {
    Ok(Matroid::from_lattice_unchecked(sys.construction_lattice()?))
}
