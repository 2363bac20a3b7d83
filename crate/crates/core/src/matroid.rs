//! Matroids given by a rank oracle, with several concrete backings.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::FieldMatrix;
use crate::gammoid::GammoidGraph;
use crate::subset::{full_mask, GroundSubset, MAX_ELEMENTS};
use crate::zlattice::CyclicFlatLattice;

/// Largest ground set for operations that enumerate all subsets.
pub const EXHAUSTIVE_MAX_N: usize = 20;
/// Largest ground set for the rank axiom checker.
pub const AXIOM_CHECK_MAX_N: usize = 16;

#[derive(Clone)]
pub enum Backing {
    Uniform { rank: usize },
    Lattice(CyclicFlatLattice),
    Matrix(FieldMatrix),
    Gammoid(GammoidGraph),
    Restriction { parent: Arc<Matroid>, carrier: GroundSubset },
}

pub struct Matroid {
    n: usize,
    backing: Backing,
    table: OnceLock<Arc<Vec<u8>>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid { n: self.n, backing: self.backing.clone(), table: self.table.clone() }
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid").field("n", &self.n).field("backing", &self.backing_name()).finish()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        return Err(Error::GroundSetTooLarge { n, max: MAX_ELEMENTS });
    }
    Ok(())
}

fn require_exhaustive(n: usize, what: &str) -> Result<()> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::capacity(format!("{what} enumerates 2^{n} subsets"), EXHAUSTIVE_MAX_N));
    }
    Ok(())
}

impl Matroid {
    fn with_backing(n: usize, backing: Backing) -> Self {
        Matroid { n, backing, table: OnceLock::new() }
    }

    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        check_n(n)?;
        if k > n {
            return Err(Error::Domain(format!("uniform rank {k} exceeds n = {n}")));
        }
        Ok(Self::with_backing(n, Backing::Uniform { rank: k }))
    }

    pub fn free(n: usize) -> Result<Self> {
        Self::uniform(n, n)
    }

    /// Wraps a lattice without checking the axioms; see
    /// [`crate::zlattice::matroid_from_lattice`] for the checked version.
    pub fn from_lattice_unchecked(z: CyclicFlatLattice) -> Self {
        Self::with_backing(z.n(), Backing::Lattice(z))
    }

    pub fn from_matrix(a: FieldMatrix) -> Result<Self> {
        check_n(a.ncols())?;
        Ok(Self::with_backing(a.ncols(), Backing::Matrix(a)))
    }

    pub fn from_gammoid(g: GammoidGraph) -> Self {
        Self::with_backing(g.n(), Backing::Gammoid(g))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn backing_name(&self) -> &'static str {
        match self.backing {
            Backing::Uniform { .. } => "uniform",
            Backing::Lattice(_) => "lattice",
            Backing::Matrix(_) => "matrix",
            Backing::Gammoid(_) => "gammoid",
            Backing::Restriction { .. } => "restriction",
        }
    }

    pub fn ground_set(&self) -> GroundSubset {
        GroundSubset::raw(self.n, full_mask(self.n))
    }

    pub fn subset(&self, elements: &[usize]) -> Result<GroundSubset> {
        GroundSubset::from_elements(self.n, elements.iter().copied())
    }

    fn check_subset(&self, x: &GroundSubset) -> Result<()> {
        let extra = x.bits() & !full_mask(self.n);
        if extra != 0 {
            return Err(Error::OutOfRange { element: extra.trailing_zeros() as usize, n: self.n });
        }
        Ok(())
    }

    pub fn rank(&self, x: &GroundSubset) -> Result<usize> {
        self.check_subset(x)?;
        Ok(self.rank_bits(x.bits()))
    }

    /// Rank of a bit word assumed to lie inside the ground set.
    pub fn rank_bits(&self, bits: u128) -> usize {
        if let Some(t) = self.table.get() {
            return t[bits as usize] as usize;
        }
        self.rank_direct(bits)
    }

    fn rank_direct(&self, bits: u128) -> usize {
        match &self.backing {
            Backing::Uniform { rank } => (bits.count_ones() as usize).min(*rank),
            Backing::Lattice(z) => z.rank_bits(bits),
            Backing::Matrix(a) => a.column_rank(bits),
            Backing::Gammoid(g) => g.rank_bits(bits),
            Backing::Restriction { parent, carrier } => {
                let mut lifted = 0u128;
                let mut rest = bits;
                for e in carrier.iter() {
                    if rest == 0 {
                        break;
                    }
                    if rest & 1 == 1 {
                        lifted |= 1u128 << e;
                    }
                    rest >>= 1;
                }
                parent.rank_bits(lifted)
            }
        }
    }

    /// Dense table of all `2^n` ranks, computed once.
    pub fn rank_table(&self) -> Result<Arc<Vec<u8>>> {
        require_exhaustive(self.n, "rank table")?;
        Ok(self
            .table
            .get_or_init(|| {
                let size = 1usize << self.n;
                let t: Vec<u8> = (0..size).into_par_iter().map(|b| self.rank_direct(b as u128) as u8).collect();
                Arc::new(t)
            })
            .clone())
    }

    pub fn full_rank(&self) -> usize {
        self.rank_bits(full_mask(self.n))
    }

    pub fn nullity(&self, x: &GroundSubset) -> Result<usize> {
        Ok(x.len() - self.rank(x)?)
    }

    pub fn is_independent(&self, x: &GroundSubset) -> Result<bool> {
        Ok(self.rank(x)? == x.len())
    }

    pub fn closure(&self, x: &GroundSubset) -> Result<GroundSubset> {
        self.check_subset(x)?;
        Ok(GroundSubset::raw(self.n, self.closure_bits(x.bits())))
    }

    pub(crate) fn closure_bits(&self, bits: u128) -> u128 {
        let r = self.rank_bits(bits);
        let mut out = bits;
        for e in 0..self.n {
            let b = 1u128 << e;
            if bits & b == 0 && self.rank_bits(bits | b) == r {
                out |= b;
            }
        }
        out
    }

    pub fn is_flat(&self, x: &GroundSubset) -> Result<bool> {
        Ok(self.closure(x)? == *x)
    }

    /// `X` is cyclic when no element of `X` is a coloop of `M|X`.
    pub fn is_cyclic(&self, x: &GroundSubset) -> Result<bool> {
        let r = self.rank(x)?;
        Ok(x.iter().all(|e| self.rank_bits(x.bits() & !(1u128 << e)) == r))
    }

    pub fn loops(&self) -> GroundSubset {
        let bits = (0..self.n).filter(|&e| self.rank_bits(1u128 << e) == 0).fold(0u128, |b, e| b | 1u128 << e);
        GroundSubset::raw(self.n, bits)
    }

    pub fn coloops(&self) -> GroundSubset {
        let full = full_mask(self.n);
        let k = self.rank_bits(full);
        let bits = (0..self.n).filter(|&e| self.rank_bits(full & !(1u128 << e)) < k).fold(0u128, |b, e| b | 1u128 << e);
        GroundSubset::raw(self.n, bits)
    }

    /// True when the top cyclic flat is the whole ground set.
    pub fn is_coloop_free(&self) -> bool {
        if let Backing::Lattice(z) = &self.backing {
            return z.top().is_some_and(|t| t.bits() == full_mask(self.n));
        }
        self.coloops().is_empty()
    }

    /// Minimal dependent sets, sorted by size then lexicographically.
    pub fn circuits(&self) -> Result<Vec<GroundSubset>> {
        let t = self.rank_table()?;
        let n = self.n;
        let mut out: Vec<GroundSubset> = (1..1usize << n)
            .into_par_iter()
            .filter(|&x| {
                let size = x.count_ones() as usize;
                let r = t[x] as usize;
                if r + 1 != size {
                    return false;
                }
                let mut rest = x;
                while rest != 0 {
                    let b = rest & rest.wrapping_neg();
                    if t[x & !b] as usize != size - 1 {
                        return false;
                    }
                    rest &= rest - 1;
                }
                true
            })
            .map(|x| GroundSubset::raw(n, x as u128))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Cyclic flats by exhaustive search over all subsets.
    pub fn cyclic_flats_exhaustive(&self) -> Result<CyclicFlatLattice> {
        let t = self.rank_table()?;
        let n = self.n;
        let members: Vec<(GroundSubset, usize)> = (0..1usize << n)
            .into_par_iter()
            .filter(|&x| {
                let r = t[x];
                (0..n).all(|e| {
                    let b = 1usize << e;
                    if x & b != 0 {
                        t[x & !b] == r
                    } else {
                        t[x | b] > r
                    }
                })
            })
            .map(|x| (GroundSubset::raw(n, x as u128), t[x] as usize))
            .collect();
        CyclicFlatLattice::new(n, members)
    }

    /// Lattice of cyclic flats; read off directly for lattice-backed matroids.
    pub fn cyclic_flats(&self) -> Result<CyclicFlatLattice> {
        match &self.backing {
            Backing::Lattice(z) => Ok(z.clone()),
            Backing::Uniform { rank } => CyclicFlatLattice::uniform(self.n, *rank),
            _ => self.cyclic_flats_exhaustive(),
        }
    }

    /// `M|X`, with elements relabelled `0..|X|` in increasing order.
    pub fn restriction(self: &Arc<Self>, x: &GroundSubset) -> Result<Matroid> {
        self.check_subset(x)?;
        Ok(Matroid::with_backing(x.len(), Backing::Restriction { parent: Arc::clone(self), carrier: *x }))
    }

    /// Restriction without requiring an `Arc` at the call site.
    pub fn restrict(&self, x: &GroundSubset) -> Result<Matroid> {
        Arc::new(self.clone()).restriction(x)
    }

    /// Compares ranks on every subset; returns the first disagreement.
    pub fn first_rank_mismatch(&self, other: &Matroid) -> Result<Option<GroundSubset>> {
        if self.n != other.n {
            return Err(Error::Domain(format!("ground sets differ: {} vs {}", self.n, other.n)));
        }
        let a = self.rank_table()?;
        let b = other.rank_table()?;
        Ok(a.iter().zip(b.iter()).position(|(x, y)| x != y).map(|i| GroundSubset::raw(self.n, i as u128)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankAxiom {
    /// `0 <= rho(X) <= |X|`
    R1,
    /// monotonicity
    R2,
    /// submodularity
    R3,
}

impl fmt::Display for RankAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RankAxiom::R1 => "R1",
            RankAxiom::R2 => "R2",
            RankAxiom::R3 => "R3",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankViolation {
    pub axiom: RankAxiom,
    pub sets: Vec<GroundSubset>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RankAxiomReport {
    pub violations: Vec<RankViolation>,
}

impl RankAxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for RankAxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("rank axioms hold");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let sets: Vec<Vec<usize>> = v.sets.iter().map(|s| s.elements()).collect();
            write!(f, "{} fails on {:?}", v.axiom, sets)?;
        }
        Ok(())
    }
}

const MAX_REPORTED: usize = 32;

/// Checks R1 on every subset, R2 as `rho(X) <= rho(X+e)` and R3 as
/// `rho(X+a) + rho(X+b) >= rho(X+a+b) + rho(X)`; the local forms are
/// equivalent to the global axioms.
pub fn check_rank_function(n: usize, f: impl Fn(u128) -> i64 + Sync) -> Result<RankAxiomReport> {
    if n > AXIOM_CHECK_MAX_N {
        return Err(Error::capacity("rank axiom check", AXIOM_CHECK_MAX_N));
    }
    let size = 1usize << n;
    let t: Vec<i64> = (0..size).into_par_iter().map(|x| f(x as u128)).collect();
    let set = |x: usize| GroundSubset::raw(n, x as u128);
    let mut report = RankAxiomReport::default();
    let push = |v: RankViolation, report: &mut RankAxiomReport| {
        if report.violations.len() < MAX_REPORTED {
            report.violations.push(v);
        }
    };
    for (x, &r) in t.iter().enumerate() {
        if r < 0 || r > x.count_ones() as i64 {
            push(RankViolation { axiom: RankAxiom::R1, sets: vec![set(x)] }, &mut report);
        }
    }
    for x in 0..size {
        for e in 0..n {
            let b = 1usize << e;
            if x & b == 0 && t[x] > t[x | b] {
                push(RankViolation { axiom: RankAxiom::R2, sets: vec![set(x), set(x | b)] }, &mut report);
            }
        }
    }
    let r3: Vec<RankViolation> = (0..size)
        .into_par_iter()
        .flat_map_iter(|x| {
            let t = &t;
            (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b))).filter_map(move |(a, b)| {
                let (ba, bb) = (1usize << a, 1usize << b);
                if x & (ba | bb) != 0 {
                    return None;
                }
                if t[x | ba] + t[x | bb] < t[x | ba | bb] + t[x] {
                    Some(RankViolation { axiom: RankAxiom::R3, sets: vec![set(x | ba), set(x | bb)] })
                } else {
                    None
                }
            })
        })
        .collect();
    for v in r3 {
        push(v, &mut report);
    }
    Ok(report)
}

pub fn validate_rank_axioms(m: &Matroid) -> Result<RankAxiomReport> {
    if m.n() > AXIOM_CHECK_MAX_N {
        return Err(Error::capacity("rank axiom check", AXIOM_CHECK_MAX_N));
    }
    let t = m.rank_table()?;
    check_rank_function(m.n(), |x| t[x as usize] as i64)
}
