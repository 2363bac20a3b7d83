//! Lattices of cyclic flats: axiom checking, lattice operations and the rank
//! function they determine.

use std::fmt;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{full_mask, GroundSubset, MAX_ELEMENTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Member {
    pub set: GroundSubset,
    pub rank: usize,
}

/// A family of subsets with ranks, sorted by size then lexicographically.
/// Not necessarily a valid lattice until [`CyclicFlatLattice::validate`]
/// says so.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFlatLattice {
    n: usize,
    members: Vec<Member>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LatticeAxiom {
    /// every pair has a meet and a join
    Z0,
    /// the bottom has rank zero
    Z1,
    /// strict growth of rank and nullity along chains
    Z2,
    /// the cyclic-flat submodular inequality
    Z3,
}

impl fmt::Display for LatticeAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeViolation {
    pub axiom: LatticeAxiom,
    pub witnesses: Vec<GroundSubset>,
    pub detail: String,
}

impl fmt::Display for LatticeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.axiom)?;
        for (i, w) in self.witnesses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, " ({})", self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatticeReport {
    pub violations: Vec<LatticeViolation>,
}

impl LatticeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&LatticeViolation> {
        self.violations.first()
    }
}

impl fmt::Display for LatticeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "all lattice axioms hold");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

const MAX_REPORTED: usize = 64;

impl CyclicFlatLattice {
    pub fn new(n: usize, members: Vec<(GroundSubset, usize)>) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge { n, max: MAX_ELEMENTS });
        }
        if members.is_empty() {
            return Err(Error::Format("lattice has no members".into()));
        }
        let mut ms: Vec<Member> = Vec::with_capacity(members.len());
        for (set, rank) in members {
            let extra = set.bits() & !full_mask(n);
            if extra != 0 {
                return Err(Error::OutOfRange { element: extra.trailing_zeros() as usize, n });
            }
            ms.push(Member { set: GroundSubset::raw(n, set.bits()), rank });
        }
        ms.sort_by_key(|a| a.set);
        for w in ms.windows(2) {
            if w[0].set == w[1].set {
                return Err(Error::Format(format!("duplicate member {}", w[0].set)));
            }
        }
        Ok(CyclicFlatLattice { n, members: ms })
    }

    /// Cyclic flats of the uniform matroid `U_{k,n}`.
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::Domain(format!("uniform rank {k} exceeds n = {n}")));
        }
        let empty = GroundSubset::empty(n)?;
        let full = GroundSubset::full(n)?;
        let members = if k == 0 {
            vec![(full, 0)]
        } else if k == n {
            vec![(empty, 0)]
        } else {
            vec![(empty, 0), (full, k)]
        };
        Self::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn rank_of(&self, set: &GroundSubset) -> Option<usize> {
        self.members.iter().find(|m| m.set.bits() == set.bits()).map(|m| m.rank)
    }

    pub fn contains(&self, set: &GroundSubset) -> bool {
        self.rank_of(set).is_some()
    }

    /// `rho(X) = min over members F of rho(F) + |X \ F|`.
    pub fn rank_bits(&self, x: u128) -> usize {
        self.members.iter().map(|m| m.rank + (x & !m.set.bits()).count_ones() as usize).min().unwrap_or(0)
    }

    pub fn rank(&self, x: &GroundSubset) -> usize {
        self.rank_bits(x.bits())
    }

    /// The member contained in every member, if any.
    pub fn bottom(&self) -> Option<GroundSubset> {
        let first = self.members[0].set;
        self.members.iter().all(|m| first.is_subset_of(&m.set)).then_some(first)
    }

    /// The member containing every member, if any.
    pub fn top(&self) -> Option<GroundSubset> {
        let last = self.members[self.members.len() - 1].set;
        self.members.iter().all(|m| m.set.is_subset_of(&last)).then_some(last)
    }

    /// Largest member below both, if it exists.
    pub fn meet(&self, a: &GroundSubset, b: &GroundSubset) -> Option<GroundSubset> {
        let both = a.intersection(b);
        let lower: Vec<GroundSubset> = self.members.iter().map(|m| m.set).filter(|s| s.is_subset_of(&both)).collect();
        let cand = *lower.iter().max_by_key(|s| s.len())?;
        lower.iter().all(|s| s.is_subset_of(&cand)).then_some(cand)
    }

    /// Smallest member above both, if it exists.
    pub fn join(&self, a: &GroundSubset, b: &GroundSubset) -> Option<GroundSubset> {
        let either = a.union(b);
        let upper: Vec<GroundSubset> = self.members.iter().map(|m| m.set).filter(|s| either.is_subset_of(s)).collect();
        let cand = *upper.iter().min_by_key(|s| s.len())?;
        upper.iter().all(|s| cand.is_subset_of(s)).then_some(cand)
    }

    /// Members covering the bottom.
    pub fn atoms(&self) -> Vec<GroundSubset> {
        let Some(bot) = self.bottom() else { return Vec::new() };
        self.members
            .iter()
            .map(|m| m.set)
            .filter(|s| *s != bot)
            .filter(|s| !self.members.iter().any(|m| bot.is_proper_subset_of(&m.set) && m.set.is_proper_subset_of(s)))
            .collect()
    }

    /// Members covered by the top.
    pub fn coatoms(&self) -> Vec<GroundSubset> {
        let Some(top) = self.top() else { return Vec::new() };
        self.members
            .iter()
            .map(|m| m.set)
            .filter(|s| *s != top)
            .filter(|s| !self.members.iter().any(|m| s.is_proper_subset_of(&m.set) && m.set.is_proper_subset_of(&top)))
            .collect()
    }

    /// Checks Z0 to Z3; violations are listed in axiom order.
    pub fn validate(&self) -> LatticeReport {
        let mut out = LatticeReport::default();
        let push = |v: LatticeViolation, out: &mut LatticeReport| {
            if out.violations.len() < MAX_REPORTED {
                out.violations.push(v);
            }
        };
        let ms = &self.members;
        let rank = |s: &GroundSubset| self.rank_of(s).unwrap_or(0) as i64;

        let mut pairs: Vec<(usize, usize, Option<GroundSubset>, Option<GroundSubset>)> = Vec::new();
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                let (a, b) = (ms[i].set, ms[j].set);
                let meet = self.meet(&a, &b);
                let join = self.join(&a, &b);
                if meet.is_none() {
                    push(
                        LatticeViolation { axiom: LatticeAxiom::Z0, witnesses: vec![a, b], detail: "no meet".into() },
                        &mut out,
                    );
                }
                if join.is_none() {
                    push(
                        LatticeViolation { axiom: LatticeAxiom::Z0, witnesses: vec![a, b], detail: "no join".into() },
                        &mut out,
                    );
                }
                pairs.push((i, j, meet, join));
            }
        }

        if let Some(bot) = self.bottom() {
            let r = rank(&bot);
            if r != 0 {
                push(
                    LatticeViolation { axiom: LatticeAxiom::Z1, witnesses: vec![bot], detail: format!("bottom has rank {r}") },
                    &mut out,
                );
            }
        }

        for &(i, j, _, _) in &pairs {
            let (x, y) = (ms[i], ms[j]);
            let (lo, hi) = if x.set.is_proper_subset_of(&y.set) {
                (x, y)
            } else if y.set.is_proper_subset_of(&x.set) {
                (y, x)
            } else {
                continue;
            };
            let dr = hi.rank as i64 - lo.rank as i64;
            let ds = hi.set.len() as i64 - lo.set.len() as i64;
            if !(0 < dr && dr < ds) {
                push(
                    LatticeViolation {
                        axiom: LatticeAxiom::Z2,
                        witnesses: vec![lo.set, hi.set],
                        detail: format!("rank difference {dr}, size difference {ds}"),
                    },
                    &mut out,
                );
            }
        }

        for &(i, j, meet, join) in &pairs {
            let (Some(meet), Some(join)) = (meet, join) else { continue };
            let (x, y) = (ms[i], ms[j]);
            let excess = x.set.intersection(&y.set).difference(&meet).len() as i64;
            let lhs = x.rank as i64 + y.rank as i64;
            let rhs = rank(&join) + rank(&meet) + excess;
            if lhs < rhs {
                push(
                    LatticeViolation {
                        axiom: LatticeAxiom::Z3,
                        witnesses: vec![x.set, y.set],
                        detail: format!("{lhs} < {rhs} with join {join} and meet {meet}"),
                    },
                    &mut out,
                );
            }
        }
        out
    }
}

/// Builds the matroid of a lattice after checking all axioms.
pub fn matroid_from_lattice(z: CyclicFlatLattice) -> Result<Matroid> {
    let report = z.validate();
    if !report.is_valid() {
        return Err(Error::InvalidLattice(report.to_string()));
    }
    Ok(Matroid::from_lattice_unchecked(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[usize]) -> GroundSubset {
        GroundSubset::from_elements(n, v.iter().copied()).unwrap()
    }

    #[test]
    fn uniform_lattice() {
        let z = CyclicFlatLattice::uniform(5, 2).unwrap();
        assert!(z.validate().is_valid());
        assert_eq!(z.atoms(), vec![set(5, &[0, 1, 2, 3, 4])]);
        assert_eq!(z.coatoms(), vec![set(5, &[])]);
        let m = matroid_from_lattice(z).unwrap();
        assert_eq!(m.rank(&set(5, &[0, 3, 4])).unwrap(), 2);
        assert_eq!(m.rank(&set(5, &[4])).unwrap(), 1);
    }

    #[test]
    fn chain_lattice() {
        let z = CyclicFlatLattice::new(
            6,
            vec![(set(6, &[]), 0), (set(6, &[0, 1, 2]), 2), (set(6, &[0, 1, 2, 3, 4, 5]), 4)],
        )
        .unwrap();
        assert!(z.validate().is_valid());
        assert_eq!(z.atoms(), vec![set(6, &[0, 1, 2])]);
        assert_eq!(z.coatoms(), vec![set(6, &[0, 1, 2])]);
    }

    #[test]
    fn rejects_bad_families() {
        let z = CyclicFlatLattice::new(4, vec![(set(4, &[]), 1), (set(4, &[0, 1, 2, 3]), 2)]).unwrap();
        assert_eq!(z.validate().first().unwrap().axiom, LatticeAxiom::Z1);
        let z = CyclicFlatLattice::new(4, vec![(set(4, &[]), 0), (set(4, &[0, 1, 2, 3]), 3), (set(4, &[0, 1]), 1)]).unwrap();
        let first = z.validate().first().unwrap().clone();
        assert_eq!(first.axiom, LatticeAxiom::Z2);
        let z = CyclicFlatLattice::new(4, vec![(set(4, &[0, 1]), 1), (set(4, &[2, 3]), 1)]).unwrap();
        assert_eq!(z.validate().first().unwrap().axiom, LatticeAxiom::Z0);
        assert!(CyclicFlatLattice::new(4, vec![(set(4, &[0]), 0), (set(4, &[0]), 0)]).is_err());
    }
}
