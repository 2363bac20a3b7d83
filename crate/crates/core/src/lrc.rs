//! LRC parameters of matroids: minimum distance, locality, the generalized
//! Singleton bound and structure of matroids meeting it.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matroid::{Matroid, EXHAUSTIVE_MAX_N};
use crate::subset::{full_mask, GroundSubset};

/// Upper limit on candidate sets examined by one locality search.
pub const LOCALITY_BUDGET: usize = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LrcParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub r: Option<usize>,
    pub delta: Option<usize>,
}

/// Locality set `S_x` for every element `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityAssignment {
    pub sets: Vec<GroundSubset>,
}

impl LocalityAssignment {
    pub fn distinct_sets(&self) -> Vec<GroundSubset> {
        let mut v = self.sets.clone();
        v.sort();
        v.dedup();
        v
    }
}

pub fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// `d = n - k + 1 - max eta(Z)` over coatoms `Z` of the cyclic-flat lattice.
pub fn min_distance(m: &Matroid) -> Result<usize> {
    let n = m.n();
    let k = m.full_rank();
    if k == 0 {
        return Err(Error::Undefined("d is undefined when k = 0".into()));
    }
    if !m.is_coloop_free() {
        return Err(Error::Undefined("d is undefined when the matroid has coloops".into()));
    }
    let z = m.cyclic_flats()?;
    let max_eta = z
        .coatoms()
        .iter()
        .map(|c| c.len() - z.rank_of(c).unwrap_or(0))
        .max()
        .ok_or_else(|| Error::Undefined("lattice has no coatoms".into()))?;
    Ok(n + 1 - k - max_eta)
}

/// `d = min{|X| : rho(E \ X) < k}` by enumeration.
pub fn min_distance_definitional(m: &Matroid) -> Result<usize> {
    let n = m.n();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::capacity("definitional minimum distance", EXHAUSTIVE_MAX_N));
    }
    let k = m.full_rank();
    if k == 0 {
        return Err(Error::Undefined("d is undefined when k = 0".into()));
    }
    let full = m.ground_set();
    for size in 1..=n {
        if full.subsets_of_size(size).any(|x| m.rank_bits(full.bits() & !x.bits()) < k) {
            return Ok(size);
        }
    }
    unreachable!("removing every element drops the rank")
}

/// `d(M|S)`; `None` when `rho(S) = 0`, where the minimum is over an empty
/// family.
pub fn local_distance(m: &Matroid, s: &GroundSubset) -> Result<Option<usize>> {
    let rs = m.rank(s)?;
    if rs == 0 {
        return Ok(None);
    }
    for size in 1..=s.len() {
        if s.subsets_of_size(size).any(|y| m.rank_bits(s.bits() & !y.bits()) < rs) {
            return Ok(Some(size));
        }
    }
    unreachable!()
}

/// `d(M|S) >= delta`, tested by removing every `(delta-1)`-subset.
fn repairs(m: &Matroid, s: u128, delta: usize) -> bool {
    let rs = m.rank_bits(s);
    if rs == 0 {
        return true;
    }
    let size = s.count_ones() as usize;
    if size < delta {
        return false;
    }
    let set = GroundSubset::raw(m.n(), s);
    set.subsets_of_size(delta - 1).all(|y| m.rank_bits(s & !y.bits()) == rs)
}

pub fn is_locality_set(m: &Matroid, x: usize, s: &GroundSubset, r: usize, delta: usize) -> Result<bool> {
    m.rank(s)?;
    Ok(s.contains(x) && s.len() < r + delta && repairs(m, s.bits(), delta))
}

fn check_locality_args(m: &Matroid, r: usize, delta: usize) -> Result<usize> {
    let k = m.full_rank();
    if r == 0 || r > k {
        return Err(Error::Domain(format!("need 1 <= r <= k = {k}, got r = {r}")));
    }
    if delta < 2 {
        return Err(Error::Domain(format!("need delta >= 2, got {delta}")));
    }
    Ok(k)
}

/// Smallest (then lexicographically first) locality set for each element,
/// or `None` if some element has none.
pub fn has_locality(m: &Matroid, r: usize, delta: usize) -> Result<Option<LocalityAssignment>> {
    check_locality_args(m, r, delta)?;
    let z = m.cyclic_flats()?;
    let low: Vec<GroundSubset> = z.members().iter().filter(|f| f.rank <= r).map(|f| f.set).collect();
    let n = m.n();
    let max_size = r + delta - 1;
    let found: Vec<Result<Option<GroundSubset>>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let containing: Vec<&GroundSubset> = low.iter().filter(|f| f.contains(x)).collect();
            if containing.is_empty() {
                return Ok(None);
            }
            let start = if m.rank_bits(1u128 << x) == 0 { 1 } else { delta };
            let mut examined = 0usize;
            for size in start..=max_size {
                let mut best: Option<GroundSubset> = None;
                for f in &containing {
                    if f.len() < size {
                        continue;
                    }
                    let rest = f.without(x);
                    for extra in rest.subsets_of_size(size - 1) {
                        examined += 1;
                        if examined > LOCALITY_BUDGET {
                            return Err(Error::capacity("locality candidates", LOCALITY_BUDGET));
                        }
                        let s = extra.with(x);
                        if best.is_some_and(|b| s.lex_cmp(&b) != Ordering::Less) {
                            break;
                        }
                        if repairs(m, s.bits(), delta) {
                            best = Some(s);
                            break;
                        }
                    }
                }
                if best.is_some() {
                    return Ok(best);
                }
            }
            Ok(None)
        })
        .collect();
    let mut sets = Vec::with_capacity(n);
    for f in found {
        match f? {
            Some(s) => sets.push(s),
            None => return Ok(None),
        }
    }
    Ok(Some(LocalityAssignment { sets }))
}

pub fn verify_assignment(m: &Matroid, a: &LocalityAssignment, r: usize, delta: usize) -> Result<bool> {
    if a.sets.len() != m.n() {
        return Ok(false);
    }
    for (x, s) in a.sets.iter().enumerate() {
        if !is_locality_set(m, x, s, r, delta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `r` with `(r, delta)`-locality.
pub fn minimal_r(m: &Matroid, delta: usize) -> Result<Option<usize>> {
    let k = m.full_rank();
    for r in 1..=k {
        if has_locality(m, r, delta)?.is_some() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// `n - k + 1 - (ceil(k/r) - 1)(delta - 1)`.
pub fn singleton_bound(n: usize, k: usize, r: usize, delta: usize) -> i64 {
    assert!(k >= 1 && r >= 1 && delta >= 2, "singleton_bound needs k, r >= 1 and delta >= 2");
    n as i64 - k as i64 + 1 - (ceil_div(k, r) as i64 - 1) * (delta as i64 - 1)
}

/// Checks `k <= n - ceil(k/r)(delta-1)` and `k/n <= r/(r+delta-1)`; returns
/// the failed inequalities.
pub fn aux_bounds_ok(n: usize, k: usize, r: usize, delta: usize) -> (bool, Vec<String>) {
    let mut reasons = Vec::new();
    let h = ceil_div(k, r);
    if k + h * (delta - 1) > n {
        reasons.push(format!("k = {k} > n - ceil(k/r)(delta-1) = {}", n as i64 - (h * (delta - 1)) as i64));
    }
    if k * (r + delta - 1) > n * r {
        reasons.push(format!("k/n = {k}/{n} > r/(r+delta-1) = {r}/{}", r + delta - 1));
    }
    (reasons.is_empty(), reasons)
}

pub fn is_perfect(m: &Matroid, r: usize, delta: usize) -> Result<bool> {
    let k = check_locality_args(m, r, delta)?;
    if has_locality(m, r, delta)?.is_none() {
        return Ok(false);
    }
    Ok(min_distance(m)? as i64 == singleton_bound(m.n(), k, r, delta))
}

/// `(n, k, d)` and, when `delta` is given, the smallest `r` for it.
pub fn params(m: &Matroid, delta: Option<usize>) -> Result<LrcParams> {
    let d = min_distance(m)?;
    let r = match delta {
        Some(dl) => minimal_r(m, dl)?,
        None => None,
    };
    Ok(LrcParams { n: m.n(), k: m.full_rank(), d, r, delta: r.and(delta) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub perfect: bool,
    pub checks: Vec<StructureCheck>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&StructureCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Upper limit on subfamilies examined by [`check_structure`].
pub const STRUCTURE_FAMILY_LIMIT: usize = 200_000;

/// Necessary structure of a matroid meeting the Singleton-type bound,
/// checked on the distinct sets of `assignment`.
pub fn check_structure(m: &Matroid, assignment: &LocalityAssignment, r: usize, delta: usize) -> Result<StructureReport> {
    let k = check_locality_args(m, r, delta)?;
    if r >= k {
        return Err(Error::NotApplicable(format!("structure checks need r < k (r = {r}, k = {k})")));
    }
    if !verify_assignment(m, assignment, r, delta)? {
        return Err(Error::NotApplicable("assignment is not a valid locality assignment".into()));
    }
    if min_distance(m)? as i64 != singleton_bound(m.n(), k, r, delta) {
        return Err(Error::NotApplicable("matroid does not meet the bound".into()));
    }
    let n = m.n();
    let h = ceil_div(k, r);
    let z = m.cyclic_flats()?;
    let full = full_mask(n);
    let mut checks = Vec::new();
    let mut add = |name: String, passed: bool| checks.push(StructureCheck { name, passed });

    add("bottom cyclic flat is empty".into(), z.bottom().is_some_and(|b| b.is_empty()));
    add("n - k >= ceil(k/r)(delta-1)".into(), n - k >= h * (delta - 1));

    let sets = assignment.distinct_sets();
    let atoms = z.atoms();
    for s in &sets {
        add(format!("nullity of {s} is delta-1"), m.nullity(s)? == delta - 1);
        add(format!("{s} is an atom"), atoms.contains(s));
    }

    let count: usize = (1..=h.min(sets.len())).map(|j| binomial(sets.len(), j)).sum();
    if count > STRUCTURE_FAMILY_LIMIT {
        return Err(Error::capacity("structure subfamilies", STRUCTURE_FAMILY_LIMIT));
    }
    let family_sets = GroundSubset::raw(sets.len(), full_mask(sets.len()));
    for j in 1..=h.min(sets.len()) {
        for fam in family_sets.subsets_of_size(j) {
            let idx: Vec<usize> = fam.iter().collect();
            let union = idx.iter().fold(0u128, |b, &i| b | sets[i].bits());
            let nontrivial = idx.iter().all(|&l| {
                let others = idx.iter().filter(|&&i| i != l).fold(0u128, |b, &i| b | sets[i].bits());
                sets[l].bits() & !others != 0
            });
            if !nontrivial {
                continue;
            }
            let label = idx.iter().map(|&i| sets[i].to_string()).collect::<Vec<_>>().join(" ");
            let join = m.closure_bits(union);
            let eta = join.count_ones() as usize - m.rank_bits(join);
            if j < h {
                add(format!("join nullity of [{label}] is j(delta-1)"), eta == j * (delta - 1));
                add(format!("join of [{label}] is the union"), join == union);
                add(
                    format!("rank of join of [{label}] is |union| - j(delta-1)"),
                    m.rank_bits(join) + j * (delta - 1) == union.count_ones() as usize,
                );
            } else {
                add(format!("join nullity of [{label}] is n-k"), eta == n - k);
                add(format!("join of [{label}] is E"), join == full);
                add(format!("rank of join of [{label}] is k"), m.rank_bits(join) == k);
            }
            for &l in &idx {
                let others = idx.iter().filter(|&&i| i != l).fold(0u128, |b, &i| b | sets[i].bits());
                let inter = (sets[l].bits() & others).count_ones() as usize;
                add(format!("overlap of {} with the rest of [{label}] is at most |F|-delta", sets[l]), inter + delta <= sets[l].len());
                if j == h {
                    let rhs = others.count_ones() as i64 + sets[l].len() as i64 - (h * (delta - 1)) as i64 - inter as i64;
                    add(format!("k bounded by union, overlap and nullity for {} in [{label}]", sets[l]), k as i64 <= rhs);
                }
            }
        }
    }
    Ok(StructureReport { perfect: true, checks })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(usize::MAX as u128) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_parameters() {
        for (n, k) in [(5, 2), (6, 3), (7, 1), (8, 5)] {
            let m = Matroid::uniform(n, k).unwrap();
            assert_eq!(min_distance(&m).unwrap(), n - k + 1);
            assert_eq!(min_distance_definitional(&m).unwrap(), n - k + 1);
            let a = has_locality(&m, k, n - k + 1).unwrap().unwrap();
            assert!(a.sets.iter().all(|s| s.len() == n));
            assert!(is_perfect(&m, k, n - k + 1).unwrap());
            assert_eq!(minimal_r(&m, n - k + 1).unwrap(), Some(k));
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(singleton_bound(12, 6, 3, 3), 5);
        assert_eq!(singleton_bound(27, 14, 4, 2), 11);
        assert_eq!(singleton_bound(10, 4, 4, 3), 7);
        assert!(aux_bounds_ok(12, 6, 3, 3).0);
        assert!(!aux_bounds_ok(10, 8, 2, 3).0);
        assert!(aux_bounds_ok(9, 6, 3, 2).0);
    }

    #[test]
    fn undefined_distance() {
        assert!(matches!(min_distance(&Matroid::free(4).unwrap()), Err(Error::Undefined(_))));
        assert!(matches!(min_distance(&Matroid::uniform(4, 0).unwrap()), Err(Error::Undefined(_))));
    }

    #[test]
    fn local_distance_values() {
        let m = Matroid::uniform(6, 3).unwrap();
        let all = m.ground_set();
        assert_eq!(local_distance(&m, &all).unwrap(), Some(4));
        let two = m.subset(&[0, 1]).unwrap();
        assert_eq!(local_distance(&m, &two).unwrap(), Some(1));
    }
}
