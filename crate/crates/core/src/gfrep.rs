//! Matroids of matrices over GF(p) and randomized search for representations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::construct::SetSystem;
use crate::error::{Error, Result};
use crate::field::{FieldMatrix, PrimeField};
use crate::gammoid::{layered_graph, GammoidGraph};
use crate::matroid::{Backing, Matroid};
use crate::subset::GroundSubset;

/// Largest ground set accepted by [`find_representation`].
pub const REPRESENT_MAX_N: usize = 14;
pub const DEFAULT_ATTEMPTS: usize = 10_000;

pub fn matroid_from_matrix(a: FieldMatrix) -> Result<Matroid> {
    Matroid::from_matrix(a)
}

/// Minimum distance of the code generated by `a`: the fewest columns whose
/// removal drops the rank.
pub fn code_min_distance(a: &FieldMatrix) -> Result<usize> {
    let m = Matroid::from_matrix(a.clone())?;
    crate::lrc::min_distance_definitional(&m)
}

/// How random candidate matrices are drawn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sampler {
    /// every entry uniform in GF(p)
    Uniform,
    /// random weights on the arcs of a layered gammoid graph; the
    /// candidate is the matrix of path weights from sources to sinks
    Gammoid(GammoidGraph),
}

impl Sampler {
    pub fn name(&self) -> &'static str {
        match self {
            Sampler::Uniform => "uniform",
            Sampler::Gammoid(_) => "gammoid",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RepresentationResult {
    pub prime: u32,
    pub seed: u64,
    pub sampler: &'static str,
    pub attempts: usize,
    pub matrix: Option<FieldMatrix>,
}

impl RepresentationResult {
    pub fn found(&self) -> bool {
        self.matrix.is_some()
    }
}

/// Chooses the gammoid sampler when the matroid is the general construction
/// of its own atoms (checked on every subset) or is gammoid-backed. Elements
/// in no atom join as free singletons, which leaves that matroid unchanged.
pub fn choose_sampler(m: &Matroid) -> Result<Sampler> {
    if let Backing::Gammoid(g) = m.backing() {
        return Ok(Sampler::Gammoid(g.clone()));
    }
    let n = m.n();
    let k = m.full_rank();
    if k == 0 {
        return Ok(Sampler::Uniform);
    }
    let z = m.cyclic_flats()?;
    let atoms: Vec<(GroundSubset, usize)> = z
        .atoms()
        .into_iter()
        .filter_map(|s| z.rank_of(&s).map(|r| (s, r)))
        .filter(|&(s, r)| r < k && !s.is_empty())
        .collect();
    let mut flats = atoms.clone();
    let covered = atoms.iter().fold(0u128, |b, (s, _)| b | s.bits());
    for e in 0..n {
        if covered & (1u128 << e) == 0 {
            flats.push((GroundSubset::singleton(n, e)?, 1));
        }
    }
    let Ok(sys) = SetSystem::new(n, k, flats) else { return Ok(Sampler::Uniform) };
    let Ok(g) = layered_graph(&sys) else { return Ok(Sampler::Uniform) };
    let gm = Matroid::from_gammoid(g.clone());
    if gm.first_rank_mismatch(m)?.is_none() {
        Ok(Sampler::Gammoid(g))
    } else {
        Ok(Sampler::Uniform)
    }
}

fn draw(sampler: &Sampler, f: PrimeField, k: usize, n: usize, rng: &mut ChaCha8Rng) -> FieldMatrix {
    let p = f.order();
    match sampler {
        Sampler::Uniform => {
            let rows = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
            FieldMatrix::new(p, rows).expect("entries reduced")
        }
        Sampler::Gammoid(g) => {
            let h = g.middle().len();
            // weights source -> middle
            let mut w1 = FieldMatrix::zeros(p, h, n).expect("prime");
            for (e, arcs) in g.arcs().iter().enumerate() {
                for &u in arcs {
                    w1.set(u, e, rng.gen_range(1..p));
                }
            }
            // weights middle -> sink, complete bipartite; zero is allowed here
            // or GF(2) would always give an all-ones block of rank one
            let mut w2 = FieldMatrix::zeros(p, k, h).expect("prime");
            for t in 0..k {
                for u in 0..h {
                    w2.set(t, u, rng.gen_range(0..p));
                }
            }
            w2.mul(&w1).expect("shapes agree")
        }
    }
}

fn attempt_rng(seed: u64, attempt: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt as u64);
    rng
}

/// Draws candidate matrices until one has the same rank as `m` on every
/// column subset. Attempt `i` uses its own stream of the seeded generator,
/// and the lowest successful attempt wins, so results do not depend on the
/// number of threads.
pub fn find_representation(m: &Matroid, p: u32, seed: u64, max_attempts: usize) -> Result<RepresentationResult> {
    let n = m.n();
    if n > REPRESENT_MAX_N {
        return Err(Error::capacity("representation ground set", REPRESENT_MAX_N));
    }
    let f = PrimeField::new(p)?;
    // A matroid given by a matrix over this field certifies itself.
    if let Backing::Matrix(a) = m.backing() {
        if a.prime() == p && a.nrows() == m.full_rank() {
            return Ok(RepresentationResult { prime: p, seed, sampler: "given", attempts: 0, matrix: Some(a.clone()) });
        }
    }
    let sampler = choose_sampler(m)?;
    find_representation_with(m, f, &sampler, seed, max_attempts)
}

pub fn find_representation_with(
    m: &Matroid,
    f: PrimeField,
    sampler: &Sampler,
    seed: u64,
    max_attempts: usize,
) -> Result<RepresentationResult> {
    let n = m.n();
    if n > REPRESENT_MAX_N {
        return Err(Error::capacity("representation ground set", REPRESENT_MAX_N));
    }
    let table = m.rank_table()?;
    let k = m.full_rank();
    let p = f.order();
    let check = |a: &FieldMatrix| -> bool {
        // Full rank first; most failures show up there or on small sets.
        if a.rank() != k {
            return false;
        }
        (1..table.len()).all(|x| a.column_rank(x as u128) == table[x] as usize)
    };
    let chunk = rayon::current_num_threads().max(1) * 4;
    let mut start = 0;
    while start < max_attempts {
        let end = (start + chunk).min(max_attempts);
        let hit = (start..end)
            .into_par_iter()
            .map(|i| {
                let mut rng = attempt_rng(seed, i);
                let a = draw(sampler, f, k, n, &mut rng);
                (i, check(&a).then_some(a))
            })
            .filter_map(|(i, a)| a.map(|a| (i, a)))
            .min_by_key(|(i, _)| *i);
        if let Some((i, a)) = hit {
            return Ok(RepresentationResult { prime: p, seed, sampler: sampler.name(), attempts: i + 1, matrix: Some(a) });
        }
        start = end;
    }
    Ok(RepresentationResult { prime: p, seed, sampler: sampler.name(), attempts: max_attempts, matrix: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldScanEntry {
    pub prime: u32,
    pub found: bool,
    pub attempts: usize,
}

/// Runs [`find_representation`] over each prime in turn.
pub fn min_field_scan(m: &Matroid, primes: &[u32], seed: u64, max_attempts: usize) -> Result<Vec<FieldScanEntry>> {
    let mut out = Vec::with_capacity(primes.len());
    for &p in primes {
        let r = find_representation(m, p, seed, max_attempts)?;
        out.push(FieldScanEntry { prime: p, found: r.found(), attempts: r.attempts });
    }
    Ok(out)
}

/// Matrix as CSV, one row per line.
pub fn matrix_to_csv(a: &FieldMatrix) -> String {
    let mut s = String::new();
    for row in a.row_vecs() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}
