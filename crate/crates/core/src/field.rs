//! Prime fields GF(p) and dense matrices over them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::GroundSubset;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes in `[lo, hi]`, ascending.
pub fn primes_between(lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi).filter(|&p| is_prime(p as u64)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p as u64) {
            return Err(Error::Domain(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }
}

/// Row-major matrix over GF(p). Columns are the matroid ground set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FieldMatrix {
    pub fn new(p: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        PrimeField::new(p)?;
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Format(format!("row {i} has {} entries, expected {c}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= p {
                    return Err(Error::Format(format!("entry ({i},{j}) = {v} not reduced mod {p}")));
                }
            }
            data.extend_from_slice(row);
        }
        Ok(FieldMatrix { p, rows: r, cols: c, data })
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self> {
        PrimeField::new(p)?;
        Ok(FieldMatrix { p, rows, cols, data: vec![0; rows * cols] })
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|c| c.to_vec()).collect()
    }

    /// Rank of the submatrix formed by the columns in `cols`.
    pub fn column_rank(&self, cols: u128) -> usize {
        let f = self.field();
        let idx: Vec<usize> = GroundSubset::raw(self.cols, cols).iter().collect();
        let w = idx.len();
        if w == 0 || self.rows == 0 {
            return 0;
        }
        let mut m: Vec<u32> = Vec::with_capacity(self.rows * w);
        for i in 0..self.rows {
            for &j in &idx {
                m.push(self.get(i, j));
            }
        }
        let mut rank = 0;
        for c in 0..w {
            let Some(piv) = (rank..self.rows).find(|&r| m[r * w + c] != 0) else { continue };
            if piv != rank {
                for t in 0..w {
                    m.swap(piv * w + t, rank * w + t);
                }
            }
            let inv = f.inv(m[rank * w + c]);
            for r in rank + 1..self.rows {
                let v = m[r * w + c];
                if v == 0 {
                    continue;
                }
                let factor = f.mul(v, inv);
                for t in c..w {
                    let sub = f.mul(factor, m[rank * w + t]);
                    m[r * w + t] = f.sub(m[r * w + t], sub);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn rank(&self) -> usize {
        self.column_rank(crate::subset::full_mask(self.cols))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.p != other.p || self.cols != other.rows {
            return Err(Error::Domain("incompatible matrix product".into()));
        }
        let f = self.field();
        let mut out = FieldMatrix { p: self.p, rows: self.rows, cols: other.cols, data: vec![0; self.rows * other.cols] };
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(t, j)));
                    out.data[i * other.cols + j] = v;
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.sub(2, 5), 4);
        assert!(PrimeField::new(8).is_err());
        assert!(PrimeField::new(1).is_err());
        assert_eq!(primes_between(2, 20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn ranks() {
        let m = FieldMatrix::new(5, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.column_rank(0b0001), 1);
        assert_eq!(m.column_rank(0b1100), 2);
        let dup = FieldMatrix::new(3, vec![vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(dup.rank(), 1);
        assert!(FieldMatrix::new(5, vec![vec![5]]).is_err());
        assert!(FieldMatrix::new(5, vec![vec![1, 2], vec![1]]).is_err());
    }
}
