//! Prime-field arithmetic and dense matrices over GF(p).

use crate::error::{Error, Result};
use std::fmt;

/// The prime field GF(p) for 2 ≤ p ≤ 251. Elements are stored as `u8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u8,
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Returns the prime `p` if `q = p^m` for some `m ≥ 2`.
fn prime_power_base(q: u32) -> Option<u32> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    (r == 1 && p != q).then_some(p)
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !(2..=251).contains(&q) {
            return Err(Error::FieldOutOfRange(q));
        }
        if is_prime(q) {
            Ok(PrimeField { p: q as u8 })
        } else if prime_power_base(q).is_some() {
            Err(Error::ExtensionField(q))
        } else {
            Err(Error::NotPrime(q))
        }
    }

    pub fn binary() -> Self {
        PrimeField { p: 2 }
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn is_binary(&self) -> bool {
        self.p == 2
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse by Fermat's little theorem.
    ///
    /// Panics on zero.
    pub fn inv(&self, a: u8) -> u8 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        let mut result = 1u8;
        let mut base = a;
        let mut e = self.p as u32 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn contains(&self, value: u32) -> bool {
        value < self.p as u32
    }
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FieldMatrix GF({}) {}x{}",
            self.field.p, self.rows, self.cols
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FieldMatrix {
    /// Builds a matrix from row-major entries, rejecting values outside the field.
    ///
    /// Zero-row matrices are allowed (they arise as parity matrices of
    /// `[n, n]` codes); a zero column count is not.
    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: Vec<u8>) -> Result<Self> {
        if cols == 0 {
            return Err(Error::BadDimensions {
                rows,
                cols,
                reason: "matrix needs at least one column",
            });
        }
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if let Some(&bad) = entries.iter().find(|&&e| !field.contains(e as u32)) {
            return Err(Error::BadEntry {
                value: bad as u32,
                p: field.order(),
            });
        }
        Ok(FieldMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.entries[i * size + i] = 1;
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(self.field.contains(v as u32));
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = self.field;
        let mut out = vec![0u8; self.rows * other.cols];
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u32;
                for t in 0..self.cols {
                    acc += self.get(r, t) as u32 * other.get(t, c) as u32;
                }
                out[r * other.cols + c] = (acc % f.order()) as u8;
            }
        }
        // products with an empty inner dimension still have a column count
        Ok(FieldMatrix {
            field: f,
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    /// Row vector times matrix: `v · self`.
    pub fn left_mul_vec(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let p = self.field.order();
        let mut acc = vec![0u32; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            for (a, &g) in acc.iter_mut().zip(self.row(r)) {
                *a += coef as u32 * g as u32;
            }
        }
        Ok(acc.into_iter().map(|a| (a % p) as u8).collect())
    }

    /// Matrix times column vector: `self · v`.
    pub fn mul_vec(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let p = self.field.order();
        Ok((0..self.rows)
            .map(|r| {
                let acc: u32 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u32 * b as u32)
                    .sum();
                (acc % p) as u8
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }
}

/// Reduced row-echelon form and rank.
///
/// The returned matrix has the same shape as the input; zero rows are
/// collected at the bottom. Row space is preserved.
pub fn row_reduce(m: &FieldMatrix) -> (FieldMatrix, usize) {
    let (r, pivots) = rref_with_pivots(m);
    (r, pivots.len())
}

/// RREF together with the pivot column of each nonzero row.
pub(crate) fn rref_with_pivots(m: &FieldMatrix) -> (FieldMatrix, Vec<usize>) {
    let f = m.field;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..a.cols {
        if lead == a.rows {
            break;
        }
        let Some(pr) = (lead..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        if pr != lead {
            for c in 0..a.cols {
                a.entries.swap(pr * a.cols + c, lead * a.cols + c);
            }
        }
        let inv = f.inv(a.get(lead, col));
        for c in 0..a.cols {
            let v = f.mul(a.get(lead, c), inv);
            a.set(lead, c, v);
        }
        for r in 0..a.rows {
            let factor = a.get(r, col);
            if r == lead || factor == 0 {
                continue;
            }
            for c in 0..a.cols {
                let v = f.sub(a.get(r, c), f.mul(factor, a.get(lead, c)));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        lead += 1;
    }
    (a, pivots)
}

pub fn rank(m: &FieldMatrix) -> usize {
    row_reduce(m).1
}

/// Parity-check matrix `H` with `G · Hᵀ = 0` and rank `n − k`.
///
/// Column order of the generator is preserved: `H` has a unit entry in each
/// non-pivot column of the RREF of `G`.
pub fn parity_from_generator(generator: &FieldMatrix) -> Result<FieldMatrix> {
    let k = generator.rows;
    let n = generator.cols;
    let f = generator.field;
    let (r, pivots) = rref_with_pivots(generator);
    if pivots.len() != k {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            k,
        });
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut h = FieldMatrix::zeros(f, free.len(), n);
    for (row, &fc) in free.iter().enumerate() {
        h.set(row, fc, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            h.set(row, pc, f.neg(r.get(i, fc)));
        }
    }
    Ok(h)
}

/// A subspace of GF(p)^m held as an RREF basis, with membership tests.
#[derive(Clone, Debug)]
pub(crate) struct Subspace {
    field: PrimeField,
    dim: usize,
    basis: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(crate) fn span(field: PrimeField, dim: usize, vectors: &[Vec<u8>]) -> Self {
        if vectors.is_empty() || dim == 0 {
            return Subspace {
                field,
                dim,
                basis: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let m = FieldMatrix::from_rows(field, vectors).expect("consistent vector lengths");
        let (r, pivots) = rref_with_pivots(&m);
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            field,
            dim,
            basis,
            pivots,
        }
    }

    pub(crate) fn contains(&self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut w = v.to_vec();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                for (x, &y) in w.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }
}
