//! Dense, deterministic linear algebra over `F_p`.
//!
//! Entries are stored row-major as canonical residues in `u8`, so `p < 256`.
//! Elimination is plain Gauss-Jordan with the first nonzero entry of each
//! column (in row order) as pivot. Row updates for one pivot are independent
//! and run on the rayon pool for large matrices; the result is bit-identical
//! for any worker count.

pub mod gfq;

pub use gfq::{
    enumerate_subspaces, projective_points, rref_gf, span_canonical, subspace_dim, GfVec,
};

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::gf::{inv_mod, is_prime};

/// Work threshold (rows * cols) above which row updates go parallel.
const PAR_THRESHOLD: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatFp {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u8>,
}

/// Output of [`MatFp::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: MatFp,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn check_modulus(p: u32) -> Result<()> {
    if !is_prime(p) || p >= 256 {
        return usage(format!("matrix modulus must be a prime below 256, got {p}"));
    }
    Ok(())
}

impl MatFp {
    /// Builds a matrix from row-major integer entries, reducing them mod `p`.
    pub fn new(rows: usize, cols: usize, p: u32, entries: &[i64]) -> Result<Self> {
        check_modulus(p)?;
        if entries.len() != rows * cols {
            return usage(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            ));
        }
        let m = p as i64;
        Ok(Self {
            rows,
            cols,
            p,
            data: entries.iter().map(|&x| x.rem_euclid(m) as u8).collect(),
        })
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return usage("ragged rows");
        }
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::new(rows.len(), cols, p, &flat)
    }

    /// # Panics
    /// If `p` is not a prime below 256.
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        check_modulus(p).expect("invalid modulus");
        Self {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, p: u32, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| (x as u32) < p));
        Self {
            rows,
            cols,
            p,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c] as u32
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v.rem_euclid(self.p as i64) as u8;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<u32> {
        self.row(r).iter().map(|&x| x as u32).collect()
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return usage(format!("modulus mismatch: {} vs {}", self.p, other.p));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return usage("shape mismatch in add");
        }
        let p = self.p as u16;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ((a as u16 + b as u16) % p) as u8)
            .collect();
        Ok(Self::from_raw(self.rows, self.cols, self.p, data))
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = c.rem_euclid(self.p as i64) as u32;
        let data = self
            .data
            .iter()
            .map(|&a| (a as u32 * c % self.p) as u8)
            .collect();
        Self::from_raw(self.rows, self.cols, self.p, data)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    /// Matrix product; rows of `self` with zero entries are skipped cheaply,
    /// which keeps products with sparse kernel bases fast.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        if self.cols != other.rows {
            return usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let p = self.p;
        let n = other.cols;
        let mut out = vec![0u8; self.rows * n];
        let body = |(r, out_row): (usize, &mut [u8])| {
            let mut acc = vec![0u32; n];
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u32;
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += a * b as u32;
                }
                // keep the accumulator bounded: 255*255*64 < u32::MAX
                if k % 64 == 63 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            for (o, x) in out_row.iter_mut().zip(acc) {
                *o = (x % p) as u8;
            }
        };
        if n == 0 {
            return Ok(Self::zeros(self.rows, 0, p));
        }
        if self.rows * self.cols * n > PAR_THRESHOLD * 16 {
            out.par_chunks_mut(n).enumerate().for_each(body);
        } else {
            out.chunks_mut(n).enumerate().for_each(body);
        }
        Ok(Self::from_raw(self.rows, n, p, out))
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return usage("vector length mismatch");
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(0u64, |acc, (&a, &b)| {
                    (acc + a as u64 * b as u64) % self.p as u64
                }) as u32
            })
            .collect())
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return usage("vector length mismatch");
        }
        let mut acc = vec![0u64; self.cols];
        for (r, &c) in v.iter().enumerate() {
            if c % self.p == 0 {
                continue;
            }
            for (x, &a) in acc.iter_mut().zip(self.row(r)) {
                *x = (*x + c as u64 * a as u64) % self.p as u64;
            }
        }
        Ok(acc.into_iter().map(|x| x as u32).collect())
    }

    pub fn vstack(blocks: &[&MatFp]) -> Result<Self> {
        let Some(first) = blocks.first() else {
            return usage("vstack of nothing");
        };
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            first.same_modulus(b)?;
            if b.cols != first.cols {
                return usage("column count mismatch in vstack");
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(Self::from_raw(rows, first.cols, first.p, data))
    }

    pub fn hstack(blocks: &[&MatFp]) -> Result<Self> {
        let ts: Vec<MatFp> = blocks.iter().map(|b| b.transpose()).collect();
        let refs: Vec<&MatFp> = ts.iter().collect();
        Ok(Self::vstack(&refs)?.transpose())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Self::from_raw(idx.len(), self.cols, self.p, data)
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref {
            rank: pivots.len(),
            reduced: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols, p) = (self.rows, self.cols, self.p);
        let mut pivots = Vec::new();
        let mut r = 0;
        let parallel = rows * cols > PAR_THRESHOLD;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(i) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if i != r {
                for x in 0..cols {
                    self.data.swap(i * cols + x, r * cols + x);
                }
            }
            let inv = inv_mod(self.data[r * cols + c] as u32, p);
            if inv != 1 {
                for x in &mut self.data[r * cols + c..(r + 1) * cols] {
                    *x = ((*x as u32 * inv) % p) as u8;
                }
            }
            let pivot_row: Vec<u8> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            let eliminate = |(j, row): (usize, &mut [u8])| {
                if j == r {
                    return;
                }
                let f = row[c];
                if f == 0 {
                    return;
                }
                let lut = scaled_table(p - f as u32, p);
                for (x, &s) in row[c..].iter_mut().zip(&pivot_row) {
                    let v = *x as u16 + lut[s as usize] as u16;
                    *x = if v as u32 >= p { v - p as u16 } else { v } as u8;
                }
            };
            if parallel {
                self.data
                    .par_chunks_mut(cols)
                    .enumerate()
                    .for_each(eliminate);
            } else {
                self.data.chunks_mut(cols).enumerate().for_each(eliminate);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of `{x : self * x = 0}`, one row per free column, with the free
    /// block equal to the identity.
    pub fn kernel_basis(&self) -> Self {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Self::zeros(free.len(), self.cols, p);
        for (row, &f) in free.iter().enumerate() {
            k.data[row * self.cols + f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let v = reduced.get(i, f);
                k.data[row * self.cols + pc] = ((p - v) % p) as u8;
            }
        }
        k
    }

    /// Basis of the left kernel `{y : y * self = 0}`, as rows.
    pub fn left_kernel_basis(&self) -> Self {
        self.transpose().kernel_basis()
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space(&self) -> Self {
        let r = self.rref();
        let idx: Vec<usize> = (0..r.rank).collect();
        r.reduced.select_rows(&idx)
    }

    /// True when the row spaces coincide.
    pub fn same_row_space(&self, other: &Self) -> bool {
        self.p == other.p && self.cols == other.cols && self.row_space() == other.row_space()
    }

    /// True when every row of `v` lies in the row space of `self`.
    pub fn row_space_contains(&self, v: &[u32]) -> bool {
        let row: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        let Ok(extra) = MatFp::new(1, self.cols, self.p, &row) else {
            return false;
        };
        let Ok(stacked) = MatFp::vstack(&[self, &extra]) else {
            return false;
        };
        stacked.rank() == self.rank()
    }

    /// Text format: header `rows cols p`, then one line of residues per row.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.data.len() * 2 + 16);
        writeln!(s, "{} {} {}", self.rows, self.cols, self.p).unwrap();
        for r in 0..self.rows {
            let mut first = true;
            for &x in self.row(r) {
                if !first {
                    s.push(' ');
                }
                first = false;
                write!(s, "{x}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(msg.to_string());
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty matrix text"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad header")))
            .collect::<Result<_>>()?;
        let [rows, cols, p] = nums[..] else {
            return Err(bad("header must be `rows cols p`"));
        };
        check_modulus(p as u32)?;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| bad("missing row"))?;
            let before = data.len();
            for t in line.split_whitespace() {
                let v: u32 = t.parse().map_err(|_| bad("bad entry"))?;
                if v >= p as u32 {
                    return Err(bad("entry not reduced"));
                }
                data.push(v as u8);
            }
            if data.len() - before != cols {
                return Err(Error::Parse(format!("row {r} has wrong length")));
            }
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(bad("trailing data"));
        }
        Ok(Self::from_raw(rows, cols, p as u32, data))
    }
}

fn scaled_table(f: u32, p: u32) -> [u8; 256] {
    let mut lut = [0u8; 256];
    for (s, slot) in lut.iter_mut().enumerate().take(p as usize) {
        *slot = (f * s as u32 % p) as u8;
    }
    lut
}

pub fn rref_rank(m: &MatFp) -> Rref {
    m.rref()
}

pub fn kernel_basis(m: &MatFp) -> MatFp {
    m.kernel_basis()
}

/// Kronecker product.
pub fn kron(a: &MatFp, b: &MatFp) -> Result<MatFp> {
    a.same_modulus(b)?;
    let p = a.p;
    let (rows, cols) = (a.rows * b.rows, a.cols * b.cols);
    let mut out = MatFp::zeros(rows, cols, p);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x == 0 {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let v = x * b.get(k, l) % p;
                    out.data[(i * b.rows + k) * cols + j * b.cols + l] = v as u8;
                }
            }
        }
    }
    Ok(out)
}

/// Common kernel of a family of square operators, as a canonical row basis:
/// the vectors `x` with `A x = 0` for every `A` in `ops`.
///
/// The family is processed one operator at a time: the current kernel basis
/// `K` is pushed through the next operator and only the combinations of `K`
/// that it annihilates survive. This never forms the full vertical stack.
pub fn common_kernel(dim: usize, p: u32, ops: impl IntoIterator<Item = MatFp>) -> Result<MatFp> {
    let mut basis = MatFp::identity(dim, p);
    let mut first = true;
    for op in ops {
        if op.cols != dim || op.p != p {
            return usage("operator shape or modulus mismatch");
        }
        if basis.rows == 0 {
            break;
        }
        if first {
            basis = op.kernel_basis();
            first = false;
            continue;
        }
        // images of the basis vectors, one per row
        let images = basis.mul(&op.transpose())?;
        let combos = images.left_kernel_basis();
        basis = combos.mul(&basis)?;
    }
    Ok(basis.row_space())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> MatFp {
        MatFp::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_rref() {
        let i = MatFp::identity(4, 5);
        let r = i.rref();
        assert_eq!(r.reduced, i);
        assert_eq!(r.rank, 4);
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);
        assert_eq!(i.kernel_basis().rows(), 0);
    }

    #[test]
    fn zero_matrix() {
        let z = MatFp::zeros(2, 3, 3);
        let r = z.rref();
        assert_eq!((r.rank, r.pivots.clone()), (0, vec![]));
        assert!(r.reduced.is_zero());
        assert_eq!(z.kernel_basis(), MatFp::identity(3, 3));
    }

    #[test]
    fn small_kernel() {
        let a = m(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let k = a.kernel_basis();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row_vec(0), vec![1, 2, 1]);
        assert!(a.mul(&k.transpose()).unwrap().is_zero());
    }

    #[test]
    fn kron_shapes() {
        assert_eq!(
            kron(&MatFp::identity(2, 7), &MatFp::identity(3, 7)).unwrap(),
            MatFp::identity(6, 7)
        );
        let a = m(5, &[&[1, 2], &[3, 4]]);
        let b = MatFp::identity(3, 5);
        let k = kron(&a, &b).unwrap();
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert!(kron(&a, &MatFp::identity(2, 3)).is_err());
    }

    #[test]
    fn mismatched_shapes_rejected() {
        let a = MatFp::zeros(2, 3, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.add(&MatFp::zeros(3, 2, 3)).is_err());
        assert!(MatFp::new(2, 2, 4, &[0; 4]).is_err());
        assert!(MatFp::new(2, 2, 3, &[0; 3]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let a = m(7, &[&[1, 2, 3], &[4, 5, 6]]);
        let s = a.to_text();
        assert_eq!(s, "2 3 7\n1 2 3\n4 5 6\n");
        assert_eq!(MatFp::from_text(&s).unwrap(), a);
        assert!(MatFp::from_text("2 3 7\n1 2 3\n").is_err());
        assert!(MatFp::from_text("1 2 3\n1 5\n").is_err());
    }

    #[test]
    fn common_kernel_matches_stack() {
        let a = m(
            3,
            &[&[1, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 2], &[0, 0, 0, 0]],
        );
        let b = m(
            3,
            &[&[0, 1, 2, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
        );
        let direct = MatFp::vstack(&[&a, &b]).unwrap().kernel_basis().row_space();
        let staged = common_kernel(4, 3, [a, b]).unwrap();
        assert_eq!(direct, staged);
        assert_eq!(staged.rows(), 1);
    }

    #[test]
    fn parallel_and_serial_rref_agree() {
        // big enough to cross the parallel threshold
        let (rows, cols, p) = (300, 260, 5u32);
        let entries: Vec<i64> = (0..rows * cols)
            .map(|i| ((i * 7919 + i / 13) % 11) as i64)
            .collect();
        let a = MatFp::new(rows, cols, p, &entries).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let serial = pool.install(|| a.rref());
        let pool4 = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let par = pool4.install(|| a.rref());
        assert_eq!(serial, par);
    }
}
