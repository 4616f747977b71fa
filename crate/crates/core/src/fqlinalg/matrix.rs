use std::fmt;

use super::field;
use super::subspace::Subspace;
use crate::{Error, Result};

/// Dense matrix over F_p, row-major.
///
/// Vectors are rows and matrices act on the right: the image of `v` under `m`
/// is `v · m`. Composition "first `a`, then `b`" is therefore the product `a · b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`solve`]: one particular solution (if any) and the kernel of the
/// coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<FpMatrix>,
    pub kernel: Subspace,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Entries are reduced mod `p`.
    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data: data.into_iter().map(|x| x % p).collect(),
        })
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows<R: AsRef<[u32]>>(p: u32, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|&x| x % p));
        }
        Ok(FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Integer entries, possibly negative, reduced mod `p`.
    pub fn from_signed_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let reduced: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect())
            .collect();
        Self::from_rows(p, cols, &reduced)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.row_iter().map(<[u32]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Matrix product `self · other`. Panics on shape mismatch.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p, "matrices over different fields");
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let acc = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
        }
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| x as u32).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "vector length does not match matrix rows");
        let p = self.p as u64;
        let mut acc = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (slot, &b) in acc.iter_mut().zip(self.row(k)) {
                *slot = (*slot + a as u64 * b as u64) % p;
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| field::add(self.p, a, b))
            .collect();
        self.with_data(data)
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| field::sub(self.p, a, b))
            .collect();
        self.with_data(data)
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let data = self.data.iter().map(|&a| field::mul(self.p, a, c)).collect();
        self.with_data(data)
    }

    fn with_data(&self, data: Vec<u32>) -> FpMatrix {
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols,
            data,
        }
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Square block-diagonal matrix.
    pub fn block_diag(p: u32, blocks: &[FpMatrix]) -> FpMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = FpMatrix::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(r0 + i) * cols + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    fn reduce_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = field::inv(p, self.data[r * cols + c]);
            for j in c..cols {
                let x = &mut self.data[r * cols + j];
                *x = field::mul(p, *x, inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let t = field::mul(p, f, self.data[r * cols + j]);
                    let x = &mut self.data[i * cols + j];
                    *x = field::sub(p, *x, t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form, same shape (zero rows at the bottom).
    pub fn rref(&self) -> FpMatrix {
        let mut m = self.clone();
        m.reduce_in_place();
        m
    }

    pub(crate) fn rref_with_pivots(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.reduce_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&FpMatrix::identity(self.p, n));
        let (red, piv) = aug.rref_with_pivots();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = red.get(i, n + j);
            }
        }
        Some(inv)
    }

    pub fn pow(&self, mut k: u32) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Row space as a canonical subspace.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix(self)
    }

    /// `{x : self · xᵀ = 0}`, expressed as row vectors of length `cols`.
    pub fn right_kernel(&self) -> Subspace {
        let (red, piv) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![0u32; self.cols];
            v[f] = 1 % self.p;
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = field::neg(self.p, red.get(r, f));
            }
            basis.push(v);
        }
        let m = FpMatrix::from_rows(self.p, self.cols, &basis).expect("kernel rows");
        Subspace::from_matrix(&m)
    }

    /// `{y : y · self = 0}`, row vectors of length `rows`.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().right_kernel()
    }
}

/// Solves `a · x = b` for `x`.
///
/// Inconsistency is reported as `particular: None`, not as an error.
pub fn solve(a: &FpMatrix, b: &FpMatrix) -> Result<Solution> {
    if a.rows != b.rows || a.p != b.p {
        return Err(Error::DimensionMismatch(format!(
            "solve: a is {}x{}, b is {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let n = a.cols;
    let k = b.cols;
    let (red, piv) = a.hstack(b).rref_with_pivots();
    let kernel = a.right_kernel();
    if piv.iter().any(|&c| c >= n) {
        return Ok(Solution {
            particular: None,
            kernel,
        });
    }
    let mut x = FpMatrix::zeros(a.p, n, k);
    for (r, &pc) in piv.iter().enumerate() {
        for j in 0..k {
            x.data[pc * k + j] = red.get(r, n + j);
        }
    }
    Ok(Solution {
        particular: Some(x),
        kernel,
    })
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix<F_{}>{:?}", self.p, self.to_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqlinalg::enumerate_vectors;

    fn m(p: u32, rows: &[&[u32]]) -> FpMatrix {
        FpMatrix::from_rows(p, rows[0].len(), rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = FpMatrix::identity(2, 2);
        assert_eq!(id.rref(), id);
        let z = FpMatrix::zeros(2, 3, 2);
        assert_eq!(z.rref(), z);
        assert_eq!(m(2, &[&[1, 1], &[1, 0]]).rref(), id);
    }

    #[test]
    fn rref_keeps_zero_rows_last() {
        let a = m(3, &[&[0, 0, 0], &[2, 1, 0], &[1, 2, 0]]);
        assert_eq!(a.rref(), m(3, &[&[1, 2, 0], &[0, 0, 0], &[0, 0, 0]]));
    }

    #[test]
    fn solve_identity_and_zero() {
        let v = m(5, &[&[3], &[4]]);
        let s = solve(&FpMatrix::identity(5, 2), &v).unwrap();
        assert_eq!(s.particular, Some(v));
        assert_eq!(s.kernel.dim(), 0);

        let s = solve(&FpMatrix::zeros(5, 2, 2), &FpMatrix::zeros(5, 2, 1)).unwrap();
        assert_eq!(s.particular, Some(FpMatrix::zeros(5, 2, 1)));
        assert_eq!(s.kernel, Subspace::full(5, 2));
    }

    #[test]
    fn solve_single_equation_over_f2() {
        // enumerate all x∈F_2²: x0+x1=1 ⇔ x∈{(1,0),(0,1)}; kernel {(0,0),(1,1)}
        let a = m(2, &[&[1, 1]]);
        let b = m(2, &[&[1]]);
        let sols: Vec<Vec<u32>> = enumerate_vectors(2, 2, 16)
            .unwrap()
            .filter(|x| (x[0] + x[1]) % 2 == 1)
            .collect();
        assert_eq!(sols, vec![vec![0, 1], vec![1, 0]]);
        let s = solve(&a, &b).unwrap();
        assert_eq!(s.particular.unwrap().into_data(), vec![1, 0]);
        assert_eq!(s.kernel, Subspace::span(2, 2, &[vec![1, 1]]).unwrap());
    }

    #[test]
    fn solve_inconsistent_is_not_an_error() {
        let a = m(3, &[&[1, 0], &[1, 0]]);
        let b = m(3, &[&[1], &[2]]);
        assert!(solve(&a, &b).unwrap().particular.is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = FpMatrix::identity(2, 2);
        let b = FpMatrix::zeros(2, 3, 1);
        assert!(matches!(solve(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(7, &[&[2, 3], &[1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FpMatrix::identity(7, 2));
        assert!(m(7, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kernels() {
        let a = m(2, &[&[1, 1, 0], &[0, 1, 1]]);
        let rk = a.right_kernel();
        assert_eq!(rk, Subspace::span(2, 3, &[vec![1, 1, 1]]).unwrap());
        let lk = a.left_kernel();
        assert_eq!(lk.dim(), 0);
    }

    #[test]
    fn pow_nilpotent() {
        let n = m(3, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert!(!n.pow(2).is_zero());
        assert!(n.pow(3).is_zero());
        assert_eq!(n.pow(0), FpMatrix::identity(3, 3));
    }
}
