//! Finite-dimensional unital associative algebras over F_p given by structure
//! constants, and ring-level ideal machinery.

mod ideal;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fqlinalg::{self, is_prime, FpMatrix, Subspace};
use crate::{Error, Result};

pub use ideal::{
    InjectiveFamily, LeftIdeal, MaximalClass, QuotientAlgebra, RightIdeal, Subring,
};

/// Finite-dimensional unital associative algebra over F_p.
///
/// The product of basis elements is `b_i · b_j = Σ_k table[i][j][k] b_k`.
/// Elements are coordinate vectors of length `dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AlgebraJson", into = "AlgebraJson")]
pub struct Algebra {
    p: u32,
    dim: usize,
    table: Vec<u32>,
    unit: Vec<u32>,
    transpose: Option<Vec<usize>>,
}

/// Wire format: `{"p", "dim", "table", "unit"}` plus an optional basis
/// permutation `"transpose"` for algebras carrying a transpose involution.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct AlgebraJson {
    p: u32,
    dim: usize,
    table: Vec<Vec<Vec<u32>>>,
    unit: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    transpose: Option<Vec<usize>>,
}

impl TryFrom<AlgebraJson> for Algebra {
    type Error = Error;

    fn try_from(j: AlgebraJson) -> Result<Self> {
        let a = Algebra::from_structure_constants(j.p, j.dim, &j.table, j.unit)?;
        match j.transpose {
            Some(t) => a.with_transpose(t),
            None => Ok(a),
        }
    }
}

impl From<Algebra> for AlgebraJson {
    fn from(a: Algebra) -> Self {
        let d = a.dim;
        let table = (0..d)
            .map(|i| (0..d).map(|j| a.product_row(i, j).to_vec()).collect())
            .collect();
        AlgebraJson {
            p: a.p,
            dim: a.dim,
            table,
            unit: a.unit,
            transpose: a.transpose,
        }
    }
}

impl Algebra {
    /// Validates shape, reduction mod `p`, associativity on every basis triple
    /// and the two unit laws.
    pub fn from_structure_constants(
        p: u32,
        dim: usize,
        table: &[Vec<Vec<u32>>],
        unit: Vec<u32>,
    ) -> Result<Algebra> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if dim == 0 {
            return Err(Error::InvalidTable("dimension must be at least 1".into()));
        }
        if table.len() != dim || unit.len() != dim {
            return Err(Error::InvalidTable(format!(
                "table has {} slices and unit has length {}, expected {dim}",
                table.len(),
                unit.len()
            )));
        }
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for (i, slice) in table.iter().enumerate() {
            if slice.len() != dim {
                return Err(Error::InvalidTable(format!("table[{i}] has wrong length")));
            }
            for (j, row) in slice.iter().enumerate() {
                if row.len() != dim {
                    return Err(Error::InvalidTable(format!(
                        "table[{i}][{j}] has wrong length"
                    )));
                }
                flat.extend_from_slice(row);
            }
        }
        Self::from_flat(p, dim, flat, unit)
    }

    fn from_flat(p: u32, dim: usize, table: Vec<u32>, unit: Vec<u32>) -> Result<Algebra> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if table.iter().chain(&unit).any(|&x| x >= p) {
            return Err(Error::InvalidTable(format!("entries must be reduced mod {p}")));
        }
        if unit.iter().all(|&x| x == 0) {
            return Err(Error::InvalidTable("unit must be nonzero".into()));
        }
        let a = Algebra {
            p,
            dim,
            table,
            unit,
            transpose: None,
        };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        let right: Vec<FpMatrix> = (0..d).map(|k| self.right_mul_basis(k)).collect();
        for i in 0..d {
            for j in 0..d {
                let ij = self.product_row(i, j);
                for (k, rk) in right.iter().enumerate() {
                    let lhs = rk.vec_mul(ij);
                    let rhs = self.mul(&self.basis_vector(i), self.product_row(j, k));
                    if lhs != rhs {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..d {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::UnitLaw(i));
            }
        }
        Ok(())
    }

    /// Attaches a transpose involution given as a basis permutation; it must
    /// be an involutive anti-automorphism of the multiplication.
    pub fn with_transpose(mut self, perm: Vec<usize>) -> Result<Algebra> {
        let d = self.dim;
        let mut seen = vec![false; d];
        if perm.len() != d || perm.iter().any(|&t| t >= d || std::mem::replace(&mut seen[t], true)) {
            return Err(Error::InvalidTable("transpose is not a permutation".into()));
        }
        if (0..d).any(|i| perm[perm[i]] != i) {
            return Err(Error::InvalidTable("transpose is not an involution".into()));
        }
        let apply = |v: &[u32]| {
            let mut w = vec![0; d];
            for (i, &x) in v.iter().enumerate() {
                w[perm[i]] = x;
            }
            w
        };
        for i in 0..d {
            for j in 0..d {
                if apply(self.product_row(i, j)) != self.product_row(perm[j], perm[i]) {
                    return Err(Error::InvalidTable(
                        "transpose is not an anti-automorphism".into(),
                    ));
                }
            }
        }
        if apply(&self.unit) != self.unit {
            return Err(Error::InvalidTable("transpose does not fix the unit".into()));
        }
        self.transpose = Some(perm);
        Ok(self)
    }

    /// The prime field itself, as a 1-dimensional algebra.
    pub fn prime_field(p: u32) -> Result<Algebra> {
        Self::from_flat(p, 1, vec![1 % p], vec![1 % p]).and_then(|a| a.with_transpose(vec![0]))
    }

    /// M_n(F_p) on the matrix-unit basis `E_ij`, index `i·n + j`, carrying the
    /// transpose `E_ij ↦ E_ji`.
    pub fn matrix_algebra(n: usize, p: u32) -> Result<Algebra> {
        if n == 0 {
            return Err(Error::InvalidTable("n must be at least 1".into()));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let d = n * n;
        let mut table = vec![0u32; d * d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // E_ij E_jl = E_il
                    let a = i * n + j;
                    let b = j * n + l;
                    table[(a * d + b) * d + i * n + l] = 1;
                }
            }
        }
        let mut unit = vec![0u32; d];
        for i in 0..n {
            unit[i * n + i] = 1;
        }
        let perm = (0..d).map(|x| (x % n) * n + x / n).collect();
        Self::from_flat(p, d, table, unit)?.with_transpose(perm)
    }

    /// Upper-triangular n×n matrices on the basis `E_ij`, `i ≤ j`, row-major.
    pub fn triangular_algebra(n: usize, p: u32) -> Result<Algebra> {
        if n == 0 {
            return Err(Error::InvalidTable("n must be at least 1".into()));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let units = Self::triangular_units(n);
        let d = units.len();
        let index = |i: usize, j: usize| units.iter().position(|&u| u == (i, j));
        let mut table = vec![0u32; d * d * d];
        for (a, &(i, j)) in units.iter().enumerate() {
            for (b, &(k, l)) in units.iter().enumerate() {
                if j == k {
                    let c = index(i, l).expect("i ≤ j ≤ l");
                    table[(a * d + b) * d + c] = 1;
                }
            }
        }
        let mut unit = vec![0u32; d];
        for i in 0..n {
            unit[index(i, i).unwrap()] = 1;
        }
        Self::from_flat(p, d, table, unit)
    }

    /// Matrix-unit positions `(i, j)` of the triangular basis, in basis order.
    pub fn triangular_units(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
    }

    /// Direct product with componentwise multiplication; bases concatenated.
    pub fn product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
        if a.p != b.p {
            return Err(Error::DimensionMismatch(format!(
                "product of algebras over F_{} and F_{}",
                a.p, b.p
            )));
        }
        let d = a.dim + b.dim;
        let mut table = vec![0u32; d * d * d];
        for i in 0..a.dim {
            for j in 0..a.dim {
                for k in 0..a.dim {
                    table[(i * d + j) * d + k] = a.table[(i * a.dim + j) * a.dim + k];
                }
            }
        }
        let o = a.dim;
        for i in 0..b.dim {
            for j in 0..b.dim {
                for k in 0..b.dim {
                    table[((o + i) * d + o + j) * d + o + k] = b.table[(i * b.dim + j) * b.dim + k];
                }
            }
        }
        let mut unit = a.unit.clone();
        unit.extend_from_slice(&b.unit);
        let out = Self::from_flat(a.p, d, table, unit)?;
        match (&a.transpose, &b.transpose) {
            (Some(ta), Some(tb)) => {
                let perm = ta.iter().copied().chain(tb.iter().map(|&t| t + o)).collect();
                out.with_transpose(perm)
            }
            _ => Ok(out),
        }
    }

    /// Same basis, product reversed. Right modules over the opposite algebra
    /// are left modules over `self`.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim;
        let mut table = vec![0u32; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    table[(i * d + j) * d + k] = self.table[(j * d + i) * d + k];
                }
            }
        }
        Algebra {
            p: self.p,
            dim: d,
            table,
            unit: self.unit.clone(),
            transpose: self.transpose.clone(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn transpose_perm(&self) -> Option<&[usize]> {
        self.transpose.as_deref()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Coordinates of `b_i · b_j`.
    pub fn product_row(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim;
        &self.table[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// Bilinear product. Panics if either coordinate vector has the wrong length.
    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.dim, "element of the wrong algebra");
        assert_eq!(y.len(), self.dim, "element of the wrong algebra");
        let p = self.p as u64;
        let mut acc = vec![0u64; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = xi as u64 * yj as u64 % p;
                for (slot, &t) in acc.iter_mut().zip(self.product_row(i, j)) {
                    if t != 0 {
                        *slot = (*slot + c * t as u64) % p;
                    }
                }
            }
        }
        acc.into_iter().map(|v| v as u32).collect()
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| fqlinalg::add(self.p, a, b)).collect()
    }

    pub fn sub(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| fqlinalg::sub(self.p, a, b)).collect()
    }

    fn right_mul_basis(&self, k: usize) -> FpMatrix {
        let d = self.dim;
        let mut m = FpMatrix::zeros(self.p, d, d);
        for j in 0..d {
            for (c, &t) in self.product_row(j, k).iter().enumerate() {
                m.set(j, c, t);
            }
        }
        m
    }

    /// Matrix of `x ↦ x·a` (row `j` is `b_j · a`).
    pub fn right_mul_matrix(&self, a: &[u32]) -> FpMatrix {
        let rows: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        FpMatrix::from_rows(self.p, self.dim, &rows).expect("square")
    }

    /// Matrix of `x ↦ a·x` (row `j` is `a · b_j`).
    pub fn left_mul_matrix(&self, a: &[u32]) -> FpMatrix {
        let rows: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        FpMatrix::from_rows(self.p, self.dim, &rows).expect("square")
    }

    /// `x` is a unit iff left multiplication by it is invertible (a one-sided
    /// inverse is two-sided in finite dimension).
    pub fn is_unit(&self, x: &[u32]) -> bool {
        self.left_mul_matrix(x).is_invertible()
    }

    pub fn is_idempotent(&self, e: &[u32]) -> bool {
        self.mul(e, e) == e
    }

    pub fn elements(&self, budget: u64) -> Result<fqlinalg::VectorIter> {
        fqlinalg::enumerate_vectors(self.dim, self.p, budget)
    }

    pub fn element(self: &Arc<Self>, coords: Vec<u32>) -> Result<RingElement> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in an algebra of dimension {}",
                coords.len(),
                self.dim
            )));
        }
        Ok(RingElement {
            algebra: Arc::clone(self),
            coords: coords.into_iter().map(|c| c % self.p).collect(),
        })
    }

    /// Subspace of the whole algebra.
    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.p, self.dim)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebra serializes")
    }

    pub fn from_json(s: &str) -> Result<Algebra> {
        Ok(serde_json::from_str(s)?)
    }
}

/// An element together with the algebra it lives in.
#[derive(Clone, Debug)]
pub struct RingElement {
    algebra: Arc<Algebra>,
    coords: Vec<u32>,
}

impl RingElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    fn same_algebra(&self, other: &RingElement) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::DimensionMismatch("elements of different algebras".into()))
        }
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_algebra(other)?;
        Ok(RingElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.algebra.mul(&self.coords, &other.coords),
        })
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_algebra(other)?;
        Ok(RingElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.algebra.add(&self.coords, &other.coords),
        })
    }

    pub fn is_unit(&self) -> bool {
        self.algebra.is_unit(&self.coords)
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other).is_ok() && self.coords == other.coords
    }
}

/// F_p[x]/(x²) on the basis `1, x`.
pub fn dual_numbers(p: u32) -> Result<Algebra> {
    let table = vec![
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![0, 0]],
    ];
    Algebra::from_structure_constants(p, 2, &table, vec![1, 0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize, j: usize) -> Vec<u32> {
        let mut v = vec![0; n * n];
        v[i * n + j] = 1;
        v
    }

    #[test]
    fn one_dimensional_table_is_the_field() {
        let f = Algebra::from_structure_constants(5, 1, &[vec![vec![1]]], vec![1]).unwrap();
        assert_eq!(f.mul(&[2], &[3]), vec![1]);
        assert!(f.is_unit(&[4]));
        assert!(!f.is_unit(&[0]));
    }

    #[test]
    fn dual_numbers_validate_and_x_is_not_a_unit() {
        let a = dual_numbers(2).unwrap();
        assert_eq!(a.mul(&[0, 1], &[0, 1]), vec![0, 0]);
        assert!(!a.is_unit(&[0, 1]));
        assert!(a.is_unit(&[1, 1]));
    }

    #[test]
    fn non_associative_table_rejected() {
        // basis 1, a, b with a·a = b, a·b = 0, b·a = a: (aa)a = a but a(aa) = 0.
        let mut t = vec![vec![vec![0u32; 3]; 3]; 3];
        for i in 0..3 {
            t[0][i][i] = 1;
            t[i][0][i] = 1;
        }
        t[1][1] = vec![0, 0, 1];
        t[2][1] = vec![0, 1, 0];
        let err = Algebra::from_structure_constants(3, 3, &t, vec![1, 0, 0]).unwrap_err();
        assert!(matches!(err, Error::NonAssociative(..)), "{err}");
    }

    #[test]
    fn unit_law_and_prime_checked() {
        let t = vec![vec![vec![1]]];
        assert!(matches!(
            Algebra::from_structure_constants(4, 1, &t, vec![1]),
            Err(Error::NotPrime(4))
        ));
        let t = dual_numbers(2).unwrap();
        let tab: Vec<Vec<Vec<u32>>> = (0..2)
            .map(|i| (0..2).map(|j| t.product_row(i, j).to_vec()).collect())
            .collect();
        assert!(matches!(
            Algebra::from_structure_constants(2, 2, &tab, vec![0, 1]),
            Err(Error::UnitLaw(_))
        ));
    }

    #[test]
    fn matrix_units_multiply() {
        let m1 = Algebra::matrix_algebra(1, 3).unwrap();
        assert_eq!(m1.dim(), 1);
        let m = Algebra::matrix_algebra(2, 2).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.mul(&e(2, 0, 0), &e(2, 0, 1)), e(2, 0, 1));
        assert_eq!(m.mul(&e(2, 0, 1), &e(2, 0, 0)), vec![0; 4]);
        assert_eq!(m.mul(&e(2, 0, 1), &e(2, 1, 0)), e(2, 0, 0));
        assert_eq!(m.mul(&m.unit().to_vec(), &e(2, 1, 0)), e(2, 1, 0));
        assert_eq!(m.transpose_perm(), Some(&[0, 2, 1, 3][..]));
    }

    #[test]
    fn triangular_dimensions() {
        assert_eq!(Algebra::triangular_algebra(2, 2).unwrap().dim(), 3);
        assert_eq!(Algebra::triangular_algebra(3, 2).unwrap().dim(), 6);
        assert!(Algebra::triangular_algebra(2, 2).unwrap().transpose_perm().is_none());
    }

    #[test]
    fn product_is_componentwise() {
        let f = Algebra::prime_field(2).unwrap();
        let ff = Algebra::product(&f, &f).unwrap();
        assert_eq!(ff.unit(), &[1, 1]);
        assert_eq!(ff.mul(&[1, 0], &[0, 1]), vec![0, 0]);
        assert!(ff.is_idempotent(&[1, 0]));
    }

    #[test]
    fn opposite_reverses_products() {
        let m = Algebra::matrix_algebra(2, 3).unwrap();
        let op = m.opposite();
        let a = e(2, 0, 1);
        let b = e(2, 1, 1);
        assert_eq!(op.mul(&a, &b), m.mul(&b, &a));
    }

    #[test]
    fn ring_element_mismatch() {
        let a = Arc::new(Algebra::matrix_algebra(2, 2).unwrap());
        let b = Arc::new(dual_numbers(2).unwrap());
        let x = a.element(e(2, 0, 1)).unwrap();
        let y = b.element(vec![0, 1]).unwrap();
        assert!(x.mul(&y).is_err());
        let one = a.element(a.unit().to_vec()).unwrap();
        assert_eq!(one.mul(&x).unwrap(), x);
        assert!(a.element(vec![1]).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        for a in [
            Algebra::matrix_algebra(2, 3).unwrap(),
            Algebra::triangular_algebra(2, 2).unwrap(),
            dual_numbers(2).unwrap(),
        ] {
            let s = a.to_json();
            let b = Algebra::from_json(&s).unwrap();
            assert_eq!(a, b);
            assert_eq!(s, b.to_json());
        }
        let s = dual_numbers(2).unwrap().to_json();
        assert_eq!(
            s,
            r#"{"p":2,"dim":2,"table":[[[1,0],[0,1]],[[0,1],[0,0]]],"unit":[1,0]}"#
        );
    }

    #[test]
    fn json_rejects_unreduced_entries() {
        let s = r#"{"p":2,"dim":1,"table":[[[3]]],"unit":[1]}"#;
        assert!(Algebra::from_json(s).is_err());
    }
}
