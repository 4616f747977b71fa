use std::cmp::Ordering;
use std::fmt;

use super::field;
use super::matrix::FpMatrix;
use crate::{Error, Result};

/// A subspace of F_p^n stored by its reduced row echelon basis (no zero rows).
///
/// The basis is canonical, so structural equality is subspace equality and
/// subspaces can be hashed and ordered.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            basis: FpMatrix::zeros(p, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Subspace {
            basis: FpMatrix::identity(p, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &FpMatrix) -> Self {
        let (red, pivots) = m.rref_with_pivots();
        let rank = pivots.len();
        let data = red.data()[..rank * m.cols()].to_vec();
        Subspace {
            basis: FpMatrix::from_vec(m.prime(), rank, m.cols(), data).expect("rref slice"),
            pivots,
        }
    }

    pub fn span<V: AsRef<[u32]>>(p: u32, ambient: usize, vectors: &[V]) -> Result<Self> {
        Ok(Self::from_matrix(&FpMatrix::from_rows(p, ambient, vectors)?))
    }

    pub fn prime(&self) -> u32 {
        self.basis.prime()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn codimension(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.basis.row_iter()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Standard basis indices that complete the basis to the whole space, in
    /// increasing order.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient_dim())
            .filter(|c| self.pivots.binary_search(c).is_err())
            .collect()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {len} in ambient dimension {}",
                self.ambient_dim()
            )));
        }
        Ok(())
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() || self.prime() != other.prime() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.prime(),
                self.ambient_dim(),
                other.prime(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating the pivot coordinates; zero iff `v`
    /// lies in the subspace. Panics on length mismatch.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient_dim());
        let p = self.prime();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let f = out[pc];
            if f == 0 {
                continue;
            }
            for (x, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *x = field::sub(p, *x, field::mul(p, f, b));
            }
        }
        out
    }

    /// Coordinates of `v` modulo the subspace, on the complement basis given by
    /// [`complement_indices`](Self::complement_indices).
    pub fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let r = self.reduce(v);
        self.complement_indices().into_iter().map(|c| r[c]).collect()
    }

    /// The ambient-dim × codim matrix of the projection onto the quotient.
    pub fn projection_matrix(&self) -> FpMatrix {
        let n = self.ambient_dim();
        let comp = self.complement_indices();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1 % self.prime();
            let r = self.reduce(&e);
            rows.push(comp.iter().map(|&c| r[c]).collect::<Vec<_>>());
        }
        FpMatrix::from_rows(self.prime(), comp.len(), &rows).expect("projection rows")
    }

    pub fn contains_vector(&self, v: &[u32]) -> Result<bool> {
        self.check_len(v.len())?;
        Ok(self.reduce(v).iter().all(|&x| x == 0))
    }

    /// Infallible membership for internal use; panics on length mismatch.
    pub(crate) fn has(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` on the canonical basis, or `None` if `v` is not in the
    /// subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if v.len() != self.ambient_dim() || !self.has(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// Vector with the given coordinates on the canonical basis.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        self.basis.vec_mul(coords)
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_same(other)?;
        Ok(other.basis_vectors().all(|v| self.has(v)))
    }

    pub(crate) fn includes(&self, other: &Subspace) -> bool {
        other.basis_vectors().all(|v| self.has(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(Self::from_matrix(&self.basis.vstack(&other.basis)))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        // (a, b) with a·V + b·W = 0 gives a·V ∈ V ∩ W.
        let stacked = self.basis.vstack(&other.basis);
        let rel = stacked.left_kernel();
        let k = self.dim();
        let mut vecs = Vec::with_capacity(rel.dim());
        for r in rel.basis_vectors() {
            vecs.push(self.basis.vec_mul(&r[..k]));
        }
        Subspace::span(self.prime(), self.ambient_dim(), &vecs)
    }

    /// Image of the subspace under `v ↦ v · m`.
    pub fn image(&self, m: &FpMatrix) -> Subspace {
        Self::from_matrix(&self.basis.mul(m))
    }

    /// Applies a coordinate permutation: coordinate `i` of the input lands at
    /// position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Subspace {
        let n = self.ambient_dim();
        let mut rows = Vec::with_capacity(self.dim());
        for v in self.basis_vectors() {
            let mut w = vec![0u32; n];
            for (i, &x) in v.iter().enumerate() {
                w[perm[i]] = x;
            }
            rows.push(w);
        }
        Subspace::span(self.prime(), n, &rows).expect("permuted rows")
    }
}

impl Ord for Subspace {
    /// Smaller dimension first, then the row-major basis entries.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_dim(), self.dim(), self.basis.data()).cmp(&(
            other.ambient_dim(),
            other.dim(),
            other.basis.data(),
        ))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace<F_{}^{}>{:?}",
            self.prime(),
            self.ambient_dim(),
            self.basis.to_rows()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqlinalg::enumerate_vectors;

    fn span(p: u32, n: usize, v: &[&[u32]]) -> Subspace {
        Subspace::span(p, n, v).unwrap()
    }

    #[test]
    fn lattice_basics() {
        let v = span(2, 2, &[&[1, 1]]);
        assert_eq!(v.sum(&v).unwrap(), v);
        assert_eq!(v.intersection(&v).unwrap(), v);
        let a = span(2, 2, &[&[1, 0]]);
        let b = span(2, 2, &[&[0, 1]]);
        assert!(a.intersection(&b).unwrap().is_zero());
        assert_eq!(a.sum(&v).unwrap(), Subspace::full(2, 2));
    }

    #[test]
    fn sum_matches_enumeration() {
        // span{(1,0)} + span{(1,1)}: all four vectors of F_2² are reachable.
        let a = span(2, 2, &[&[1, 0]]);
        let b = span(2, 2, &[&[1, 1]]);
        let s = a.sum(&b).unwrap();
        let hit = enumerate_vectors(2, 2, 16)
            .unwrap()
            .filter(|v| s.contains_vector(v).unwrap())
            .count();
        assert_eq!(hit, 4);
    }

    #[test]
    fn ambient_mismatch_errors() {
        let a = Subspace::full(2, 2);
        let b = Subspace::full(2, 3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersection(&b).is_err());
        assert!(a.contains(&b).is_err());
        assert!(a.contains_vector(&[1, 0, 0]).is_err());
    }

    #[test]
    fn quotient_coordinates() {
        let n = span(3, 3, &[&[1, 2, 0]]);
        assert_eq!(n.complement_indices(), vec![1, 2]);
        assert_eq!(n.quotient_coords(&[1, 2, 0]), vec![0, 0]);
        // (1,0,0) ≡ (0,-2,0) = (0,1,0)
        assert_eq!(n.quotient_coords(&[1, 0, 0]), vec![1, 0]);
        let p = n.projection_matrix();
        assert_eq!(p.vec_mul(&[1, 0, 0]), vec![1, 0]);
        assert_eq!(n.codimension(), 2);
    }

    #[test]
    fn coordinates_round_trip() {
        let s = span(5, 4, &[&[1, 2, 0, 3], &[0, 1, 1, 1]]);
        let v = s.combine(&[3, 4]);
        assert_eq!(s.coordinates(&v), Some(vec![3, 4]));
        assert_eq!(s.coordinates(&[0, 0, 0, 1]), None);
    }

    #[test]
    fn intersection_of_planes() {
        let a = span(3, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = span(3, 3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersection(&b).unwrap(), span(3, 3, &[&[0, 1, 0]]));
    }
}
