use std::collections::BTreeSet;

use super::Algebra;
use crate::fqlinalg::{enumerate_vectors, FpMatrix, Subspace};
use crate::{Error, Result};

/// Subspace closed under right multiplication by the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RightIdeal {
    space: Subspace,
}

/// Subspace closed under left multiplication by the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeftIdeal {
    space: Subspace,
}

/// Subspace containing the unit and closed under multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subring {
    space: Subspace,
}

impl RightIdeal {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

impl LeftIdeal {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

impl Subring {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// A quotient `S / I` of a subring by a two-sided ideal of it, as an algebra.
///
/// The quotient basis is the canonical basis of `S` restricted to the rows
/// whose `S`-coordinates are not pivots of `I`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    algebra: Algebra,
    sub: Subspace,
    ideal_in_sub: Subspace,
    lifts: Vec<Vec<u32>>,
}

impl QuotientAlgebra {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> Algebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Ambient vectors lifting the quotient basis.
    pub fn lifts(&self) -> &[Vec<u32>] {
        &self.lifts
    }

    /// Ambient vector lifting the quotient element with these coordinates.
    pub fn lift(&self, coords: &[u32]) -> Vec<u32> {
        let p = self.algebra.p();
        let n = self.sub.ambient_dim();
        let mut acc = vec![0u32; n];
        for (c, l) in coords.iter().zip(&self.lifts) {
            for (a, &x) in acc.iter_mut().zip(l) {
                *a = crate::fqlinalg::add(p, *a, crate::fqlinalg::mul(p, *c, x));
            }
        }
        acc
    }

    /// Quotient coordinates of an ambient vector of the subring; `None` if it
    /// lies outside the subring.
    pub fn coset(&self, v: &[u32]) -> Option<Vec<u32>> {
        let s = self.sub.coordinates(v)?;
        Some(self.ideal_in_sub.quotient_coords(&s))
    }
}

/// Certificate for the lower bound `|[M]| ≥ |𝕀(M)/M| + 1`: the ideals
/// `(M : x + c)` for every coset representative `c` of `𝕀(M)/M`.
#[derive(Clone, Debug)]
pub struct InjectiveFamily {
    /// Lexicographically first element outside the idealizer.
    pub x: Vec<u32>,
    /// `(c, (M : x + c))` over all coset representatives `c`.
    pub members: Vec<(Vec<u32>, RightIdeal)>,
}

/// Similarity class of a maximal right ideal.
#[derive(Clone, Debug)]
pub struct MaximalClass {
    pub representative: RightIdeal,
    /// All members in canonical order.
    pub members: Vec<RightIdeal>,
    /// Dimension of `𝕀(M)/M` over F_p.
    pub eigenring_dim: usize,
    /// Absent exactly when the representative is two-sided.
    pub family: Option<InjectiveFamily>,
}

impl MaximalClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl Algebra {
    fn same_ambient(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() || s.prime() != self.p() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of F_{}^{} in an algebra of dimension {} over F_{}",
                s.prime(),
                s.ambient_dim(),
                self.dim(),
                self.p()
            )));
        }
        Ok(())
    }

    fn same_len(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in an algebra of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn is_right_closed(&self, s: &Subspace) -> bool {
        s.basis_vectors().all(|y| {
            (0..self.dim()).all(|i| s.has(&self.mul(y, &self.basis_vector(i))))
        })
    }

    pub fn is_left_closed(&self, s: &Subspace) -> bool {
        s.basis_vectors().all(|y| {
            (0..self.dim()).all(|i| s.has(&self.mul(&self.basis_vector(i), y)))
        })
    }

    pub fn right_ideal(&self, space: Subspace) -> Result<RightIdeal> {
        self.same_ambient(&space)?;
        if !self.is_right_closed(&space) {
            return Err(Error::NotIdeal("right"));
        }
        Ok(RightIdeal { space })
    }

    pub fn left_ideal(&self, space: Subspace) -> Result<LeftIdeal> {
        self.same_ambient(&space)?;
        if !self.is_left_closed(&space) {
            return Err(Error::NotIdeal("left"));
        }
        Ok(LeftIdeal { space })
    }

    pub fn subring(&self, space: Subspace) -> Result<Subring> {
        self.same_ambient(&space)?;
        if !space.has(self.unit()) {
            return Err(Error::Contract("subring must contain the unit".into()));
        }
        for x in space.basis_vectors() {
            for y in space.basis_vectors() {
                if !space.has(&self.mul(x, y)) {
                    return Err(Error::Contract("subring is not multiplicatively closed".into()));
                }
            }
        }
        Ok(Subring { space })
    }

    /// `Σ gT` over the generators.
    pub fn right_ideal_generated_by(&self, gens: &[Vec<u32>]) -> Result<RightIdeal> {
        let mut rows = Vec::new();
        for g in gens {
            self.same_len(g)?;
            rows.extend(self.left_mul_matrix(g).to_rows());
        }
        let space = Subspace::span(self.p(), self.dim(), &rows)?;
        Ok(RightIdeal { space })
    }

    /// `Σ Tg` over the generators.
    pub fn left_ideal_generated_by(&self, gens: &[Vec<u32>]) -> Result<LeftIdeal> {
        let mut rows = Vec::new();
        for g in gens {
            self.same_len(g)?;
            rows.extend(self.right_mul_matrix(g).to_rows());
        }
        let space = Subspace::span(self.p(), self.dim(), &rows)?;
        Ok(LeftIdeal { space })
    }

    /// Left closure checked on the basis.
    pub fn is_two_sided(&self, ideal: &RightIdeal) -> bool {
        self.is_left_closed(&ideal.space)
    }

    /// `(I : a) = {x : a·x ∈ I}`, the kernel of `T → T/I, x ↦ ax + I`.
    ///
    /// This is the right-ideal form of the colon: `(I : a) = T` iff `a ∈ I`,
    /// and `I ⊆ (I : a)` iff `a ∈ 𝕀(I)`.
    pub fn colon_right(&self, ideal: &RightIdeal, a: &[u32]) -> Result<RightIdeal> {
        self.same_ambient(&ideal.space)?;
        self.same_len(a)?;
        let map = self.left_mul_matrix(a).mul(&ideal.space.projection_matrix());
        let space = map.left_kernel();
        if !self.is_right_closed(&space) {
            return Err(Error::Contract("colon is not a right ideal".into()));
        }
        Ok(RightIdeal { space })
    }

    /// `{x : x·a ∈ L}` for a left ideal `L`.
    pub fn colon_left(&self, ideal: &LeftIdeal, a: &[u32]) -> Result<LeftIdeal> {
        self.same_ambient(&ideal.space)?;
        self.same_len(a)?;
        let map = self.right_mul_matrix(a).mul(&ideal.space.projection_matrix());
        Ok(LeftIdeal {
            space: map.left_kernel(),
        })
    }

    fn idealizer_space(&self, ideal: &Subspace) -> Subspace {
        // t ∈ 𝕀(I) iff t·y ∈ I for every basis vector y of I.
        let proj = ideal.projection_matrix();
        let mut stacked: Option<FpMatrix> = None;
        for y in ideal.basis_vectors() {
            let block = self.right_mul_matrix(y).mul(&proj);
            stacked = Some(match stacked {
                None => block,
                Some(s) => s.hstack(&block),
            });
        }
        match stacked {
            None => self.full_space(),
            Some(s) => s.left_kernel(),
        }
    }

    /// `𝕀(I) = {t : tI ⊆ I}`.
    pub fn idealizer_ring(&self, ideal: &RightIdeal) -> Result<Subring> {
        self.same_ambient(&ideal.space)?;
        if ideal.space.is_full() {
            return Err(Error::NotProper);
        }
        self.subring(self.idealizer_space(&ideal.space))
    }

    /// `𝕀(I)/I` as an algebra.
    pub fn eigenring_of_ideal(&self, ideal: &RightIdeal) -> Result<QuotientAlgebra> {
        let s = self.idealizer_ring(ideal)?;
        self.quotient_algebra(&s.space, &ideal.space)
    }

    /// `S / I` for a subring `S` and a two-sided ideal `I` of `S`.
    pub fn quotient_algebra(&self, sub: &Subspace, ideal: &Subspace) -> Result<QuotientAlgebra> {
        self.same_ambient(sub)?;
        self.same_ambient(ideal)?;
        if !sub.includes(ideal) {
            return Err(Error::Contract("ideal is not inside the subring".into()));
        }
        if ideal.dim() == sub.dim() {
            return Err(Error::NotProper);
        }
        let p = self.p();
        let coords: Vec<Vec<u32>> = ideal
            .basis_vectors()
            .map(|v| sub.coordinates(v).expect("inside"))
            .collect();
        let ideal_in_sub = Subspace::span(p, sub.dim(), &coords)?;
        let comp = ideal_in_sub.complement_indices();
        let lifts: Vec<Vec<u32>> = comp.iter().map(|&c| sub.basis().row(c).to_vec()).collect();
        let q = lifts.len();
        let reduce = |v: &[u32]| -> Result<Vec<u32>> {
            let s = sub
                .coordinates(v)
                .ok_or_else(|| Error::Contract("product leaves the subring".into()))?;
            Ok(ideal_in_sub.quotient_coords(&s))
        };
        let mut table = vec![vec![vec![0u32; q]; q]; q];
        for (a, la) in lifts.iter().enumerate() {
            for (b, lb) in lifts.iter().enumerate() {
                table[a][b] = reduce(&self.mul(la, lb))?;
            }
        }
        let unit = reduce(self.unit())?;
        let algebra = Algebra::from_structure_constants(p, q, &table, unit)?;
        Ok(QuotientAlgebra {
            algebra,
            sub: sub.clone(),
            ideal_in_sub,
            lifts,
        })
    }

    /// A `c` with `I + cT = T` and `J = (I : c)`; such a `c` exists iff
    /// `T/I ≅ T/J`. Returns the unit when `I = J`, otherwise the first witness
    /// in lexicographic order.
    pub fn similar_ideals(
        &self,
        i: &RightIdeal,
        j: &RightIdeal,
        budget: u64,
    ) -> Result<Option<Vec<u32>>> {
        self.same_ambient(&i.space)?;
        self.same_ambient(&j.space)?;
        if i == j {
            return Ok(Some(self.unit().to_vec()));
        }
        if i.space.dim() != j.space.dim() {
            return Ok(None);
        }
        for c in self.elements(budget)? {
            let ct = Subspace::from_matrix(&self.left_mul_matrix(&c));
            if !i.space.sum(&ct)?.is_full() {
                continue;
            }
            if self.colon_right(i, &c)? == *j {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// Similarity class `[M] = {M} ∪ {(M : c) : c ∉ 𝕀(M)}` by brute force, with
    /// the injective family `c + M ↦ (M : x + c)` when `M` is not two-sided.
    ///
    /// `m` must be a maximal right ideal.
    pub fn similarity_class_of_maximal(&self, m: &RightIdeal, budget: u64) -> Result<MaximalClass> {
        let idealizer = self.idealizer_ring(m)?;
        let eig = self.quotient_algebra(&idealizer.space, &m.space)?;
        let mut members = BTreeSet::new();
        members.insert(m.clone());
        if self.is_two_sided(m) {
            return Ok(MaximalClass {
                representative: m.clone(),
                members: members.into_iter().collect(),
                eigenring_dim: eig.dim(),
                family: None,
            });
        }
        let mut x = None;
        for c in self.elements(budget)? {
            if idealizer.space.has(&c) {
                continue;
            }
            if x.is_none() {
                x = Some(c.clone());
            }
            members.insert(self.colon_right(m, &c)?);
        }
        let x = x.expect("two-sided check guarantees an element outside 𝕀(M)");
        let mut family = Vec::new();
        for coeffs in enumerate_vectors(eig.dim(), self.p(), budget)? {
            let c = eig.lift(&coeffs);
            let ideal = self.colon_right(m, &self.add(&x, &c))?;
            family.push((c, ideal));
        }
        Ok(MaximalClass {
            representative: m.clone(),
            members: members.into_iter().collect(),
            eigenring_dim: eig.dim(),
            family: Some(InjectiveFamily { x, members: family }),
        })
    }

    fn transpose_space(&self, s: &Subspace) -> Result<Subspace> {
        let perm = self.transpose_perm().ok_or(Error::NoTranspose)?;
        self.same_ambient(s)?;
        Ok(s.permute(perm))
    }

    pub fn transpose_right(&self, ideal: &RightIdeal) -> Result<LeftIdeal> {
        self.left_ideal(self.transpose_space(&ideal.space)?)
    }

    pub fn transpose_left(&self, ideal: &LeftIdeal) -> Result<RightIdeal> {
        self.right_ideal(self.transpose_space(&ideal.space)?)
    }
}
