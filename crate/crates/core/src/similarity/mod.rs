//! Colon submodules, idealizers and eigenrings of submodules, and similarity
//! of submodules of a module `M` with `E = End(M)`.
//!
//! Endomorphisms are handled in `E`-coordinates (see [`EndRing`]); `(N : β)`
//! is the preimage `{m : β(m) ∈ N}`.

mod transfer;

use std::collections::BTreeSet;

use crate::algebra::{QuotientAlgebra, RightIdeal, Subring};
use crate::fqlinalg::{enumerate_vectors, solve, FpMatrix, Subspace};
use crate::module::{EndRing, Isomorphism, RightModule, Submodule};
use crate::{Budget, Error, Result};

pub use transfer::{TransferReport, Verdict};

/// `𝕀(N)` and `A = Hom(M, N)` inside `End(M)`.
#[derive(Clone, Debug)]
pub struct SubmoduleIdealizer {
    pub idealizer: Subring,
    pub hom_ideal: RightIdeal,
}

/// `𝔼(N) = 𝕀(N)/A`, with lifts in `E`-coordinates.
#[derive(Clone, Debug)]
pub struct Eigenring {
    pub quotient: QuotientAlgebra,
}

impl Eigenring {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Every nonzero element is a unit.
    pub fn is_division(&self, budget: &Budget) -> Result<bool> {
        let alg = self.quotient.algebra();
        for x in alg.elements(budget.enumeration)? {
            if x.iter().any(|&c| c != 0) && !alg.is_unit(&x) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Outcome of the maximal-submodule dichotomy for one `N ∈ Max(M)`.
#[derive(Clone, Debug)]
pub enum Dichotomy {
    /// `𝕀(N) = E`, certified on the basis of `E`.
    FullyInvariant,
    /// `α ∉ 𝕀(N)` and `(N : α + β)` over coset representatives `β` of `𝔼(N)`.
    Family {
        alpha: Vec<u32>,
        members: Vec<(Vec<u32>, Submodule)>,
    },
}

/// The explicit ring map `𝕀(N) → End(M/N)`, `α ↦ (m + N ↦ α(m) + N)`.
#[derive(Clone, Debug)]
pub struct EigenringIso {
    /// Row `k` is the image of the `k`-th basis vector of `𝕀(N)`, in the
    /// coordinates of `End(M/N)`.
    pub matrix: FpMatrix,
    pub multiplicative: bool,
    pub kernel_is_hom_ideal: bool,
    pub surjective: bool,
    pub eigenring_dim: usize,
    pub end_quotient_dim: usize,
}

#[derive(Clone, Debug)]
pub struct SimilarityClass {
    pub representative: Submodule,
    pub members: Vec<Submodule>,
    /// Isomorphisms `M/rep → M/member`, aligned with `members`.
    pub witnesses: Vec<FpMatrix>,
    pub eigenring_dim: usize,
}

#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub classes: Vec<SimilarityClass>,
    pub undecided: bool,
}

#[derive(Clone, Debug)]
pub struct Correspondence {
    pub maximal: Vec<Submodule>,
    pub images: Vec<RightIdeal>,
    pub maximal_right_ideals_of_end: Vec<RightIdeal>,
    pub lands_in_maxr: bool,
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiDuo {
    pub max_count: usize,
    /// Vectors `x ∉ N` checked; zero when `|Max(M)| ≥ 3`.
    pub checked: usize,
    pub holds: bool,
}

/// A module together with its endomorphism algebra.
#[derive(Clone, Debug)]
pub struct EndContext {
    module: RightModule,
    end: EndRing,
}

impl EndContext {
    pub fn new(module: RightModule) -> Result<Self> {
        let end = module.end_ring()?;
        Ok(EndContext { module, end })
    }

    pub fn module(&self) -> &RightModule {
        &self.module
    }

    pub fn end(&self) -> &EndRing {
        &self.end
    }

    pub fn map(&self, coords: &[u32]) -> FpMatrix {
        self.end.to_map(coords)
    }

    fn require_end(&self, beta: &FpMatrix) -> Result<()> {
        if self.end.to_coords(beta).is_none() {
            return Err(Error::Contract("not an endomorphism of the module".into()));
        }
        Ok(())
    }

    /// `(N : β) = {m : β(m) ∈ N}`.
    pub fn colon(&self, n: &Submodule, beta: &FpMatrix) -> Result<Submodule> {
        self.require_end(beta)?;
        Ok(self.module.preimage(n, beta))
    }

    pub fn colon_coords(&self, n: &Submodule, beta: &[u32]) -> Submodule {
        self.module.preimage(n, &self.map(beta))
    }

    pub fn hom_ideal(&self, n: &Submodule) -> Result<RightIdeal> {
        self.end.hom_into(n)
    }

    pub fn idealizer_data(&self, n: &Submodule) -> Result<SubmoduleIdealizer> {
        if n.dim() == self.module.dim() {
            return Err(Error::NotProper);
        }
        let idealizer = self.end.idealizer(n)?;
        let hom_ideal = self.end.hom_into(n)?;
        if !idealizer.space().includes(hom_ideal.space()) {
            return Err(Error::Contract("Hom(M, N) is not inside 𝕀(N)".into()));
        }
        Ok(SubmoduleIdealizer {
            idealizer,
            hom_ideal,
        })
    }

    pub fn eigenring(&self, n: &Submodule) -> Result<Eigenring> {
        let data = self.idealizer_data(n)?;
        let quotient = self
            .end
            .algebra()
            .quotient_algebra(data.idealizer.space(), data.hom_ideal.space())?;
        Ok(Eigenring { quotient })
    }

    pub fn is_fully_invariant(&self, n: &Submodule) -> bool {
        self.end
            .basis_maps()
            .iter()
            .all(|f| n.space().includes(&n.space().image(f)))
    }

    /// `M/N ≅ M/N'`, with the isomorphism `M/N → M/N'` when it exists.
    pub fn are_similar(&self, n: &Submodule, n2: &Submodule, budget: &Budget) -> Result<Isomorphism> {
        let (q1, _) = self.module.quotient(n);
        let (q2, _) = self.module.quotient(n2);
        q1.is_isomorphic(&q2, budget)
    }

    fn spans_with(&self, n: &Submodule, beta: &FpMatrix) -> bool {
        n.space().sum(&beta.row_space()).expect("same module").is_full()
    }

    /// `β ∈ E` with `π₂∘β = φ∘π₁`, so that `N' + β(M) = M` and `N = (N' : β)`.
    ///
    /// `phi` is an isomorphism `M/N → M/N'` on the complement bases.
    pub fn similarity_witness(&self, n: &Submodule, n2: &Submodule, phi: &FpMatrix) -> Result<FpMatrix> {
        let p = self.module.p();
        let p1 = n.space().projection_matrix();
        let p2 = n2.space().projection_matrix();
        let target = p1.mul(phi);
        let width = target.rows() * target.cols();
        let maps = self.end.basis_maps();
        let rows: Vec<Vec<u32>> = maps.iter().map(|f| f.mul(&p2).into_data()).collect();
        let system = FpMatrix::from_rows(p, width, &rows)?.transpose();
        let rhs = FpMatrix::from_vec(p, width, 1, target.into_data())?;
        let c = solve(&system, &rhs)?
            .particular
            .ok_or_else(|| Error::Contract("lifting system inconsistent; module not projective".into()))?
            .into_data();
        let beta = self.map(&c);
        if !self.spans_with(n2, &beta) || self.colon(n2, &beta)? != *n {
            return Err(Error::Contract("similarity witness fails its postconditions".into()));
        }
        Ok(beta)
    }

    /// For `N + β(M) = M`, the isomorphism `M/(N : β) → M/N`,
    /// `m + (N : β) ↦ β(m) + N`.
    pub fn colon_similarity(&self, n: &Submodule, beta: &FpMatrix) -> Result<(Submodule, FpMatrix)> {
        self.require_end(beta)?;
        if !self.spans_with(n, beta) {
            return Err(Error::NotApplicable("N + β(M) ≠ M".into()));
        }
        let colon = self.module.preimage(n, beta);
        let (q1, _) = self.module.quotient(&colon);
        let (q2, _) = self.module.quotient(n);
        let iso = self
            .module
            .lift_matrix(&colon)
            .mul(beta)
            .mul(&n.space().projection_matrix());
        if !q1.is_hom_to(&q2, &iso) || !iso.is_invertible() {
            return Err(Error::Contract("induced map is not an isomorphism".into()));
        }
        Ok((colon, iso))
    }

    /// The dichotomy for a maximal submodule: fully invariant, or the family
    /// `(N : α + β)` with `α` the first basis element outside `𝕀(N)`.
    pub fn enumerate_similar_maximals(&self, n: &Submodule, budget: &Budget) -> Result<Dichotomy> {
        if self.is_fully_invariant(n) {
            return Ok(Dichotomy::FullyInvariant);
        }
        let data = self.idealizer_data(n)?;
        let e = self.end.dim();
        let alpha = (0..e)
            .map(|i| self.end.algebra().basis_vector(i))
            .find(|v| !data.idealizer.space().has(v))
            .expect("some basis element moves N");
        let eig = self.eigenring(n)?;
        let alg = self.end.algebra();
        let mut members = Vec::new();
        let mut seen = BTreeSet::new();
        seen.insert(n.clone());
        for coeffs in enumerate_vectors(eig.dim(), self.module.p(), budget.enumeration)? {
            let beta = eig.quotient.lift(&coeffs);
            let member = self.colon_coords(n, &alg.add(&alpha, &beta));
            if !seen.insert(member.clone()) {
                return Err(Error::Contract("family members are not pairwise distinct".into()));
            }
            members.push((beta, member));
        }
        Ok(Dichotomy::Family { alpha, members })
    }

    /// `N ↦ Hom(M, N)` on `Max(M)`, against `Maxr(E)` enumerated on the
    /// regular module of `E`.
    pub fn correspondence(&self, budget: &Budget) -> Result<Correspondence> {
        let maximal = self.module.maximal_submodules(budget)?;
        let maxr = self.end.algebra().maximal_right_ideals(budget)?;
        let images = maximal
            .iter()
            .map(|n| self.hom_ideal(n))
            .collect::<Result<Vec<_>>>()?;
        let lands_in_maxr = images.iter().all(|a| maxr.contains(a));
        let distinct: BTreeSet<&RightIdeal> = images.iter().collect();
        Ok(Correspondence {
            injective: distinct.len() == images.len(),
            maximal,
            images,
            maximal_right_ideals_of_end: maxr,
            lands_in_maxr,
        })
    }

    /// `Hom(M, N)`, checked to be a maximal right ideal of `E`.
    pub fn max_to_max_right_ideal(&self, n: &Submodule, maxr: &[RightIdeal]) -> Result<RightIdeal> {
        let a = self.hom_ideal(n)?;
        if !maxr.contains(&a) {
            return Err(Error::Contract("Hom(M, N) is not a maximal right ideal of End(M)".into()));
        }
        Ok(a)
    }

    /// `𝕀(N)` against the ring-level idealizer of `A = Hom(M, N)` in `E`.
    pub fn idealizer_coincidence(&self, n: &Submodule) -> Result<bool> {
        let data = self.idealizer_data(n)?;
        let ring = self.end.algebra().idealizer_ring(&data.hom_ideal)?;
        Ok(ring.space() == data.idealizer.space())
    }

    pub fn eigenring_quotient_iso(&self, n: &Submodule) -> Result<EigenringIso> {
        let data = self.idealizer_data(n)?;
        let (q, proj) = self.module.quotient(n);
        let lift = self.module.lift_matrix(n);
        let end_q = q.end_ring()?;
        let alg = self.end.algebra();
        let p = self.module.p();
        let basis: Vec<Vec<u32>> = data.idealizer.space().basis_vectors().map(<[u32]>::to_vec).collect();
        let induced = |alpha: &[u32]| -> Result<Vec<u32>> {
            let f = lift.mul(&self.map(alpha)).mul(&proj);
            end_q
                .to_coords(&f)
                .ok_or_else(|| Error::Contract("induced map is not a module map".into()))
        };
        let rows = basis.iter().map(|a| induced(a)).collect::<Result<Vec<_>>>()?;
        let matrix = FpMatrix::from_rows(p, end_q.dim(), &rows)?;
        let mut multiplicative = true;
        for a in &basis {
            for b in &basis {
                let lhs = induced(&alg.mul(a, b))?;
                let rhs = end_q.algebra().mul(&induced(a)?, &induced(b)?);
                multiplicative &= lhs == rhs;
            }
        }
        let kernel_coords = matrix.left_kernel();
        let kernel: Vec<Vec<u32>> = kernel_coords
            .basis_vectors()
            .map(|c| data.idealizer.space().combine(c))
            .collect();
        let kernel = Subspace::span(p, alg.dim(), &kernel)?;
        let eigenring_dim = data.idealizer.dim() - data.hom_ideal.dim();
        Ok(EigenringIso {
            multiplicative,
            kernel_is_hom_ideal: &kernel == data.hom_ideal.space(),
            surjective: matrix.rank() == end_q.dim(),
            eigenring_dim,
            end_quotient_dim: end_q.dim(),
            matrix,
        })
    }

    /// `[dim End(M/N), dim 𝔼(N), dim 𝕀(A)/A, dim End_E(E/A)]`.
    pub fn eigenring_chain(&self, n: &Submodule) -> Result<[usize; 4]> {
        let (q, _) = self.module.quotient(n);
        let a = self.hom_ideal(n)?;
        let alg = self.end.algebra();
        let ring_level = alg.eigenring_of_ideal(&a)?.dim();
        let regular = RightModule::regular(alg);
        let sub = regular.submodule(a.space().clone())?;
        let (ea, _) = regular.quotient(&sub);
        Ok([
            q.end_ring()?.dim(),
            self.eigenring(n)?.dim(),
            ring_level,
            ea.end_ring()?.dim(),
        ])
    }

    /// `(N :_E x) = {g : g(x) ∈ N}`.
    pub fn element_colon(&self, n: &Submodule, x: &[u32]) -> Subspace {
        let proj = n.space().projection_matrix();
        let rows: Vec<Vec<u32>> = self
            .end
            .basis_maps()
            .iter()
            .map(|f| proj.vec_mul(&f.vec_mul(x)))
            .collect();
        if proj.cols() == 0 {
            return Subspace::full(self.module.p(), self.end.dim());
        }
        FpMatrix::from_rows(self.module.p(), proj.cols(), &rows)
            .expect("rows")
            .left_kernel()
    }

    /// With at most two maximal submodules, `Hom(M, N) = (N :_E x)` for every
    /// `x ∉ N`.
    pub fn quasi_duo_dichotomy(&self, n: &Submodule, budget: &Budget) -> Result<QuasiDuo> {
        let max_count = self.module.maximal_submodules(budget)?.len();
        if max_count >= 3 {
            return Ok(QuasiDuo {
                max_count,
                checked: 0,
                holds: true,
            });
        }
        let a = self.hom_ideal(n)?;
        let mut checked = 0;
        let mut holds = true;
        for x in enumerate_vectors(self.module.dim(), self.module.p(), budget.enumeration)? {
            if n.space().has(&x) {
                continue;
            }
            checked += 1;
            holds &= self.element_colon(n, &x) == *a.space();
        }
        Ok(QuasiDuo {
            max_count,
            checked,
            holds,
        })
    }

    /// Partition of `Max(M)` into similarity classes, members in canonical
    /// order.
    pub fn similarity_classes(&self, budget: &Budget) -> Result<ClassPartition> {
        let maximal = self.module.maximal_submodules(budget)?;
        let mut classes: Vec<SimilarityClass> = Vec::new();
        let mut undecided = false;
        'next: for n in maximal {
            for class in classes.iter_mut() {
                match self.are_similar(&class.representative, &n, budget)? {
                    Isomorphism::Yes(f) => {
                        class.members.push(n);
                        class.witnesses.push(f);
                        continue 'next;
                    }
                    Isomorphism::No => {}
                    Isomorphism::Unknown => undecided = true,
                }
            }
            let (q, _) = self.module.quotient(&n);
            let id = FpMatrix::identity(self.module.p(), q.dim());
            classes.push(SimilarityClass {
                eigenring_dim: self.eigenring(&n)?.dim(),
                representative: n.clone(),
                members: vec![n],
                witnesses: vec![id],
            });
        }
        Ok(ClassPartition { classes, undecided })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{dual_numbers, Algebra};

    fn ctx(a: Algebra) -> EndContext {
        EndContext::new(RightModule::regular(&Arc::new(a))).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn colon_examples() {
        let c = ctx(Algebra::matrix_algebra(2, 2).unwrap());
        let m = c.module();
        let n = &m.maximal_submodules(&b()).unwrap()[0];
        let id = FpMatrix::identity(2, 4);
        assert_eq!(c.colon(n, &id).unwrap(), *n);
        let a = c.hom_ideal(n).unwrap();
        for v in a.space().basis_vectors() {
            assert_eq!(c.colon_coords(n, v), m.full());
        }
        // β ∈ 𝕀(N) ∖ A fixes N, by brute force over all of E
        let data = c.idealizer_data(n).unwrap();
        for beta in enumerate_vectors(4, 2, 16).unwrap() {
            let inside = data.idealizer.space().has(&beta) && !a.space().has(&beta);
            assert_eq!(c.colon_coords(n, &beta) == *n, inside);
        }
    }

    #[test]
    fn eigenring_of_maximal_in_matrix_ring() {
        let c = ctx(Algebra::matrix_algebra(2, 2).unwrap());
        for n in c.module().maximal_submodules(&b()).unwrap() {
            let e = c.eigenring(&n).unwrap();
            assert_eq!(e.dim(), 1);
            assert!(e.is_division(&b()).unwrap());
        }
    }

    #[test]
    fn fully_invariant_has_full_idealizer() {
        let c = ctx(dual_numbers(2).unwrap());
        let n = &c.module().maximal_submodules(&b()).unwrap()[0];
        assert!(c.is_fully_invariant(n));
        assert_eq!(c.idealizer_data(n).unwrap().idealizer.dim(), 2);
        assert!(matches!(c.enumerate_similar_maximals(n, &b()).unwrap(), Dichotomy::FullyInvariant));
        assert!(matches!(c.idealizer_data(&c.module().full()), Err(Error::NotProper)));
    }

    #[test]
    fn dichotomy_family_in_matrix_ring() {
        let c = ctx(Algebra::matrix_algebra(2, 2).unwrap());
        let max = c.module().maximal_submodules(&b()).unwrap();
        for n in &max {
            match c.enumerate_similar_maximals(n, &b()).unwrap() {
                Dichotomy::Family { members, .. } => {
                    assert_eq!(members.len(), 2);
                    for (_, m) in &members {
                        assert!(max.contains(m));
                        assert!(c.are_similar(n, m, &b()).unwrap().is_yes());
                    }
                }
                Dichotomy::FullyInvariant => panic!("no maximal right ideal of M_2 is two-sided"),
            }
        }
    }

    #[test]
    fn witnesses_and_colon_similarity() {
        let c = ctx(Algebra::matrix_algebra(2, 2).unwrap());
        let max = c.module().maximal_submodules(&b()).unwrap();
        let phi = c.are_similar(&max[0], &max[1], &b()).unwrap();
        let beta = c.similarity_witness(&max[0], &max[1], phi.witness().unwrap()).unwrap();
        assert_eq!(c.colon(&max[1], &beta).unwrap(), max[0]);
        let (colon, _) = c.colon_similarity(&max[1], &beta).unwrap();
        assert_eq!(colon, max[0]);
        let id = FpMatrix::identity(2, 2);
        let beta = c.similarity_witness(&max[0], &max[0], &id).unwrap();
        assert_eq!(c.colon(&max[0], &beta).unwrap(), max[0]);
    }

    #[test]
    fn correspondence_on_regular_module_is_identity() {
        let c = ctx(Algebra::triangular_algebra(2, 2).unwrap());
        let corr = c.correspondence(&b()).unwrap();
        assert!(corr.lands_in_maxr && corr.injective);
        assert_eq!(corr.maximal.len(), corr.maximal_right_ideals_of_end.len());
        for n in &corr.maximal {
            assert!(c.idealizer_coincidence(n).unwrap());
            let iso = c.eigenring_quotient_iso(n).unwrap();
            assert!(iso.multiplicative && iso.kernel_is_hom_ideal && iso.surjective);
            let chain = c.eigenring_chain(n).unwrap();
            assert!(chain.iter().all(|&x| x == chain[0]));
            let q = c.quasi_duo_dichotomy(n, &b()).unwrap();
            assert!(q.holds);
            assert_eq!(q.max_count, 2);
        }
    }

    #[test]
    fn similarity_classes_of_triangular() {
        let c = ctx(Algebra::triangular_algebra(2, 3).unwrap());
        let part = c.similarity_classes(&b()).unwrap();
        assert!(!part.undecided);
        assert_eq!(part.classes.len(), 2);
        let c = ctx(Algebra::matrix_algebra(2, 3).unwrap());
        let part = c.similarity_classes(&b()).unwrap();
        assert_eq!(part.classes.len(), 1);
        assert_eq!(part.classes[0].members.len(), 4);
    }
}
