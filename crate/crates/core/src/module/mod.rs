//! Finite-dimensional right modules over an [`Algebra`].
//!
//! A module of dimension `m` is given by one `m × m` matrix per basis element
//! of the algebra; vectors are rows and act on the right, `v·b_i = v·ρ(b_i)`.
//! A module map is an `m_src × m_tgt` matrix `F` with `ρ_src(b)·F = F·ρ_tgt(b)`.

mod decompose;
mod hom;
mod iso;
mod lattice;
mod projective;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::fqlinalg::{FpMatrix, Subspace};
use crate::{Error, Result};

pub use decompose::{is_local_ring, Decomposition, LocalDecomposition, ProbeOrder, Summand};
pub use hom::{EndRing, HomSpace};
pub use iso::Isomorphism;
pub(crate) use lattice::match_multisets;
pub use lattice::{simple_modules, SubmoduleLattice};
pub use projective::{FreeSummand, Presentation, ProjectivityReport};

#[derive(Clone, Debug)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<FpMatrix>,
    presentation: Option<Presentation>,
}

/// An action-invariant subspace of a module's carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    space: Subspace,
}

impl Submodule {
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

/// Module description accepted on the command line and by the C ABI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleSpec {
    Regular,
    Idempotent { e: Vec<u32> },
    DirectSum { summands: Vec<ModuleSpec> },
    Action { dim: usize, matrices: Vec<Vec<Vec<u32>>> },
}

impl ModuleSpec {
    pub fn build(&self, algebra: &Arc<Algebra>) -> Result<RightModule> {
        match self {
            ModuleSpec::Regular => Ok(RightModule::regular(algebra)),
            ModuleSpec::Idempotent { e } => RightModule::idempotent(algebra, e),
            ModuleSpec::DirectSum { summands } => {
                let parts = summands
                    .iter()
                    .map(|s| s.build(algebra))
                    .collect::<Result<Vec<_>>>()?;
                RightModule::direct_sum(&parts)
            }
            ModuleSpec::Action { dim, matrices } => {
                let p = algebra.p();
                let mats = matrices
                    .iter()
                    .map(|m| {
                        if m.iter().flatten().any(|&x| x >= p) {
                            return Err(Error::InvalidAction(format!(
                                "entries must be reduced mod {p}"
                            )));
                        }
                        FpMatrix::from_rows(p, *dim, m).and_then(|f| {
                            if f.rows() != *dim {
                                Err(Error::InvalidAction("action matrix has wrong size".into()))
                            } else {
                                Ok(f)
                            }
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                RightModule::from_action(algebra, *dim, mats)
            }
        }
    }
}

impl RightModule {
    /// Checks that the matrices define a unital representation.
    pub fn from_action(algebra: &Arc<Algebra>, dim: usize, action: Vec<FpMatrix>) -> Result<Self> {
        let d = algebra.dim();
        if action.len() != d {
            return Err(Error::InvalidAction(format!(
                "{} action matrices for an algebra of dimension {d}",
                action.len()
            )));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim || m.prime() != algebra.p()) {
            return Err(Error::InvalidAction(format!("action matrices must be {dim}x{dim}")));
        }
        let module = RightModule {
            algebra: Arc::clone(algebra),
            dim,
            action,
            presentation: None,
        };
        if module.act(algebra.unit()) != FpMatrix::identity(algebra.p(), dim) {
            return Err(Error::InvalidAction("the unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = module.action[i].mul(&module.action[j]);
                let rhs = module.act(algebra.product_row(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidAction(format!(
                        "ρ(b_{i})ρ(b_{j}) ≠ ρ(b_{i}b_{j})"
                    )));
                }
            }
        }
        Ok(module)
    }

    fn unchecked(algebra: &Arc<Algebra>, dim: usize, action: Vec<FpMatrix>) -> Self {
        let m = RightModule {
            algebra: Arc::clone(algebra),
            dim,
            action,
            presentation: None,
        };
        debug_assert!(RightModule::from_action(algebra, dim, m.action.clone()).is_ok());
        m
    }

    /// The algebra acting on itself by right multiplication.
    pub fn regular(algebra: &Arc<Algebra>) -> Self {
        let d = algebra.dim();
        let action = (0..d)
            .map(|i| algebra.right_mul_matrix(&algebra.basis_vector(i)))
            .collect();
        let mut m = Self::unchecked(algebra, d, action);
        let id = FpMatrix::identity(algebra.p(), d);
        m.presentation = Some(Presentation {
            generators: vec![algebra.unit().to_vec()],
            surjection: id.clone(),
            splitting: Some(id),
        });
        m
    }

    /// `eR` for an idempotent `e`, on the canonical basis of the right ideal.
    pub fn idempotent(algebra: &Arc<Algebra>, e: &[u32]) -> Result<Self> {
        if e.len() != algebra.dim() {
            return Err(Error::DimensionMismatch("idempotent has the wrong length".into()));
        }
        if !algebra.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        let regular = Self::regular(algebra);
        let ideal = algebra.right_ideal_generated_by(&[e.to_vec()])?;
        let sub = regular.submodule(ideal.into_space())?;
        let (mut module, inclusion) = regular.restrict(&sub);
        // R → eR, x ↦ ex, split by the inclusion.
        let left = algebra.left_mul_matrix(e);
        let surjection = FpMatrix::from_rows(
            algebra.p(),
            module.dim,
            &left
                .row_iter()
                .map(|r| sub.space.coordinates(r).expect("ex ∈ eR"))
                .collect::<Vec<_>>(),
        )?;
        module.presentation = Some(Presentation {
            generators: vec![sub.space.coordinates(e).expect("e ∈ eR")],
            surjection,
            splitting: Some(inclusion),
        });
        Ok(module)
    }

    /// Block-diagonal action; carriers concatenated in order.
    pub fn direct_sum(parts: &[RightModule]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidAction("empty direct sum".into()));
        };
        let algebra = Arc::clone(&first.algebra);
        for m in parts {
            m.check_algebra(&algebra)?;
        }
        let p = algebra.p();
        let dim = parts.iter().map(|m| m.dim).sum();
        let action = (0..algebra.dim())
            .map(|i| {
                let blocks: Vec<FpMatrix> = parts.iter().map(|m| m.action[i].clone()).collect();
                FpMatrix::block_diag(p, &blocks)
            })
            .collect();
        let mut out = Self::unchecked(&algebra, dim, action);
        if let Some(pres) = parts
            .iter()
            .map(|m| m.presentation.clone())
            .collect::<Option<Vec<_>>>()
        {
            out.presentation = Presentation::direct_sum(p, &algebra, &pres, parts)?;
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn p(&self) -> u32 {
        self.algebra.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[FpMatrix] {
        &self.action
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn to_spec(&self) -> ModuleSpec {
        ModuleSpec::Action {
            dim: self.dim,
            matrices: self.action.iter().map(FpMatrix::to_rows).collect(),
        }
    }

    pub(crate) fn check_algebra(&self, other: &Arc<Algebra>) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, other) || *self.algebra == **other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch("modules over different algebras".into()))
        }
    }

    /// `ρ(a)` for an algebra element `a`.
    pub fn act(&self, a: &[u32]) -> FpMatrix {
        let p = self.p();
        let mut acc = FpMatrix::zeros(p, self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.action[i].scale(c));
            }
        }
        acc
    }

    pub fn full(&self) -> Submodule {
        Submodule {
            space: Subspace::full(self.p(), self.dim),
        }
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule {
            space: Subspace::zero(self.p(), self.dim),
        }
    }

    pub fn is_invariant(&self, s: &Subspace) -> bool {
        self.action.iter().all(|r| s.includes(&s.image(r)))
    }

    pub fn submodule(&self, space: Subspace) -> Result<Submodule> {
        if space.ambient_dim() != self.dim || space.prime() != self.p() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of ambient dimension {} in a module of dimension {}",
                space.ambient_dim(),
                self.dim
            )));
        }
        if !self.is_invariant(&space) {
            return Err(Error::NotSubmodule);
        }
        Ok(Submodule { space })
    }

    /// Smallest submodule containing the vectors.
    pub fn generate(&self, vectors: &[Vec<u32>]) -> Result<Submodule> {
        let mut s = Subspace::span(self.p(), self.dim, vectors)?;
        loop {
            let mut stacked = s.basis().clone();
            for r in &self.action {
                stacked = stacked.vstack(&s.basis().mul(r));
            }
            let next = Subspace::from_matrix(&stacked);
            if next == s {
                return Ok(Submodule { space: s });
            }
            s = next;
        }
    }

    pub fn cyclic(&self, v: &[u32]) -> Submodule {
        self.generate(&[v.to_vec()]).expect("vector of module length")
    }

    pub fn sum(&self, a: &Submodule, b: &Submodule) -> Submodule {
        Submodule {
            space: a.space.sum(&b.space).expect("same module"),
        }
    }

    pub fn intersection(&self, a: &Submodule, b: &Submodule) -> Submodule {
        Submodule {
            space: a.space.intersection(&b.space).expect("same module"),
        }
    }

    /// `M/N` on the complement basis of `N`, with the projection matrix
    /// (`m × (m − n)`).
    pub fn quotient(&self, n: &Submodule) -> (RightModule, FpMatrix) {
        let proj = n.space.projection_matrix();
        let lift = self.lift_matrix(n);
        let action = self.action.iter().map(|r| lift.mul(r).mul(&proj)).collect();
        (Self::unchecked(&self.algebra, proj.cols(), action), proj)
    }

    /// Rows are the complement basis vectors of `N` inside `M`.
    pub fn lift_matrix(&self, n: &Submodule) -> FpMatrix {
        let comp = n.space.complement_indices();
        let mut l = FpMatrix::zeros(self.p(), comp.len(), self.dim);
        for (r, &c) in comp.iter().enumerate() {
            l.set(r, c, 1);
        }
        l
    }

    /// `N` as a module on its canonical basis, with the inclusion matrix
    /// (`n × m`).
    pub fn restrict(&self, n: &Submodule) -> (RightModule, FpMatrix) {
        let basis = n.space.basis().clone();
        let action = self
            .action
            .iter()
            .map(|r| {
                let img = basis.mul(r);
                let rows: Vec<Vec<u32>> = img
                    .row_iter()
                    .map(|v| n.space.coordinates(v).expect("invariant subspace"))
                    .collect();
                FpMatrix::from_rows(self.p(), n.dim(), &rows).expect("square")
            })
            .collect();
        (Self::unchecked(&self.algebra, n.dim(), action), basis)
    }

    /// Whether `f` (`self.dim × target.dim`) intertwines the actions.
    pub fn is_hom_to(&self, target: &RightModule, f: &FpMatrix) -> bool {
        f.rows() == self.dim
            && f.cols() == target.dim
            && self
                .action
                .iter()
                .zip(&target.action)
                .all(|(s, t)| s.mul(f) == f.mul(t))
    }

    /// `(N : β) = {v : v·β ∈ N}` for an endomorphism matrix `β`.
    pub fn preimage(&self, n: &Submodule, beta: &FpMatrix) -> Submodule {
        let space = beta.mul(&n.space.projection_matrix()).left_kernel();
        debug_assert!(self.is_invariant(&space));
        Submodule { space }
    }

    /// `β(M)`, the row space of `β`.
    pub fn image_of(&self, beta: &FpMatrix) -> Submodule {
        Submodule {
            space: beta.row_space(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dual_numbers;

    fn t2() -> Arc<Algebra> {
        Arc::new(Algebra::triangular_algebra(2, 2).unwrap())
    }

    #[test]
    fn regular_module_of_field_is_one_dimensional() {
        let f = Arc::new(Algebra::prime_field(3).unwrap());
        let r = RightModule::regular(&f);
        assert_eq!(r.dim(), 1);
    }

    #[test]
    fn idempotent_module_dimension() {
        let a = t2();
        let e = RightModule::idempotent(&a, &[1, 0, 0]).unwrap();
        assert_eq!(e.dim(), 2);
        let e2 = RightModule::idempotent(&a, &[0, 0, 1]).unwrap();
        assert_eq!(e2.dim(), 1);
        assert!(matches!(
            RightModule::idempotent(&a, &[0, 1, 0]),
            Err(Error::NotIdempotent)
        ));
    }

    #[test]
    fn invalid_action_rejected() {
        let a = Arc::new(dual_numbers(2).unwrap());
        // x acting as the identity violates x² = 0
        let bad = vec![FpMatrix::identity(2, 1), FpMatrix::identity(2, 1)];
        assert!(RightModule::from_action(&a, 1, bad).is_err());
        let good = vec![FpMatrix::identity(2, 1), FpMatrix::zeros(2, 1, 1)];
        assert!(RightModule::from_action(&a, 1, good).is_ok());
    }

    #[test]
    fn quotient_by_zero_is_isomorphic() {
        let a = t2();
        let m = RightModule::regular(&a);
        let (q, proj) = m.quotient(&m.zero_submodule());
        assert_eq!(q.dim(), 3);
        assert_eq!(proj, FpMatrix::identity(2, 3));
        assert_eq!(q.action(), m.action());
    }

    #[test]
    fn direct_sum_blocks() {
        let a = t2();
        let e1 = RightModule::idempotent(&a, &[1, 0, 0]).unwrap();
        let e2 = RightModule::idempotent(&a, &[0, 0, 1]).unwrap();
        let s = RightModule::direct_sum(&[e1, e2]).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(RightModule::from_action(&a, 3, s.action().to_vec()).is_ok());
    }

    #[test]
    fn spec_round_trip() {
        let a = t2();
        let spec: ModuleSpec = serde_json::from_str(
            r#"{"kind":"direct_sum","summands":[{"kind":"idempotent","e":[1,0,0]},{"kind":"regular"}]}"#,
        )
        .unwrap();
        let m = spec.build(&a).unwrap();
        assert_eq!(m.dim(), 5);
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<ModuleSpec>(&s).unwrap(), spec);
        let action = m.to_spec();
        let rebuilt = action.build(&a).unwrap();
        assert_eq!(rebuilt.action(), m.action());
        let text = serde_json::to_string(&action).unwrap();
        assert_eq!(serde_json::from_str::<ModuleSpec>(&text).unwrap(), action);
    }

    #[test]
    fn generated_submodules() {
        let a = t2();
        let r = RightModule::regular(&a);
        // E_12 R = span{E_12}
        assert_eq!(r.cyclic(&[0, 1, 0]).dim(), 1);
        assert_eq!(r.cyclic(&[1, 0, 0]).dim(), 2);
        assert_eq!(r.cyclic(&[1, 0, 1]).dim(), 3);
        assert!(r.submodule(Subspace::span(2, 3, &[vec![1, 0, 0]]).unwrap()).is_err());
    }
}
