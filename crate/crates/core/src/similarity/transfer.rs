use serde::Serialize;

use super::EndContext;
use crate::fqlinalg::Subspace;
use crate::module::{Isomorphism, Submodule};
use crate::{Budget, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
    Undecided,
}

/// Similarity of `N, N'` against similarity of `Hom(M, N), Hom(M, N')` in `E`.
#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub projective: bool,
    pub faithfully_projective: bool,
    pub submodules_similar: Option<bool>,
    pub ideals_similar: bool,
    /// `E`-coordinates of the witness transported from a submodule witness.
    pub transported_witness: Option<Vec<u32>>,
    pub forward: Verdict,
    pub backward: Verdict,
    /// Ideals similar but submodules not, with the backward hypothesis absent.
    pub counterexample: bool,
}

impl EndContext {
    /// Ideal witness from a submodule witness `β` (`N' + β(M) = M`,
    /// `N = (N' : β)`): `E = A' + βE` and `A = (A' : β)`.
    fn transport(&self, n: &Submodule, n2: &Submodule, beta: &[u32]) -> Result<bool> {
        let alg = self.end().algebra();
        let a = self.hom_ideal(n)?;
        let a2 = self.hom_ideal(n2)?;
        let be = Subspace::from_matrix(&alg.left_mul_matrix(beta));
        let spans = a2.space().sum(&be)?.is_full();
        Ok(spans && alg.colon_right(&a2, beta)? == a)
    }

    pub fn similarity_transfer(
        &self,
        n: &Submodule,
        n2: &Submodule,
        budget: &Budget,
    ) -> Result<TransferReport> {
        let module = self.module();
        let projective = module.is_projective()?.projective;
        let faithfully_projective = projective && module.is_generator()?;
        self.similarity_transfer_with(n, n2, projective, faithfully_projective, budget)
    }

    /// As [`EndContext::similarity_transfer`], with the projectivity flags of
    /// `M` supplied by the caller.
    pub fn similarity_transfer_with(
        &self,
        n: &Submodule,
        n2: &Submodule,
        projective: bool,
        faithfully_projective: bool,
        budget: &Budget,
    ) -> Result<TransferReport> {
        let iso = self.are_similar(n, n2, budget)?;
        let submodules_similar = iso.decided();
        let a = self.hom_ideal(n)?;
        let a2 = self.hom_ideal(n2)?;
        let ideals_similar = self
            .end()
            .algebra()
            .similar_ideals(&a2, &a, budget.enumeration)?
            .is_some();

        let mut transported_witness = None;
        let forward = if !projective {
            Verdict::NotApplicable
        } else {
            match &iso {
                Isomorphism::Yes(phi) => {
                    let beta = self.similarity_witness(n, n2, phi)?;
                    let c = self.end().to_coords(&beta).expect("witness is an endomorphism");
                    let ok = self.transport(n, n2, &c)? && ideals_similar;
                    transported_witness = Some(c);
                    if ok {
                        Verdict::Holds
                    } else {
                        Verdict::Fails
                    }
                }
                Isomorphism::No => Verdict::Holds,
                Isomorphism::Unknown => Verdict::Undecided,
            }
        };
        let implication = match submodules_similar {
            _ if !ideals_similar => Some(true),
            Some(s) => Some(s),
            None => None,
        };
        let backward = match (faithfully_projective, implication) {
            (false, _) => Verdict::NotApplicable,
            (true, Some(true)) => Verdict::Holds,
            (true, Some(false)) => Verdict::Fails,
            (true, None) => Verdict::Undecided,
        };
        Ok(TransferReport {
            projective,
            faithfully_projective,
            submodules_similar,
            ideals_similar,
            transported_witness,
            forward,
            backward,
            counterexample: !faithfully_projective && implication == Some(false),
        })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Algebra;
    use crate::module::RightModule;

    #[test]
    fn corner_of_triangular_is_the_counterexample() {
        let a = Arc::new(Algebra::triangular_algebra(2, 2).unwrap());
        let m = RightModule::idempotent(&a, &[1, 0, 0]).unwrap();
        let ctx = EndContext::new(m).unwrap();
        let module = ctx.module();
        let b = Budget::default();
        let maxes = module.maximal_submodules(&b).unwrap();
        assert_eq!(maxes.len(), 1);
        let r = ctx
            .similarity_transfer(&maxes[0], &module.zero_submodule(), &b)
            .unwrap();
        assert!(r.projective && !r.faithfully_projective);
        assert_eq!(r.submodules_similar, Some(false));
        assert!(r.ideals_similar);
        assert_eq!(r.forward, Verdict::Holds);
        assert_eq!(r.backward, Verdict::NotApplicable);
        assert!(r.counterexample);
    }

    #[test]
    fn matrix_ring_transfers_both_ways() {
        let a = Arc::new(Algebra::matrix_algebra(2, 2).unwrap());
        let ctx = EndContext::new(RightModule::regular(&a)).unwrap();
        let b = Budget::default();
        let maxes = ctx.module().maximal_submodules(&b).unwrap();
        for n in &maxes {
            for n2 in &maxes {
                let r = ctx.similarity_transfer(n, n2, &b).unwrap();
                assert_eq!(r.forward, Verdict::Holds);
                assert_eq!(r.backward, Verdict::Holds);
                assert!(r.transported_witness.is_some());
            }
        }
    }
}
